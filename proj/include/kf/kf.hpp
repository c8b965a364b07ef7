#pragma once

// Umbrella header.

#include "kf/ellcurve.hpp"
#include "kf/errors.hpp"
#include "kf/gf.hpp"
#include "kf/kummer.hpp"
#include "kf/lattice.hpp"
#include "kf/pencil.hpp"
#include "kf/poly.hpp"
#include "kf/report.hpp"
#include "kf/series.hpp"
#include "kf/surfgeom.hpp"
