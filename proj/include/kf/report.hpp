#pragma once

// The checked invariant table of the threefold and the full JSON
// report: pencil validity, dualizing twist, Lie splitting, fiber
// classification, sample Artin invariants, and the recorded
// discrepancies against cited values. Claims that are consumed from
// the literature rather than recomputed here are labeled as such.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kf/errors.hpp"
#include "kf/gf.hpp"
#include "kf/kummer.hpp"
#include "kf/lattice.hpp"
#include "kf/pencil.hpp"
#include "kf/surfgeom.hpp"

namespace kf::report {

using Json = nlohmann::ordered_json;

/// Numerical invariants of the threefold, re-verified on construction:
/// Betti symmetry b_i = b_{6-i}, Euler sum, and the Hodge dualities
/// h0 = h3, h1 = h2.
struct InvariantTable {
    int p = 0;
    std::array<int, 4> hodge{};  // h^0..h^3 of the structure sheaf
    std::array<int, 7> betti{};  // b_0..b_6
    int euler = 0;
    int rho = 0;
    bool pi1_trivial = false;
    int brauer_exponent_divides = 0;
    std::string formal_group;

    static InvariantTable make(int p, std::array<int, 4> hodge, std::array<int, 7> betti,
                               int euler, int rho, bool pi1_trivial, int brauer_exponent_divides,
                               std::string formal_group) {
        InvariantTable t{p,    hodge, betti, euler, rho, pi1_trivial, brauer_exponent_divides,
                         std::move(formal_group)};
        for (int i = 0; i <= 6; ++i)
            if (t.betti[static_cast<size_t>(i)] != t.betti[static_cast<size_t>(6 - i)])
                throw verification_error("InvariantTable: Betti numbers violate b_i = b_{6-i}");
        int alt = 0;
        for (int i = 0; i <= 6; ++i)
            alt += (i % 2 == 0 ? 1 : -1) * t.betti[static_cast<size_t>(i)];
        if (alt != t.euler)
            throw verification_error("InvariantTable: Euler number is not the alternating sum");
        if (t.hodge[0] != t.hodge[3] || t.hodge[1] != t.hodge[2])
            throw verification_error("InvariantTable: Hodge numbers violate duality");
        return t;
    }

    Json to_json() const {
        Json j;
        j["p"] = p;
        j["h"] = hodge;
        j["b"] = betti;
        j["e"] = euler;
        j["rho"] = rho;
        j["pi1_trivial"] = pi1_trivial;
        j["brauer_exponent_divides"] = brauer_exponent_divides;
        j["formal_group"] = formal_group;
        return j;
    }
};

/// The invariant table of the threefold in characteristic p: Hodge
/// numbers (1,0,0,1), Betti numbers (1,0,23,0,23,0,1), Euler number
/// 48, Picard rank 23 = 1 + 22, trivial fundamental group, Brauer
/// group annihilated by p, additive formal group.
inline InvariantTable cy3_table(int p) {
    if (p != 2 && p != 3) throw error("cy3_table: p must be 2 or 3");
    return InvariantTable::make(p, {1, 0, 0, 1}, {1, 0, 23, 0, 23, 0, 1}, 48, 23, true, p,
                                "additive formal group Ga^");
}

/// The two internal discrepancies between computed values and the
/// cited ones, recorded verbatim in every report.
inline Json discrepancy_notes() {
    Json arr = Json::array();
    {
        Json d;
        d["topic"] = "exceptional lattice discriminant";
        d["computed"] = 19683; // 3^9 for nine A2 blocks
        d["cited"] = 27;
        d["note"] = "both values are odd, hence 2-adic units; the Artin invariant, which only "
                    "depends on the 2-adic valuation, is unaffected";
        arr.push_back(d);
    }
    {
        Json d;
        d["topic"] = "class of the graph of the squared automorphism";
        const auto n = surfgeom::c5_class().to_c().coeffs();
        const auto m = surfgeom::c5_class().to_primed().coeffs();
        d["derived_c_basis"] = n;
        d["derived_primed_basis"] = m;
        d["cited_primed_basis"] = std::array<std::int64_t, 4>{1, 1, -3, -3};
        d["note"] = "the cited class pairs with C3 as 5, the graph pairs as 3; the Gram-system "
                    "solution is used, and both classes agree modulo 2*V_A";
        arr.push_back(d);
    }
    return arr;
}

/// Statements consumed from the literature; no desk-scale computation
/// here establishes them, and the report says so explicitly.
inline Json cited_claims() {
    static const std::array<const char*, 4> claims{
        "the threefold admits no formal lifting to characteristic zero",
        "the total space of the pencil exists as a smooth proper threefold",
        "the geometric generic fiber has Picard number 22",
        "the crystalline slope argument identifying the formal group",
    };
    Json arr = Json::array();
    for (const char* c : claims) {
        Json e;
        e["claim"] = c;
        e["status"] = "cited, not computed";
        arr.push_back(e);
    }
    return arr;
}

/// The full JSON document for a pencil with trivial dualizing sheaf.
inline Json full_report(const pencil::PencilSpec& spec) {
    pencil::OmegaResult om = pencil::omega_trivial(spec.p, spec.n);
    if (!om.trivial)
        throw error("full_report: the dualizing sheaf twist " + std::to_string(om.twist) +
                    " is nonzero for (p,n) = (" + std::to_string(spec.p) + "," +
                    std::to_string(spec.n) + ")");

    Json j;
    j["pencil"] = {{"p", spec.p},
                   {"n", spec.n},
                   {"r", spec.r.to_string()},
                   {"s", spec.s.to_string()},
                   {"field_degree", spec.r.spec()->k()},
                   {"valid", true}};
    j["omega"] = {{"trivial", om.trivial}, {"twist", om.twist}};
    auto lie = pencil::lie_splitting(spec);
    j["lie_splitting"] = {lie.first, lie.second};

    if (spec.p == 2) {
        j["sigma1_fiber_count"] = pencil::count_sigma1_fibers(spec);
        Json mult = Json::array();
        for (const auto& [b0, b1] : pencil::p1_f4_points(spec.r.spec())) {
            poly::BinaryForm h = spec.r.scale(b1) - spec.s.scale(b0);
            Json e;
            e["point"] = "(" + b0.to_string() + ":" + b1.to_string() + ")";
            e["distinct_roots"] = poly::distinct_projective_roots(h);
            mult.push_back(e);
        }
        j["f4_point_root_multiplicities"] = mult;

        Json samples = Json::array();
        gf::SpecPtr f16 = gf::field_make(2, 4);
        std::vector<surfgeom::AlphaPosition> sample_positions;
        for (int c = 1; c <= 5; ++c)
            sample_positions.push_back(surfgeom::curve_direction(f16, c));
        sample_positions.emplace_back(gf::FieldElement::one(f16),
                                      gf::FieldElement::generator(f16));
        for (const auto& pos : sample_positions) {
            kummer::ArtinResult a = kummer::artin_invariant(pos);
            Json e;
            e["position"] = pos.to_string();
            e["v"] = a.v;
            e["disc_vbprime"] = a.disc_vbprime.str();
            e["disc_pic"] = a.disc_pic;
            e["sigma0"] = a.sigma0;
            samples.push_back(e);
        }
        j["sample_artin_results"] = samples;
    } else {
        j["sigma1_fiber_count"] = nullptr;
        j["char3_fiber_picard"] = {{"exceptional", kummer::kummer_rho_char3_components()[0]},
                                   {"abelian_surface", kummer::kummer_rho_char3_components()[1]},
                                   {"total", kummer::kummer_rho_char3()}};
    }

    j["cy3_invariants"] = cy3_table(spec.p).to_json();
    j["discrepancies"] = discrepancy_notes();
    j["cited_claims"] = cited_claims();
    return j;
}

} // namespace kf::report
