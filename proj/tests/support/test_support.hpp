#pragma once

// Shared helpers for the randomized tests. The generator seed comes
// from KF_SEED when set, so failures can be replayed.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "kf/gf.hpp"
#include "kf/lattice.hpp"
#include "kf/poly.hpp"

namespace kft {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen = [] {
        std::uint64_t seed = 0x5eedF00dULL;
        if (const char* env = std::getenv("KF_SEED")) seed = std::strtoull(env, nullptr, 10);
        return std::mt19937_64(seed);
    }();
    return gen;
}

inline int rand_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng());
}

inline kf::gf::FieldElement random_element(const kf::gf::SpecPtr& spec) {
    kf::gf::Coeffs c;
    for (int i = 0; i < spec->k(); ++i)
        c.push_back(static_cast<std::uint8_t>(rand_int(0, spec->p() - 1)));
    return kf::gf::FieldElement(spec, std::move(c));
}

inline kf::gf::FieldElement random_nonzero(const kf::gf::SpecPtr& spec) {
    for (;;) {
        kf::gf::FieldElement e = random_element(spec);
        if (!e.is_zero()) return e;
    }
}

inline kf::poly::BinaryForm random_form(const kf::gf::SpecPtr& spec, int degree) {
    for (;;) {
        std::vector<kf::gf::FieldElement> c;
        for (int i = 0; i <= degree; ++i) c.push_back(random_element(spec));
        kf::poly::BinaryForm f(spec, degree, std::move(c));
        if (!f.is_zero()) return f;
    }
}

/// A random (r, s) pair of degree-n forms without common zeros.
inline std::pair<kf::poly::BinaryForm, kf::poly::BinaryForm>
random_valid_pair(const kf::gf::SpecPtr& spec, int degree) {
    for (;;) {
        kf::poly::BinaryForm r = random_form(spec, degree);
        kf::poly::BinaryForm s = random_form(spec, degree);
        if (kf::poly::common_zero_free(r, s)) return {r, s};
    }
}

/// A random unimodular matrix: a product of elementary row operations
/// applied to the identity.
inline kf::lattice::Matrix random_unimodular(size_t n, int ops = 12) {
    kf::lattice::Matrix m = kf::lattice::identity(n);
    for (int t = 0; t < ops; ++t) {
        size_t i = static_cast<size_t>(rand_int(0, static_cast<int>(n) - 1));
        size_t j = static_cast<size_t>(rand_int(0, static_cast<int>(n) - 1));
        if (i == j) continue;
        int c = rand_int(-2, 2);
        for (size_t col = 0; col < n; ++col) m[i][col] += c * m[j][col];
    }
    return m;
}

} // namespace kft
