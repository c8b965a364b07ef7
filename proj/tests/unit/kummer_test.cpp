#include <catch2/catch_amalgamated.hpp>

#include "kf/kummer.hpp"
#include "test_support.hpp"

using namespace kf::kummer;
using kf::gf::FieldElement;
using kf::surfgeom::AlphaPosition;

TEST_CASE("exceptional lattice") {
    CHECK(kf::lattice::gram_det(exceptional_lattice(1)) == 3);

    auto l9 = exceptional_lattice(9);
    CHECK(l9.rank == 18);
    kf::lattice::Int d = kf::lattice::gram_det(l9);
    CHECK(d == 19683);
    CHECK(kf::lattice::two_adic_normalize(d).valuation == 0); // a 2-adic unit
    CHECK(static_cast<int>(l9.rank) + 4 == 22);

    // negative definite: leading principal minors alternate in sign
    for (size_t k = 1; k <= l9.rank; ++k) {
        kf::lattice::Matrix minor(k, std::vector<kf::lattice::Int>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) minor[i][j] = l9.gram[i][j];
        kf::lattice::Int dk = kf::lattice::det(minor);
        CHECK((k % 2 == 0 ? dk > 0 : dk < 0));
    }

    CHECK_THROWS_AS(exceptional_lattice(0), kf::error);
}

TEST_CASE("artin invariants at the standard positions") {
    auto f16 = kf::gf::field_make(2, 4);
    FieldElement one = FieldElement::one(f16);
    FieldElement w = FieldElement::generator(f16);

    ArtinResult a = artin_invariant(AlphaPosition(one, one));
    CHECK(a.sigma0 == 1);
    CHECK(a.disc_pic == -4);
    CHECK(a.v == 3);
    CHECK(a.disc_vbprime == -192);
    CHECK(a.disc_vbprime_v2 == 6);

    ArtinResult b = artin_invariant(AlphaPosition(one, w));
    CHECK(b.sigma0 == 2);
    CHECK(b.disc_pic == -16);
    CHECK(b.v == 4);
    CHECK(b.disc_vbprime == -768);

    // recovering sigma0 from d = -p^(2 sigma0)
    CHECK(kf::lattice::two_adic_normalize(b.disc_pic).valuation / 2 == 2);
}

TEST_CASE("artin pipeline over larger fields") {
    for (int k : {4, 6}) {
        auto spec = kf::gf::field_make(2, k);
        auto elems = kf::gf::enumerate(spec);
        for (const auto& i : elems)
            for (const auto& j : elems) {
                if (i.is_zero() && j.is_zero()) continue;
                ArtinResult r = artin_invariant(AlphaPosition(i, j));
                CHECK(r.sigma0 == r.v - 2);
                CHECK((r.sigma0 == 1 || r.sigma0 == 2));
                CHECK(r.disc_pic < 0);
                CHECK(kf::lattice::two_adic_normalize(r.disc_pic).valuation % 2 == 0);
                CHECK(r.disc_vbprime_v2 == 2 * r.v);
            }
    }
}

TEST_CASE("recorded picard rules") {
    CHECK(kummer_rho_char3() == 22);
    auto c = kummer_rho_char3_components();
    CHECK(c[0] == 16);
    CHECK(c[1] == 6);
    CHECK(c[0] + c[1] == 22);
    auto g = generalized_kummer_rho_components();
    CHECK(g[0] == 4);
    CHECK(g[1] == 18);
    CHECK(g[0] + g[1] == 22);
}
