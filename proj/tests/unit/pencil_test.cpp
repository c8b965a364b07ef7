#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "kf/kummer.hpp"
#include "kf/pencil.hpp"
#include "test_support.hpp"

using namespace kf::pencil;
using kf::gf::FieldElement;
using kf::gf::SpecPtr;
using kf::poly::BinaryForm;

namespace {

PencilSpec standard_pair(const SpecPtr& f4) {
    return PencilSpec::make(2, 2, BinaryForm::parse(f4, "10,00,00"),
                            BinaryForm::parse(f4, "00,00,10"));
}

PencilSpec perturbed_pair(const SpecPtr& spec, const FieldElement& a) {
    FieldElement one = FieldElement::one(spec), zero = FieldElement::zero(spec);
    return PencilSpec::make(2, 2, BinaryForm(spec, 2, {one, a, zero}),
                            BinaryForm(spec, 2, {zero, zero, one}));
}

// Independent fiber count: enumerate the projective line over GF(2^8),
// which contains every root of a quadratic form with coefficients in
// GF(2^4), and classify each fiber position directly.
int brute_count_sigma1(const PencilSpec& spec) {
    auto big = kf::gf::field_make(2, 8);
    int count = 0;
    std::vector<std::pair<FieldElement, FieldElement>> points;
    points.emplace_back(FieldElement::one(big), FieldElement::zero(big));
    for (const auto& x : kf::gf::enumerate(big))
        points.emplace_back(x, FieldElement::one(big));
    for (const auto& [t0, t1] : points) {
        if (!spec.r.eval(t0, t1).is_zero() || !spec.s.eval(t0, t1).is_zero()) {
            auto pos = fiber_position(spec, t0, t1);
            if (pos.is_f4_rational()) ++count;
        }
    }
    return count;
}

} // namespace

TEST_CASE("pencil validity") {
    auto f4 = kf::gf::field_make(2, 2);
    CHECK_NOTHROW(standard_pair(f4));
    CHECK_THROWS_AS(PencilSpec::make(2, 2, BinaryForm::parse(f4, "10,00,00"),
                                     BinaryForm::parse(f4, "00,10,00")),
                    kf::error); // t0^2 and t0 t1 share (0:1)
    CHECK_THROWS_AS(PencilSpec::make(2, 1, BinaryForm::parse(f4, "10,00,00"),
                                     BinaryForm::parse(f4, "00,00,10")),
                    kf::error); // degree mismatch
}

TEST_CASE("dualizing twist") {
    CHECK(omega_trivial(3, 1).trivial);
    CHECK(omega_trivial(3, 1).twist == 0);
    CHECK(omega_trivial(2, 2).trivial);
    CHECK_FALSE(omega_trivial(2, 1).trivial);
    CHECK(omega_trivial(2, 1).twist == -1);
    for (int p : {2, 3})
        for (int n = 1; n <= 6; ++n)
            CHECK(omega_trivial(p, n).trivial == (n * (p - 1) == 2));
    CHECK_THROWS_AS(omega_trivial(5, 1), kf::error);
}

TEST_CASE("lie splitting") {
    auto f4 = kf::gf::field_make(2, 2);
    auto s22 = standard_pair(f4);
    CHECK(lie_splitting(s22) == std::pair<int, int>{-4, 2});

    auto f3 = kf::gf::field_make(3, 1);
    auto s31 = PencilSpec::make(3, 1, BinaryForm::parse(f3, "1,0"), BinaryForm::parse(f3, "0,1"));
    CHECK(lie_splitting(s31) == std::pair<int, int>{-3, 1});

    // -(sum of the twists) - 2 is the dualizing twist
    for (auto* s : {&s22, &s31}) {
        auto [a, b] = lie_splitting(*s);
        CHECK(-(a + b) - 2 == omega_trivial(s->p, s->n).twist);
    }
}

TEST_CASE("fiber positions") {
    auto f4 = kf::gf::field_make(2, 2);
    auto f16 = kf::gf::field_make(2, 4);
    auto spec = standard_pair(f4);
    FieldElement one4 = FieldElement::one(f4);

    CHECK(fiber_position(spec, one4, one4) == kf::surfgeom::AlphaPosition(one4, one4));
    CHECK(fiber_position(spec, one4, FieldElement::zero(f4)) ==
          kf::surfgeom::AlphaPosition(one4, FieldElement::zero(f4)));

    FieldElement w = FieldElement::generator(f16);
    auto pos = fiber_position(spec, FieldElement::one(f16), w);
    CHECK(pos == kf::surfgeom::AlphaPosition(FieldElement::one(f16), w * w));
    CHECK_FALSE(pos.is_f4_rational()); // w^2 is not in F4 when w is not

    CHECK_THROWS_AS(fiber_position(spec, FieldElement::zero(f4), FieldElement::zero(f4)),
                    kf::error);
}

TEST_CASE("sigma1 fiber counts") {
    auto f4 = kf::gf::field_make(2, 2);
    auto spec = standard_pair(f4);
    CHECK(count_sigma1_fibers(spec) == 5);
    CHECK(brute_count_sigma1(spec) == 5);

    for (const auto& a : kf::gf::enumerate(f4)) {
        if (a.is_zero()) continue;
        auto pert = perturbed_pair(f4, a);
        CHECK(count_sigma1_fibers(pert) == 9);
        CHECK(brute_count_sigma1(pert) == 9);
    }

    // same family with coefficients in F16
    auto f16 = kf::gf::field_make(2, 4);
    for (int t = 0; t < 3; ++t) {
        auto pert = perturbed_pair(f16, kft::random_nonzero(f16));
        CHECK(count_sigma1_fibers(pert) == 9);
        CHECK(brute_count_sigma1(pert) == 9);
    }
}

TEST_CASE("count is invariant under F4 coordinate changes") {
    auto f4 = kf::gf::field_make(2, 2);
    auto elems = kf::gf::enumerate(f4);
    auto spec = standard_pair(f4);
    auto pert = perturbed_pair(f4, kf::gf::zeta(f4));
    for (int t = 0; t < 10; ++t) {
        FieldElement a = elems[static_cast<size_t>(kft::rand_int(0, 3))];
        FieldElement b = elems[static_cast<size_t>(kft::rand_int(0, 3))];
        FieldElement c = elems[static_cast<size_t>(kft::rand_int(0, 3))];
        FieldElement d = elems[static_cast<size_t>(kft::rand_int(0, 3))];
        if ((a * d - b * c).is_zero()) continue; // not invertible
        for (const auto* s : {&spec, &pert}) {
            auto sub = PencilSpec::make(2, 2, s->r.substitute_linear(a, b, c, d),
                                        s->s.substitute_linear(a, b, c, d));
            CHECK(count_sigma1_fibers(sub) == count_sigma1_fibers(*s));
        }
    }
}

TEST_CASE("counts of random degree-2 pencils stay in range") {
    auto f4 = kf::gf::field_make(2, 2);
    for (int t = 0; t < 50; ++t) {
        auto [r, s] = kft::random_valid_pair(f4, 2);
        int count = count_sigma1_fibers(PencilSpec::make(2, 2, r, s));
        CHECK(count >= 5);
        CHECK(count <= 10);
    }
}

TEST_CASE("fiber positions link to artin invariants") {
    auto f4 = kf::gf::field_make(2, 2);
    auto f16 = kf::gf::field_make(2, 4);
    auto spec = standard_pair(f4);
    std::vector<std::pair<FieldElement, FieldElement>> points;
    points.emplace_back(FieldElement::one(f16), FieldElement::zero(f16));
    for (const auto& x : kf::gf::enumerate(f16))
        points.emplace_back(x, FieldElement::one(f16));
    for (const auto& [t0, t1] : points) {
        auto pos = fiber_position(spec, t0, t1);
        auto a = kf::kummer::artin_invariant(pos);
        CHECK((a.sigma0 == 1 || a.sigma0 == 2));
        CHECK((a.sigma0 == 1) == pos.is_f4_rational());
    }
}

TEST_CASE("nonrigidity witness") {
    auto f4 = kf::gf::field_make(2, 2);
    auto spec = standard_pair(f4);
    auto pert = perturbed_pair(f4, FieldElement::one(f4));

    WitnessReport w = nonrigidity_witness(spec, pert);
    CHECK(w.count_a == 5);
    CHECK(w.count_b == 9);
    CHECK(w.counts_differ);

    WitnessReport same = nonrigidity_witness(spec, spec);
    CHECK_FALSE(same.counts_differ);

    WitnessReport both = nonrigidity_witness(perturbed_pair(f4, kf::gf::zeta(f4)),
                                             perturbed_pair(f4, FieldElement::one(f4)));
    CHECK(both.count_a == 9);
    CHECK(both.count_b == 9);
    CHECK_FALSE(both.counts_differ); // the witness is inconclusive here

    auto f3 = kf::gf::field_make(3, 1);
    auto s31 = PencilSpec::make(3, 1, BinaryForm::parse(f3, "1,0"), BinaryForm::parse(f3, "0,1"));
    CHECK_THROWS_AS(nonrigidity_witness(s31, s31), kf::error);
}

TEST_CASE("resolution identities") {
    auto f4 = kf::gf::field_make(2, 2);
    auto f9 = kf::gf::field_make(3, 2);
    auto f3 = kf::gf::field_make(3, 1);

    auto rep22 = hb_verify(HBComplex::make(standard_pair(f4)));
    CHECK(rep22.ok);
    CHECK(rep22.checks.size() == 6);

    auto s31 = PencilSpec::make(3, 1, BinaryForm::parse(f3, "1,0"), BinaryForm::parse(f3, "0,1"));
    CHECK(hb_verify(HBComplex::make(s31)).ok);

    for (int t = 0; t < 10; ++t) {
        auto [r2, s2] = kft::random_valid_pair(f4, 2);
        CHECK(hb_verify(HBComplex::make(PencilSpec::make(2, 2, r2, s2))).ok);
        auto [r3, s3] = kft::random_valid_pair(f9, 1);
        CHECK(hb_verify(HBComplex::make(PencilSpec::make(3, 1, r3, s3))).ok);
    }
}

TEST_CASE("tampered matrices fail verification") {
    auto f9 = kf::gf::field_make(3, 2);
    auto [r, s] = kft::random_valid_pair(f9, 1);
    auto spec = PencilSpec::make(3, 1, r, s);
    HBComplex good = HBComplex::make(spec);

    auto phi2 = good.phi2();
    phi2[1][1] = -phi2[1][1]; // flip the sign of -s^p
    HBComplex bad = HBComplex::with_matrices(spec, good.phi1(), phi2);
    auto rep = hb_verify(bad);
    CHECK_FALSE(rep.ok);
    bool some_residual = false;
    for (const auto& c : rep.checks)
        if (!c.ok && !c.residual.empty()) some_residual = true;
    CHECK(some_residual);
}

TEST_CASE("graded pieces of the resolution") {
    auto f4 = kf::gf::field_make(2, 2);
    auto f3 = kf::gf::field_make(3, 1);
    auto s22 = standard_pair(f4);
    auto s31 = PencilSpec::make(3, 1, BinaryForm::parse(f3, "1,0"), BinaryForm::parse(f3, "0,1"));

    for (const auto* s : {&s22, &s31}) {
        const int p = s->p, n = s->n;
        auto ex = hb_graded_exactness(HBComplex::make(*s), 8);

        // the reduced complex behaves exactly as predicted in every degree
        for (const auto& rd : ex.reduced) {
            CHECK(rd.ok);
            CHECK(rd.kernel_dim == rd.expected_kernel_dim);
            CHECK(rd.generators_in_kernel);
            CHECK(rd.surjective);
        }
        CHECK(ex.cokernel_twists == std::pair<int, int>{n * p, -n});
        auto lie = lie_splitting(*s);
        CHECK(ex.cokernel_twists.first == -lie.first);
        CHECK(ex.cokernel_twists.second == -lie.second);

        // phi2 is injective in every piece, and the complex is exact in
        // every piece of fiber degree at most p ...
        for (const auto& pc : ex.pieces) {
            CHECK(pc.injective);
            if (pc.dxy <= p) CHECK(pc.exact);
        }
        // ... but middle exactness genuinely fails above that: the
        // Koszul syzygy between y^p and x^p in bidegree (2p, 0) is not
        // an R-combination of the two columns, because r^p divides no
        // term of x^p. The checker must detect this.
        bool found_2p0 = false;
        for (const auto& pc : ex.pieces)
            if (pc.dxy == 2 * p && pc.duv == 0) {
                found_2p0 = true;
                CHECK_FALSE(pc.exact);
                CHECK(pc.dim_f1 - pc.rank_phi1 == pc.rank_phi2 + 1);
            }
        CHECK(found_2p0);
        CHECK_FALSE(ex.ok);
    }
}

TEST_CASE("exactness checker rejects out-of-range degrees") {
    auto f4 = kf::gf::field_make(2, 2);
    auto hb = HBComplex::make(standard_pair(f4));
    CHECK_THROWS_AS(hb_graded_exactness(hb, 13), kf::error);
}
