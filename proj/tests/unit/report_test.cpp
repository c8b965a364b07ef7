#include <catch2/catch_amalgamated.hpp>

#include "kf/report.hpp"
#include "test_support.hpp"

using namespace kf::report;

TEST_CASE("invariant tables") {
    for (int p : {2, 3}) {
        InvariantTable t = cy3_table(p);
        CHECK(t.betti == std::array<int, 7>{1, 0, 23, 0, 23, 0, 1});
        CHECK(t.euler == 48);
        CHECK(t.rho == 23);
        CHECK(t.hodge == std::array<int, 4>{1, 0, 0, 1});
        CHECK(t.pi1_trivial);
        CHECK(t.brauer_exponent_divides == p);
        int alt = 0;
        for (int i = 0; i <= 6; ++i) alt += (i % 2 ? -1 : 1) * t.betti[static_cast<size_t>(i)];
        CHECK(alt == 48);
        CHECK(t.rho == 1 + 22);
    }
    CHECK_THROWS_AS(cy3_table(5), kf::error);
}

TEST_CASE("mutated tables are rejected") {
    auto ok = [] {
        return InvariantTable::make(2, {1, 0, 0, 1}, {1, 0, 23, 0, 23, 0, 1}, 48, 23, true, 2,
                                    "additive formal group Ga^");
    };
    CHECK_NOTHROW(ok());
    // break b_i = b_{6-i}
    CHECK_THROWS_AS(InvariantTable::make(2, {1, 0, 0, 1}, {1, 0, 23, 0, 22, 0, 1}, 47, 23, true, 2,
                                         "additive formal group Ga^"),
                    kf::verification_error);
    // break the Euler sum
    CHECK_THROWS_AS(InvariantTable::make(2, {1, 0, 0, 1}, {1, 0, 23, 0, 23, 0, 1}, 46, 23, true, 2,
                                         "additive formal group Ga^"),
                    kf::verification_error);
    // break Hodge duality
    CHECK_THROWS_AS(InvariantTable::make(2, {1, 1, 0, 1}, {1, 0, 23, 0, 23, 0, 1}, 48, 23, true, 2,
                                         "additive formal group Ga^"),
                    kf::verification_error);
}

TEST_CASE("full report for the characteristic-2 pencil") {
    auto f4 = kf::gf::field_make(2, 2);
    auto spec = kf::pencil::PencilSpec::make(2, 2, kf::poly::BinaryForm::parse(f4, "10,00,00"),
                                             kf::poly::BinaryForm::parse(f4, "00,00,10"));
    Json j = full_report(spec);
    CHECK(j["sigma1_fiber_count"] == 5);
    CHECK(j["omega"]["trivial"] == true);
    CHECK(j["lie_splitting"] == Json::array({-4, 2}));
    CHECK(j["cy3_invariants"]["b"][2] == 23);
    CHECK(j["f4_point_root_multiplicities"].size() == 5);
    CHECK(j["sample_artin_results"].size() == 6);

    // byte-for-byte deterministic
    CHECK(j.dump() == full_report(spec).dump());

    // recorded discrepancies
    bool saw_27 = false, saw_c5 = false;
    for (const auto& d : j["discrepancies"]) {
        if (d.value("cited", 0) == 27 && d.value("computed", 0) == 19683) saw_27 = true;
        if (d.contains("derived_c_basis")) {
            saw_c5 = true;
            CHECK(d["derived_c_basis"] == Json::array({3, 3, -1, -1}));
        }
    }
    CHECK(saw_27);
    CHECK(saw_c5);

    // claims consumed from the literature are labeled, never computed
    CHECK(j["cited_claims"].size() == 4);
    for (const auto& c : j["cited_claims"]) CHECK(c["status"] == "cited, not computed");
}

TEST_CASE("full report for the characteristic-3 pencil") {
    auto f3 = kf::gf::field_make(3, 1);
    auto spec = kf::pencil::PencilSpec::make(3, 1, kf::poly::BinaryForm::parse(f3, "1,0"),
                                             kf::poly::BinaryForm::parse(f3, "0,1"));
    Json j = full_report(spec);
    CHECK(j["omega"]["trivial"] == true);
    CHECK(j["lie_splitting"] == Json::array({-3, 1}));
    CHECK(j["sigma1_fiber_count"].is_null());
    CHECK(j["char3_fiber_picard"]["exceptional"] == 16);
    CHECK(j["char3_fiber_picard"]["abelian_surface"] == 6);
    CHECK(j["char3_fiber_picard"]["total"] == 22);
}

TEST_CASE("report rejects pencils with nontrivial dualizing sheaf") {
    auto f4 = kf::gf::field_make(2, 2);
    auto spec = kf::pencil::PencilSpec::make(2, 1, kf::poly::BinaryForm::parse(f4, "10,00"),
                                             kf::poly::BinaryForm::parse(f4, "00,10"));
    CHECK_THROWS_AS(full_report(spec), kf::error);
}
