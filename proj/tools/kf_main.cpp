// kf: exact-arithmetic CLI for the supersingular pencil computations.
//
// Subcommands: field, curve, lattice, position, artin, pencil,
// linearize, report. Output is JSON by default, or flat text with
// --text. Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kf/kf.hpp"

namespace {

using Json = nlohmann::ordered_json;
using kf::gf::FieldElement;
using kf::gf::SpecPtr;

void print_text(const Json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            print_text(value, prefix.empty() ? key : prefix + "." + key, os);
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& value : j)
            print_text(value, prefix + "[" + std::to_string(i++) + "]", os);
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(const Json& j, bool text) {
    if (text)
        print_text(j, "", std::cout);
    else
        std::cout << j.dump(2) << "\n";
}

Json artin_json(const kf::kummer::ArtinResult& a) {
    Json j;
    j["position"] = a.position.to_string();
    j["v"] = a.v;
    j["disc_vbprime"] = a.disc_vbprime.str();
    j["disc_vbprime_v2"] = a.disc_vbprime_v2;
    j["disc_pic"] = a.disc_pic;
    j["sigma0"] = a.sigma0;
    return j;
}

kf::lattice::Matrix parse_gram(const std::string& text) {
    Json j = Json::parse(text);
    if (!j.is_array() || j.empty()) throw kf::error("lattice: --gram must be a JSON array of rows");
    kf::lattice::Matrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw kf::error("lattice: --gram rows must be arrays");
        std::vector<kf::lattice::Int> r;
        for (const auto& v : row) r.emplace_back(v.get<long long>());
        m.push_back(std::move(r));
    }
    return m;
}

Json int_json(const kf::lattice::Int& v) {
    // Exact when it fits; decimal string otherwise.
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return Json(static_cast<long long>(v));
    return Json(v.str());
}

kf::series::SeriesAutomorphism parse_series_file(const SpecPtr& spec, const std::string& path,
                                                 int order) {
    std::ifstream in(path);
    if (!in) throw kf::error("linearize: cannot open series file " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            lines.push_back(line);
    int d = static_cast<int>(lines.size());
    if (d == 0) throw kf::error("linearize: series file has no coordinates");
    std::vector<kf::series::TruncatedSeries> comps;
    for (const std::string& l : lines) {
        kf::series::TruncatedSeries s(spec, d, order);
        std::istringstream is(l);
        std::string term;
        while (is >> term) {
            auto colon = term.find(':');
            if (colon == std::string::npos)
                throw kf::error("linearize: term \"" + term + "\" is not coeff:e1,e2,...");
            FieldElement c = FieldElement::parse(spec, term.substr(0, colon));
            std::vector<int> exps;
            std::istringstream es(term.substr(colon + 1));
            std::string e;
            while (std::getline(es, e, ',')) exps.push_back(std::stoi(e));
            if (static_cast<int>(exps.size()) != d)
                throw kf::error("linearize: exponent arity does not match coordinate count");
            s.add_term(std::move(exps), c);
        }
        comps.push_back(std::move(s));
    }
    return kf::series::SeriesAutomorphism(std::move(comps));
}

std::string series_text(const kf::series::TruncatedSeries& s) { return s.to_string(); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for supersingular pencil invariants"};
    app.require_subcommand(1);
    bool text = false;
    bool json_flag = false;
    app.add_flag("--text", text, "flat key:value output");
    app.add_flag("--json", json_flag, "JSON output (default)");

    // field
    auto* field = app.add_subcommand("field", "arithmetic in GF(p^k)");
    int fp = 2, fk = 1, fn = 1;
    std::string fop, fa, fb;
    field->add_option("--p", fp)->required();
    field->add_option("--k", fk)->required();
    field->add_option("--op", fop, "add|sub|mul|div|pow|inv|frobenius")->required();
    field->add_option("--a", fa)->required();
    field->add_option("--b", fb);
    field->add_option("--n", fn, "exponent for pow");

    // curve
    auto* curve = app.add_subcommand("curve", "the curve y^2 + y = x^3 over GF(2^k)");
    int ck = 2;
    bool ccount = false, cfixed = false;
    curve->add_option("--k", ck)->required();
    curve->add_flag("--count", ccount, "number of rational points");
    curve->add_flag("--fixed-points", cfixed, "fixed points of the order-3 automorphism");

    // lattice
    auto* lat = app.add_subcommand("lattice", "integer Gram matrix computations");
    std::string lgram;
    bool ldet = false, lsnf = false;
    lat->add_option("--gram", lgram, "JSON rows, e.g. [[0,1],[1,0]]")->required();
    lat->add_flag("--det", ldet, "exact determinant");
    lat->add_flag("--snf", lsnf, "Smith normal form diagonal");

    // position
    auto* posc = app.add_subcommand("position", "classify a point (i:j) over GF(2^k)");
    int pk = 4;
    std::string pi, pj;
    bool pclassify = false;
    posc->add_option("--k", pk)->required();
    posc->add_option("--i", pi)->required();
    posc->add_option("--j", pj)->required();
    posc->add_flag("--classify", pclassify);

    // artin
    auto* art = app.add_subcommand("artin", "Artin invariant of the position (i:j)");
    int ak = 4;
    std::string ai, aj;
    art->add_option("--k", ak)->required();
    art->add_option("--i", ai)->required();
    art->add_option("--j", aj)->required();

    // pencil
    auto* pen = app.add_subcommand("pencil", "pencil data (p, n, r, s)");
    int pp = 2, pn = 2, pfk = 0, pmax = -1;
    std::string pr, ps;
    bool pcount = false, phb = false, plie = false, pomega = false;
    pen->add_option("--p", pp)->required();
    pen->add_option("--n", pn)->required();
    pen->add_option("--k", pfk, "coefficient field degree (default 2)");
    pen->add_option("--r", pr)->required();
    pen->add_option("--s", ps)->required();
    pen->add_flag("--count-sigma1", pcount, "count fibers with F4-rational position");
    pen->add_flag("--hb-verify", phb, "verify the resolution identities");
    pen->add_option("--max-degree", pmax, "also check graded exactness up to this total degree");
    pen->add_flag("--lie", plie, "Lie algebra splitting");
    pen->add_flag("--omega", pomega, "dualizing sheaf twist");

    // linearize
    auto* lin = app.add_subcommand("linearize", "diagonalize a finite-order automorphism");
    int lk = 2, lm = 3, lorder = 6;
    std::string lfile;
    lin->add_option("--k", lk)->required();
    lin->add_option("--m", lm)->required();
    lin->add_option("--order", lorder, "truncation order")->required();
    lin->add_option("--f", lfile, "series file, one coordinate per line, terms coeff:e1,e2,...")
        ->required();

    // report
    auto* repc = app.add_subcommand("report", "full JSON report for a pencil");
    int rp = 2, rn = 2, rfk = 0;
    std::string rr, rs;
    repc->add_option("--p", rp)->required();
    repc->add_option("--n", rn)->required();
    repc->add_option("--k", rfk, "coefficient field degree (default 2)");
    repc->add_option("--r", rr)->required();
    repc->add_option("--s", rs)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (field->parsed()) {
            SpecPtr spec = kf::gf::field_make(fp, fk);
            FieldElement a = FieldElement::parse(spec, fa);
            auto need_b = [&]() {
                if (fb.empty()) throw kf::error("field: --b is required for " + fop);
                return FieldElement::parse(spec, fb);
            };
            FieldElement r = a;
            if (fop == "add") r = a + need_b();
            else if (fop == "sub") r = a - need_b();
            else if (fop == "mul") r = a * need_b();
            else if (fop == "div") r = a / need_b();
            else if (fop == "pow") r = a.pow(fn);
            else if (fop == "inv") r = a.inv();
            else if (fop == "frobenius") r = a.frobenius();
            else throw kf::error("field: unknown op " + fop);
            emit(Json{{"result", r.to_string()}}, text);
        } else if (curve->parsed()) {
            SpecPtr spec = kf::gf::field_make(2, ck);
            Json j;
            if (!ccount && !cfixed) throw kf::error("curve: pass --count or --fixed-points");
            if (ccount) j["count"] = kf::ellcurve::count_points(spec);
            if (cfixed) {
                Json pts = Json::array();
                for (const auto& P : kf::ellcurve::fixed_points(spec)) {
                    if (P.is_infinity())
                        pts.push_back("inf");
                    else
                        pts.push_back(Json{{"x", P.x().to_string()}, {"y", P.y().to_string()}});
                }
                j["fixed_points"] = pts;
            }
            emit(j, text);
        } else if (lat->parsed()) {
            kf::lattice::Matrix m = parse_gram(lgram);
            Json j;
            if (!ldet && !lsnf) throw kf::error("lattice: pass --det or --snf");
            if (ldet) j["det"] = int_json(kf::lattice::det(m));
            if (lsnf) {
                auto s = kf::lattice::smith_normal_form(m);
                Json d = Json::array();
                for (const auto& v : s.diag) d.push_back(int_json(v));
                j["snf_diagonal"] = d;
            }
            emit(j, text);
        } else if (posc->parsed()) {
            SpecPtr spec = kf::gf::field_make(2, pk);
            kf::surfgeom::AlphaPosition pos(FieldElement::parse(spec, pi),
                                            FieldElement::parse(spec, pj));
            int v = kf::surfgeom::compute_v(pos);
            auto vb = kf::surfgeom::v_b_lattice(pos);
            Json j;
            j["position"] = pos.to_string();
            j["v"] = v;
            j["vb_disc"] = int_json(kf::lattice::sublattice_disc(vb));
            j["in_P1F4"] = pos.is_f4_rational();
            auto cc = kf::surfgeom::containing_curve(pos);
            j["containing_curve"] = cc ? Json(*cc) : Json(nullptr);
            emit(j, text);
        } else if (art->parsed()) {
            SpecPtr spec = kf::gf::field_make(2, ak);
            kf::surfgeom::AlphaPosition pos(FieldElement::parse(spec, ai),
                                            FieldElement::parse(spec, aj));
            emit(artin_json(kf::kummer::artin_invariant(pos)), text);
        } else if (pen->parsed()) {
            if (pfk == 0) pfk = 2;
            SpecPtr spec = kf::gf::field_make(pp, pfk);
            auto pspec = kf::pencil::PencilSpec::make(pp, pn, kf::poly::BinaryForm::parse(spec, pr),
                                                      kf::poly::BinaryForm::parse(spec, ps));
            Json j;
            bool failed = false;
            if (pomega || (!pcount && !phb && !plie)) {
                auto om = kf::pencil::omega_trivial(pp, pn);
                j["omega"] = {{"trivial", om.trivial}, {"twist", om.twist}};
            }
            if (plie) {
                auto lie = kf::pencil::lie_splitting(pspec);
                j["lie_splitting"] = {lie.first, lie.second};
            }
            if (pcount) j["sigma1_fiber_count"] = kf::pencil::count_sigma1_fibers(pspec);
            if (phb) {
                auto hb = kf::pencil::HBComplex::make(pspec);
                auto rep = kf::pencil::hb_verify(hb);
                Json checks = Json::array();
                for (const auto& c : rep.checks) {
                    Json e{{"name", c.name}, {"ok", c.ok}};
                    if (!c.ok) e["residual"] = c.residual;
                    checks.push_back(e);
                }
                j["hb_verify"] = {{"ok", rep.ok}, {"checks", checks}};
                failed = failed || !rep.ok;
                if (pmax >= 0) {
                    auto ex = kf::pencil::hb_graded_exactness(hb, pmax);
                    Json bad = Json::array();
                    for (const auto& pc : ex.pieces)
                        if (!(pc.exact && pc.injective))
                            bad.push_back(Json{{"dxy", pc.dxy},
                                               {"duv", pc.duv},
                                               {"dim_ker_phi1", pc.dim_f1 - pc.rank_phi1},
                                               {"rank_phi2", pc.rank_phi2}});
                    Json red = Json::array();
                    for (const auto& rd : ex.reduced)
                        red.push_back(Json{{"degree", rd.degree},
                                           {"kernel_dim", rd.kernel_dim},
                                           {"expected", rd.expected_kernel_dim},
                                           {"ok", rd.ok}});
                    j["hb_exactness"] = {{"ok", ex.ok},
                                         {"pieces_checked", ex.pieces.size()},
                                         {"failing_pieces", bad},
                                         {"reduced_degrees", red},
                                         {"cokernel_twists",
                                          {ex.cokernel_twists.first, ex.cokernel_twists.second}}};
                    failed = failed || !ex.ok;
                }
            }
            emit(j, text);
            if (failed) return 2;
        } else if (lin->parsed()) {
            SpecPtr spec = kf::gf::field_make(2, lk);
            auto f = parse_series_file(spec, lfile, lorder);
            auto res = kf::series::linearize(f, lm, kf::gf::zeta(spec), lorder);
            Json j;
            j["weights"] = res.weights;
            Json comps = Json::array();
            for (const auto& c : res.change.components()) comps.push_back(series_text(c));
            j["change"] = comps;
            emit(j, text);
        } else if (repc->parsed()) {
            if (rfk == 0) rfk = 2;
            SpecPtr spec = kf::gf::field_make(rp, rfk);
            auto pspec = kf::pencil::PencilSpec::make(rp, rn, kf::poly::BinaryForm::parse(spec, rr),
                                                      kf::poly::BinaryForm::parse(spec, rs));
            emit(kf::report::full_report(pspec), text);
        }
    } catch (const kf::verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 2;
    } catch (const kf::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
