// Drives the installed CLI binary end to end: every subcommand, both
// output modes, and the exit-code contract. The binary path arrives as
// argv[1].

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

namespace {

using Json = nlohmann::json;

int checks = 0, bad = 0;

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) {
        ++bad;
        std::cerr << "cli check failed: " << what << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: kf_cli_check <path-to-kf>\n";
        return 2;
    }
    std::string kf = argv[1];

    {
        auto r = run(kf + " field --p 2 --k 2 --op mul --a 01 --b 11");
        expect(r.status == 0, "field mul exit code");
        expect(Json::parse(r.out)["result"] == "10", "zeta * (1+zeta) = 1");
    }
    {
        auto r = run(kf + " field --p 2 --k 4 --op frobenius --a 0100");
        expect(Json::parse(r.out)["result"] == "0010", "frobenius squares the generator");
    }
    {
        auto r = run(kf + " field --p 2 --k 2 --op div --a 10 --b 00");
        expect(r.status == 1, "division by zero is a usage error");
    }
    {
        auto r = run(kf + " curve --k 2 --count");
        expect(Json::parse(r.out)["count"] == 9, "|E(F4)| = 9");
    }
    {
        auto r = run(kf + " curve --k 2 --fixed-points");
        Json j = Json::parse(r.out);
        expect(j["fixed_points"].size() == 3, "three fixed points");
        bool has_inf = false;
        for (const auto& p : j["fixed_points"])
            if (p.is_string() && p == "inf") has_inf = true;
        expect(has_inf, "infinity among the fixed points");
    }
    {
        auto r = run(kf + " lattice --gram '[[0,1],[1,0]]' --det");
        expect(Json::parse(r.out)["det"] == -1, "hyperbolic determinant");
    }
    {
        auto r = run(kf + " lattice --gram '[[2,0],[0,3]]' --snf");
        expect(Json::parse(r.out)["snf_diagonal"] == Json::array({1, 6}), "snf of diag(2,3)");
    }
    {
        // 0110 is the canonical image of the F4 generator inside F16
        auto r = run(kf + " position --k 4 --i 1 --j 0110 --classify");
        Json j = Json::parse(r.out);
        expect(j["v"] == 3 && j["in_P1F4"] == true, "F4-rational position");
        expect(j["vb_disc"] == -192, "disc -192");
        expect(j["containing_curve"] == 4, "the direction of the automorphism graph");
    }
    {
        auto r = run(kf + " position --k 4 --i 1 --j 0100 --classify");
        Json j = Json::parse(r.out);
        expect(j["v"] == 4 && j["in_P1F4"] == false, "non-F4 position");
        expect(j["containing_curve"].is_null(), "no containing curve");
    }
    {
        auto r = run(kf + " artin --k 4 --i 1 --j 0100");
        Json j = Json::parse(r.out);
        expect(j["sigma0"] == 2 && j["disc_pic"] == -16, "artin result off P1(F4)");
    }
    {
        auto r = run(kf + " pencil --p 2 --n 2 --r 10,00,00 --s 00,00,10 --count-sigma1");
        expect(Json::parse(r.out)["sigma1_fiber_count"] == 5, "count 5");
    }
    {
        auto r = run(kf + " pencil --p 2 --n 2 --r 10,01,00 --s 00,00,10 --count-sigma1");
        expect(Json::parse(r.out)["sigma1_fiber_count"] == 9, "count 9");
    }
    {
        auto r = run(kf + " pencil --p 2 --n 2 --r 10,00,00 --s 00,10,00 --count-sigma1");
        expect(r.status == 1, "common zero rejected with exit 1");
    }
    {
        auto r = run(kf + " pencil --p 3 --n 1 --k 1 --r 1,0 --s 0,1 --hb-verify");
        expect(r.status == 0, "hb-verify exit 0");
        expect(Json::parse(r.out)["hb_verify"]["ok"] == true, "hb-verify ok");
    }
    {
        auto r = run(kf + " pencil --p 2 --n 2 --r 10,00,00 --s 00,00,10 --hb-verify --max-degree 6");
        expect(r.status == 2, "graded exactness reports the genuine failure via exit 2");
        Json j = Json::parse(r.out);
        expect(j["hb_exactness"]["ok"] == false, "exactness flag");
        expect(!j["hb_exactness"]["failing_pieces"].empty(), "failing pieces listed");
        for (const auto& rd : j["hb_exactness"]["reduced_degrees"])
            expect(rd["ok"] == true, "reduced degrees all pass");
    }
    {
        std::string path = "/tmp/kf_cli_series.txt";
        std::ofstream f(path);
        f << "11:1,0 10:0,3\n01:0,1\n"; // (zeta^2 u + v^3, zeta v)
        f.close();
        auto r = run(kf + " linearize --k 2 --m 3 --order 6 --f " + path);
        Json j = Json::parse(r.out);
        expect(j["weights"] == Json::array({2, 1}), "linearize weights");
    }
    {
        auto r = run(kf + " report --p 2 --n 2 --r 10,00,00 --s 00,00,10");
        Json j = Json::parse(r.out);
        expect(j["sigma1_fiber_count"] == 5, "report fiber count");
        expect(j["cited_claims"].size() == 4, "report cited claims");
        auto r2 = run(kf + " report --p 2 --n 2 --r 10,00,00 --s 00,00,10");
        expect(r.out == r2.out, "report is byte-for-byte deterministic");
    }
    {
        auto r = run(kf + " --text report --p 3 --n 1 --k 1 --r 1,0 --s 0,1");
        expect(r.status == 0, "text mode exit");
        expect(r.out.find("char3_fiber_picard.total: 22") != std::string::npos,
               "text mode flattening");
    }
    {
        auto r = run(kf + " report --p 2 --n 1 --r 10,00 --s 00,10");
        expect(r.status == 1, "nontrivial omega rejected");
    }
    {
        auto r = run(kf + " position --k 3 --i 1 --j 1 --classify");
        expect(r.status == 1, "odd-degree field rejected for positions");
    }
    {
        auto r = run(kf + " field --p 5 --k 1 --op add --a 1 --b 1");
        expect(r.status == 1, "unsupported characteristic rejected");
    }
    {
        auto r = run(kf + " field --p 2 --k 2 --op add --a 1");
        expect(r.status == 1, "missing --b rejected");
    }
    {
        auto r = run(kf + " nonsense");
        expect(r.status != 0, "unknown subcommand rejected");
    }

    std::cout << checks << " cli checks, " << bad << " failures\n";
    return bad == 0 ? 0 : 1;
}
