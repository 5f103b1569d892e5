#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string cli() {
    if (const char* p = std::getenv("MACROLOC_CLI")) return p;
#ifdef MACROLOC_CLI
    return MACROLOC_CLI;
#else
    FAIL("MACROLOC_CLI is not set");
    return {};
#endif
}

Run run(const std::string& args) {
    const std::string cmd = "\"" + cli() + "\" " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = "macroloc_test_" + name;
    std::ofstream(path) << content;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("observables output") {
    const Run r = run("observables --lambda 91.33 --N 1e23");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["product_hbar"].get<double>() - 0.5773502691896258) <= 1e-12);
    CHECK(j["chi_sigma2"].get<double>() == doctest::Approx(4 / (91.33 * 91.33 * 1e23)).epsilon(1e-14));
    CHECK(run("observables --lambda -1 --N 10").code == 1);
}

TEST_CASE("selfgrav output") {
    const Run b = run("selfgrav --kind boson");
    REQUIRE(b.code == 0);
    const json jb = json::parse(b.out);
    double prev = INFINITY;
    REQUIRE(jb["rows"].size() == 5);
    for (const auto& row : jb["rows"]) {
        CHECK(row["chi"].get<double>() < prev);
        prev = row["chi"].get<double>();
    }
    const Run f = run("selfgrav --kind fermion --N-list 10,100,1000");
    REQUIRE(f.code == 0);
    const json jf = json::parse(f.out);
    CHECK(jf["rows"].size() == 3);
    CHECK(jf["chi_loglog_slope"].get<double>() == doctest::Approx(-5.0 / 3.0).epsilon(1e-12));
    CHECK(run("selfgrav --kind gluon").code != 0);
}

TEST_CASE("csv numbers round-trip to the json values") {
    const Run j = run("selfgrav --kind boson");
    const Run c = run("-f csv selfgrav --kind boson");
    REQUIRE(j.code == 0);
    REQUIRE(c.code == 0);
    const json rows = json::parse(j.out)["rows"];
    std::istringstream in(c.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "N,beta_star,energy,chi,omega,product");
    for (const auto& row : rows) {
        REQUIRE(std::getline(in, line));
        std::istringstream fields(line);
        std::string cell;
        for (const char* key : {"N", "beta_star", "energy", "chi", "omega", "product"}) {
            std::getline(fields, cell, ',');
            CHECK(std::strtod(cell.c_str(), nullptr) == row[key].get<double>());
        }
    }
}

TEST_CASE("json output re-serializes bit for bit") {
    const Run r = run("sweep --param d --range 1.05,1.15,3");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(json::parse(j.dump()) == j);
    CHECK(j.dump(2) + "\n" == r.out);
}

TEST_CASE("identical runs are byte-identical") {
    for (const char* args : {"selfgrav --kind fermion", "sweep --param lambda --range 80,100,3", "verify"}) {
        const Run a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("output file and config file") {
    const std::string out = "macroloc_test_out.json";
    std::remove(out.c_str());
    const Run r = run("observables --lambda 50 --N 1000 -o " + out);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const json j = json::parse(slurp(out));
    CHECK(j["lambda"].get<double>() == 50);
    std::remove(out.c_str());

    const std::string cfg = temp_file("cfg.json", R"({"grav_kappa": 2.0, "grav_mu": 0.5})");
    const Run g = run("-c " + cfg + " selfgrav --kind boson --N-list 11");
    REQUIRE(g.code == 0);
    // beta* = 5 kappa mu (N - 1) / 16
    CHECK(json::parse(g.out)["rows"][0]["beta_star"].get<double>() == doctest::Approx(5.0 * 2 * 0.5 * 10 / 16).epsilon(1e-15));
}

TEST_CASE("input errors exit with 1") {
    CHECK(run("frobnicate").code == 1);
    CHECK(run("-c " + temp_file("bad_key.json", R"({"bogus": 1})") + " observables --lambda 2 --N 3").code == 1);
    CHECK(run("-c " + temp_file("bad_type.json", R"({"seed": "abc"})") + " observables --lambda 2 --N 3").code == 1);
    CHECK(run("-c " + temp_file("bad_range.json", R"({"epsilon_K": -5})") + " observables --lambda 2 --N 3").code == 1);
    CHECK(run("-c " + temp_file("not_json.json", "{oops") + " observables --lambda 2 --N 3").code == 1);
    CHECK(run("-c macroloc_test_missing.json observables --lambda 2 --N 3").code == 1);
    CHECK(run("observables --lambda 2 --N 3 -o /nonexistent_dir/x.json").code == 1);
    const std::string overlap = temp_file("overlap.json", R"({"lambda": 91.33, "N": 1e6, "cutoff_a": 1,
        "branches": [{"displacement": [0,0,0], "weight": [1,0]}, {"displacement": [1,0,0], "weight": [0,0]}]})");
    CHECK(run("superposition " + overlap).code == 1);
}

TEST_CASE("superposition output") {
    const std::string spec = temp_file("sp.json", R"({"lambda": 91.33, "N": 1e6, "cutoff_a": 1,
        "branches": [{"displacement": [-10,0,0], "weight": [0.7071067811865476, 0]},
                     {"displacement": [10,0,0], "weight": [0, 0.7071067811865476]}]})");
    const Run r = run("superposition " + spec);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const double intrinsic = 4 / (91.33 * 91.33 * 1e6);
    CHECK(j["variance_sigma2"][0].get<double>() == doctest::Approx(100 + intrinsic).epsilon(1e-12));
    CHECK(j["variance_sigma2"][1].get<double>() == doctest::Approx(intrinsic).epsilon(1e-12));
    CHECK(j["branch_overlap"].get<double>() == 0);
}
