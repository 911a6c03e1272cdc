#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qtrank/census.hpp>
#include <qtrank/cli.hpp>
#include <qtrank/fpcount.hpp>
#include <qtrank/intpoly.hpp>
#include <qtrank/sieve.hpp>
#include <qtrank/systems.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace qtrank;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("qtrank");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli((int)argv.size(), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Lines that are not part of the '#' reproducibility header.
std::string body_of(const std::string& text) {
    std::istringstream in(text);
    std::string line, body;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') body += line + '\n';
    return body;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::istringstream in(body_of(text));
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

IntPoly ip(std::vector<long long> cs) {
    std::vector<Int> v(cs.begin(), cs.end());
    return IntPoly(std::move(v));
}

}  // namespace

TEST_CASE("coefficient lists round trip") {
    CHECK(parse_coeff_list("0,3,3") == ip({0, 3, 3}));
    CHECK(parse_coeff_list(" -1 , 0 , 1 ") == ip({-1, 0, 1}));
    CHECK(parse_coeff_list("0").is_zero());
    CHECK(parse_coeff_list("5,0").degree() == 0);  // trailing zeros trim

    // print o parse fixes canonical strings, parse o print is the identity
    for (const char* s : {"0", "7", "-3,1", "1,0,-2", "99999999999999999999"})
        CHECK(format_coeff_list(parse_coeff_list(s)) == s);
    uint64_t state = 42;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> cs;
        int len = 1 + (int)(splitmix64(state++) % 6);
        for (int i = 0; i < len; ++i) {
            Int v = (long long)(splitmix64(state++) % 2001) - 1000;
            if (trial % 5 == 0) v *= Int("1000000000000000000000000");
            cs.push_back(v);
        }
        IntPoly p{std::move(cs)};
        CHECK(parse_coeff_list(format_coeff_list(p)) == p);
    }

    CHECK_THROWS_AS(parse_coeff_list(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_coeff_list("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coeff_list("1,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coeff_list("--3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_coeff_list("3,"), std::invalid_argument);
}

TEST_CASE("rank-bound emits the worked example") {
    CliResult r = run({"rank-bound", "--A", "1", "--B", "0,3,3", "--C",
                       "0,0,0,1"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "Disc");
    CHECK(j["omega"] == 3);
    CHECK(j["bound"] == 2);
    CHECK(j["singular"] == false);
    CHECK(j["isotrivial"] == false);
    // B^2 - 4AC = X^2 (9X^2 + 14X + 9)
    std::vector<std::string> want = {"0", "0", "9", "14", "9"};
    REQUIRE(j["certificate"].size() == want.size());
    for (size_t i = 0; i < want.size(); ++i)
        CHECK(j["certificate"][i] == want[i]);
    CHECK(r.err.find("# qtrank") == 0);  // header on the diagnostic stream
    CHECK(r.out.find('#') == std::string::npos);
}

TEST_CASE("rank-bound flags degenerate members") {
    CliResult singular = run({"rank-bound", "--C", "0,0,0,1"});
    REQUIRE(singular.code == 0);
    auto js = nlohmann::json::parse(singular.out);
    CHECK(js["singular"] == true);
    CHECK(js["bound"].is_null());
    CHECK(js["omega"].is_null());

    CliResult iso = run({"rank-bound", "--B", "1", "--C", "0,0,0,1"});
    REQUIRE(iso.code == 0);
    auto ji = nlohmann::json::parse(iso.out);
    CHECK(ji["isotrivial"] == true);
    CHECK(ji["bound"].is_null());

    CHECK(run({"rank-bound", "--C", "1,1"}).code == 2);  // not a monic cubic
    CHECK(run({"rank-bound", "--C", "0,0,0,1", "--B", "1,x"}).code == 2);
}

TEST_CASE("irr-count matches the worked example") {
    CliResult r = run({"irr-count", "--p", "5", "--n", "4", "--predicate",
                       "even"});
    REQUIRE(r.code == 0);
    CHECK(body_of(r.out) == "6\n");
    CHECK(r.out.find("# qtrank") == 0);  // inline header above the number

    CliResult brute = run({"irr-count", "--p", "5", "--n", "4",
                           "--predicate", "even", "--brute"});
    CHECK(body_of(brute.out) == "6\n");

    CliResult all = run({"irr-count", "--p", "5", "--n", "4"});
    CHECK(body_of(all.out) == "150\n");

    CliResult fixed = run({"irr-count", "--p", "5", "--n", "4",
                           "--predicate", "even-coeff", "--coeff", "2"});
    REQUIRE(fixed.code == 0);
    CHECK(body_of(fixed.out) ==
          std::to_string(brute_census(5, 4, CensusPredicate::even_with_coeff(
                                                2))) +
              "\n");

    CHECK(run({"irr-count", "--p", "6", "--n", "4"}).code == 2);
    CHECK(run({"irr-count", "--p", "5", "--n", "4", "--coeff", "7"}).code ==
          2);
}

TEST_CASE("census emits the fixed csv schema") {
    CliResult r = run({"census", "--kind", "sell", "--H", "1", "--mode",
                       "exact"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);  // header + one record
    CHECK(rows[0][0] == "kind");
    CHECK(rows[0][11] == "wall_time_s");
    CHECK(rows[1][0] == "sell");
    CHECK(rows[1][1] == "1");
    CHECK(rows[1][3] == "729");
    CHECK(r.out.find("# qtrank") == 0);

    // reruns are byte-identical below the header by default
    CliResult again = run({"census", "--kind", "sell", "--H", "1", "--mode",
                           "exact"});
    CHECK(body_of(again.out) == body_of(r.out));

    CliResult multi = run({"census", "--kind", "s0", "--H", "1,2"});
    CHECK(csv_rows(multi.out).size() == 3);
}

TEST_CASE("census json and file output") {
    CliResult r = run({"census", "--kind", "sell", "--H", "1", "--format",
                       "json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find('#') == std::string::npos);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["total_box"] == 729);
    CHECK(j[0]["wall_time_s"] == 0.0);
    CHECK(r.err.find("# qtrank") == 0);

    std::string path = "/tmp/qtrank_cli_census_test.csv";
    CliResult f = run({"census", "--kind", "sell", "--H", "1", "--out",
                       path});
    REQUIRE(f.code == 0);
    CHECK(f.out.empty());
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    CHECK(csv_rows(file.str()).size() == 2);
    CHECK(file.str().find("# qtrank") == 0);
    std::remove(path.c_str());

    CHECK(run({"census", "--kind", "sell", "--H", "1", "--out",
               "/nonexistent-dir/x.csv"})
              .code == 2);
}

TEST_CASE("census sampling is seeded and validated") {
    std::vector<std::string> cmd = {"census", "--kind", "sell",   "--H", "2",
                                    "--mode", "sampled", "--seed", "7",  "--N",
                                    "500"};
    CliResult a = run(cmd);
    CliResult b = run(cmd);
    REQUIRE(a.code == 0);
    CHECK(body_of(a.out) == body_of(b.out));
    CHECK(a.out.find("# seed: 7") != std::string::npos);
    auto rows = csv_rows(a.out);
    CHECK(rows[1][2] == "sampled");
    CHECK(rows[1][3] == "500");

    CHECK(run({"census", "--kind", "sell", "--H", "2", "--mode", "sampled"})
              .code == 2);
    CHECK(run({"census", "--kind", "nope", "--H", "1"}).code == 2);
    CHECK(run({"census", "--kind", "sell", "--H", "2", "--max-box", "100"})
              .code == 3);
}

TEST_CASE("ffcount verifies the closed forms") {
    CliResult r = run({"ffcount", "--kind", "m11", "--p", "5"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0] == std::vector<std::string>{"kind", "p", "target", "brute",
                                              "closed_num", "closed_den",
                                              "ratio"});
    CHECK(rows[1][0] == "m11");
    CHECK(rows[1][2] == "Ap");
    CHECK(rows[1][3] == std::to_string(count_Ap(SystemKind::M11, 5)));
    CHECK(rows[1][4] == "625");
    CHECK(rows[1][5] == "2");
    int nu_rows = 0;
    for (size_t i = 2; i < rows.size(); ++i) {
        CHECK(rows[i][3] == rows[i][4]);  // zero tolerance on closed forms
        CHECK(rows[i][5] == "1");
        CHECK(rows[i][6] == "1");
        ++nu_rows;
    }
    CHECK(nu_rows >= 1);

    CliResult ap = run({"ffcount", "--kind", "m11", "--p", "5", "--check",
                        "ap"});
    CHECK(csv_rows(ap.out).size() == 2);
    CliResult nu = run({"ffcount", "--kind", "m11", "--p", "5", "--check",
                        "nu"});
    for (size_t i = 1; i < csv_rows(nu.out).size(); ++i)
        CHECK(csv_rows(nu.out)[i][2] != "Ap");

    CliResult j = run({"ffcount", "--kind", "m11", "--p", "5", "--check",
                       "ap", "--format", "json"});
    auto arr = nlohmann::json::parse(j.out);
    REQUIRE(arr.size() == 1);
    CHECK(arr[0]["kind"] == "m11");
    CHECK(arr[0]["target"] == "Ap");
    CHECK(arr[0]["brute"] == count_Ap(SystemKind::M11, 5));

    CHECK(run({"ffcount", "--kind", "sys1", "--p", "7"}).code == 2);
    CHECK(run({"ffcount", "--kind", "m11", "--p", "9"}).code == 2);
    CHECK(run({"ffcount", "--kind", "nope", "--p", "5"}).code == 2);
}

TEST_CASE("sieve reproduces the library report") {
    CliResult r = run({"sieve", "--kind", "sys1", "--H", "2", "--z", "5"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "sys1");
    CHECK(j["empirical_b_pz"] == 12225);
    CHECK(j["exact_b"] == 6697);
    CHECK(j["box_size"] == 15625);
    CHECK(j["theoretical_bound"].is_null());

    CliResult ne = run({"sieve", "--kind", "sys1", "--H", "2", "--z", "5",
                        "--no-exact"});
    CHECK(nlohmann::json::parse(ne.out)["exact_b"].is_null());

    CHECK(run({"sieve", "--kind", "sys1", "--H", "2"}).code == 2);
    CHECK(run({"sieve", "--kind", "sys1", "--H", "2", "--z", "5",
               "--auto-z"})
              .code == 2);
    CHECK(run({"sieve", "--kind", "sys1", "--H", "16", "--z", "5"}).code ==
          3);  // 33^6 tuples past the default budget
}

TEST_CASE("sieve theory-only evaluates giant boxes") {
    CliResult r = run({"sieve", "--kind", "sys1", "--H", "1000000",
                       "--auto-z", "--theory-only"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["z"] == 332);
    REQUIRE(j["theoretical_bound"].is_number());
    CHECK(j["theoretical_bound"].get<double>() > 0.0);
    CHECK(j["empirical_b_pz"].is_null());
    CHECK(j["exact_b"].is_null());
    CHECK(j["box_size"].get<double>() > 1e37);  // (2H+1)^6

    // constants scale the remainder terms monotonically
    CliResult big = run({"sieve", "--kind", "sys1", "--H", "1000000",
                         "--auto-z", "--theory-only", "--c1", "3"});
    auto jb = nlohmann::json::parse(big.out);
    CHECK(jb["theoretical_bound"].get<double>() >=
          j["theoretical_bound"].get<double>());

    // cutoff below the smallest admitted prime: no bound to report
    CliResult none = run({"sieve", "--kind", "sys1", "--H", "16", "--auto-z",
                          "--theory-only"});
    REQUIRE(none.code == 0);
    CHECK(nlohmann::json::parse(none.out)["theoretical_bound"].is_null());
}

TEST_CASE("worker flag leaves results unchanged and env intact") {
    setenv("QTRANK_WORKERS", "5", 1);
    CliResult one = run({"census", "--kind", "s0", "--H", "2", "--workers",
                         "1"});
    CliResult three = run({"census", "--kind", "s0", "--H", "2", "--workers",
                           "3"});
    CHECK(body_of(one.out) == body_of(three.out));
    const char* env = std::getenv("QTRANK_WORKERS");
    REQUIRE(env != nullptr);
    CHECK(std::string(env) == "5");
    unsetenv("QTRANK_WORKERS");
}

TEST_CASE("usage surface") {
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"census", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);  // a subcommand is required
    CliResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("rank-bound") != std::string::npos);
    CliResult version = run({"--version"});
    CHECK(version.code == 0);
    CHECK(version.out == "0.1.0\n");
}
