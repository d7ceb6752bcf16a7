#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the command under sh, capturing stdout; stderr is left alone so test
// logs still show diagnostics from failing invocations.
RunResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + FQFLATS_CLI_BIN + " " + args;
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long long line_count(const std::string& text) {
    long long n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("count reports the frozen table and exits clean") {
    const auto r = run("count --q 3 --d 2 --k 0 --h 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"n_kflats\": 9") != std::string::npos);
    CHECK(r.out.find("\"n_hflats\": 12") != std::string::npos);
    CHECK(r.out.find("\"edges\": 36") != std::string::npos);
    CHECK(r.out.find("\"double_count_ok\": true") != std::string::npos);

    const auto csv = run("count --q 3 --d 2 --k 0 --h 1 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.find("q,d,k,h,") == 0);
    CHECK(csv.out.find("3,2,0,1,9,12,3,4,36,true") != std::string::npos);
}

TEST_CASE("usage and setup problems exit with 2") {
    CHECK(run("count --q 3 --d 2 --k 0").exit_code == 2);          // missing --h
    CHECK(run("count --q 6 --d 2 --k 0 --h 1").exit_code == 2);    // not a prime power
    CHECK(run("count --q 3 --d 1 --k 0 --h 1").exit_code == 2);    // h >= d
    CHECK(run("count --q 3 --d 2 --k 1 --h 1").exit_code == 0);    // k = h is a legal table
    CHECK(run("spectrum --q 3 --d 2 --k 1 --h 1").exit_code == 2); // but not a legal graph
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("").exit_code == 2); // a subcommand is required
    CHECK(run("--help").exit_code == 0);
    CHECK(run("count --help").exit_code == 0);
}

TEST_CASE("enumerate emits canonical lines in order") {
    const auto r = run("enumerate --q 3 --d 2 --k 1");
    CHECK(r.exit_code == 0);
    CHECK(line_count(r.out) == 12);
    CHECK(r.out.rfind("3 2 1 | 1 0 | 0 0\n", 0) == 0);

    const auto limited = run("enumerate --q 3 --d 2 --k 1 --limit 5");
    CHECK(line_count(limited.out) == 5);

    const auto points = run("enumerate --q 3 --d 2 --k 0 --limit 1");
    CHECK(points.out == "3 2 0 | | 0 0\n");
}

TEST_CASE("spectrum passes where the ceiling holds and fails where it does not") {
    const auto ok = run("spectrum --q 3 --d 2 --k 0 --h 1 --format csv");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("1.7320508") != std::string::npos);

    // lambda3^2 = q^2 + q exceeds the closed-form ceiling q^2 on this family;
    // the command reports it and signals failure
    const auto bad = run("spectrum --q 3 --d 3 --k 0 --h 1");
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("\"pass\": false") != std::string::npos);
}

TEST_CASE("mixing audits sampled subsets") {
    const auto r = run("mixing --q 3 --d 2 --k 0 --h 1 --samples 25 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("rich audits sampled families of every kind") {
    const auto r = run("rich --q 3 --d 2 --k 0 --h 1 --t 2 --samples 6 --seed 9");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("lund-saraf") != std::string::npos);
    CHECK(r.out.find("rich-kplanes") != std::string::npos);
    CHECK(r.out.find("rich-hplanes") != std::string::npos);
    CHECK(r.out.find("\"pass_exact\": false") == std::string::npos);
}

TEST_CASE("graph exports edges and the gram matrix") {
    const auto edges = run("graph --q 3 --d 2 --k 0 --h 1 --format csv");
    CHECK(edges.exit_code == 0);
    CHECK(edges.out.rfind("a_index,b_index\n", 0) == 0);
    CHECK(line_count(edges.out) == 37); // header + 36 edges

    const auto gram = run("graph --q 3 --d 2 --k 0 --h 1 --gram --format csv");
    CHECK(gram.exit_code == 0);
    CHECK(line_count(gram.out) == 9);
    CHECK(gram.out.rfind("4,1,1,1,1,1,1,1,1\n", 0) == 0);
}

TEST_CASE("verify passes a small grid and honors the failure contract") {
    const auto ok = run("verify --grid 3,2,0,1 --samples 40 --seed 7");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("\"fail\": 0") != std::string::npos);

    const auto faulty = run("verify --grid 3,2,0,1 --samples 40 --seed 7 --inject-fault");
    CHECK(faulty.exit_code == 1);
    CHECK(faulty.out.find("\"status\": \"fail\"") != std::string::npos);
}

TEST_CASE("verify output is byte-stable across runs") {
    const std::string a = "/tmp/fqflats_verify_a.json";
    const std::string b = "/tmp/fqflats_verify_b.json";
    CHECK(run("verify --grid '3,2,0,1;3,3,0,2' --samples 30 --seed 11 --out " + a).exit_code == 0);
    CHECK(run("verify --grid '3,2,0,1;3,3,0,2' --samples 30 --seed 11 --out " + b).exit_code == 0);
    const auto ta = slurp(a);
    CHECK_FALSE(ta.empty());
    CHECK(ta == slurp(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("the budget variable gates expensive work") {
    // a 9-point part already exceeds max_part = 4: the graph is skipped
    const auto r = run("verify --grid 3,2,0,1 --samples 10 --seed 3", "FQFLATS_BUDGET=4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"status\": \"skip\"") != std::string::npos);
    CHECK(r.out.find("\"fail\": 0") != std::string::npos);

    CHECK(run("verify --grid 3,2,0,1", "FQFLATS_BUDGET=abc").exit_code == 2);
    CHECK(run("spectrum --q 3 --d 2 --k 0 --h 1", "FQFLATS_BUDGET=1,2,3,4,5").exit_code == 2);
    CHECK(run("verify --grid 3,2,0,1 --samples 10 --seed 3",
              "FQFLATS_BUDGET=20000,400000000,4000,2000")
              .exit_code == 0);
}

TEST_CASE("oversized grid entries degrade to skips, not failures") {
    const auto r = run("verify --grid 5,4,1,3 --samples 1", "FQFLATS_BUDGET=100");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"status\": \"fail\"") == std::string::npos);
    CHECK(r.out.find("\"status\": \"skip\"") != std::string::npos);
}

} // TEST_SUITE
