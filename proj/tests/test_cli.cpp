#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifdef _WIN32
#error "the CLI tests assume a POSIX shell"
#endif
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // combined stdout and stderr
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the installed CLI with the given arguments, capturing output and the
// real exit code.
CliResult run_cli(const std::string& args, const std::string& tag) {
    const std::string capture = "cli_capture_" + tag + ".txt";
    const std::string cmd =
        std::string("\"") + POOLTEST_CLI_PATH + "\" " + args + " > " + capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = slurp(capture);
    std::remove(capture.c_str());
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("run identifies an explicit defect pair and exits zero") {
    const CliResult r = run_cli("run --t 36 --s 2 --strategy s2 --defects 1,36", "pair");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const json j = json::parse(r.output);
    CHECK(j.at("schema") == 1);
    CHECK(j.at("correct") == true);
    CHECK(j.at("defects") == json::array({1, 36}));
    CHECK(j.at("report").at("answer") == json::array({1, 36}));
    CHECK(j.at("report").at("total_tests").get<std::uint64_t>() <= 20);
    CHECK(j.at("bound").get<std::uint64_t>() <= 20);
    CHECK(j.at("report").at("total_tests").get<std::uint64_t>() <= j.at("bound").get<std::uint64_t>());
    CHECK(j.at("params").contains("q"));
}

TEST_CASE("run with no defects answers the empty set in one stage") {
    const CliResult r = run_cli("run --t 36 --s 2 --strategy s2 --defects \"\"", "none");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const json j = json::parse(r.output);
    CHECK(j.at("correct") == true);
    CHECK(j.at("report").at("answer") == json::array());
    CHECK(j.at("report").at("stages") == 1);
}

TEST_CASE("run rejects out-of-range defect ids with a usage error") {
    CHECK(run_cli("run --t 36 --s 2 --strategy s2 --defects 37", "range").exit_code == 2);
    CHECK(run_cli("run --t 36 --s 2 --strategy s2 --defects 0", "zero").exit_code == 2);
    CHECK(run_cli("run --t 36 --s 2 --strategy s2 --defects 1,1", "dup").exit_code == 2);
    CHECK(run_cli("run --t 36 --s 2 --strategy s2 --defects 1,2,3", "many").exit_code == 2);
}

TEST_CASE("usage errors exit with code two") {
    CHECK(run_cli("chop --t 36", "unknown").exit_code == 2);
    CHECK(run_cli("run --s 2", "missing_t").exit_code == 2);
    CHECK(run_cli("run --t 36 --s 2 --strategy magic", "strategy").exit_code == 2);
    CHECK(run_cli("run --t 36 --s 3 --strategy s2 --defects 1", "s_mismatch").exit_code == 2);
    CHECK(run_cli("run --t 4294967296 --s 2 --strategy s2 --defects \"\"", "too_big").exit_code ==
          2);
    CHECK(run_cli("--help", "help").exit_code == 0);
}

TEST_CASE("run emits a one-row CSV on request") {
    const CliResult r =
        run_cli("run --t 36 --s 2 --strategy s2 --defects 7 --format csv", "csv");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "t,s,strategy,correct,total_tests,stages,answer");
    CHECK(lines[1].rfind("36,2,s2,1,", 0) == 0);
    CHECK(lines[1].find("\"7\"") != std::string::npos);
}

TEST_CASE("transcripts use one-based sample ids") {
    const CliResult r =
        run_cli("run --t 36 --s 2 --strategy s2 --defects 1,36 --dump-transcript", "transcript");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const json j = json::parse(r.output);
    REQUIRE(j.contains("transcript"));
    const json& stages = j.at("transcript").at("stages");
    REQUIRE(stages.size() >= 1);
    CHECK(stages[0].at("pools").size() == 8);  // one pool per code row
    for (const json& stage : stages) {
        REQUIRE(stage.at("pools").size() == stage.at("outcomes").size());
        for (const json& pool : stage.at("pools"))
            for (const json& member : pool) {
                CHECK(member.get<std::uint64_t>() >= 1);
                CHECK(member.get<std::uint64_t>() <= 36);
            }
    }
    CHECK(j.at("transcript").at("answer") == json::array({1, 36}));
}

TEST_CASE("verify passes exhaustively and is byte-identical across runs") {
    const std::string base =
        "verify --t 36 --s 2 --strategy s2 --n-prime 4 --inner-weight 2 --q 6";
    const CliResult a = run_cli(base + " --output cli_verify_a.json", "va");
    const CliResult b = run_cli(base + " --output cli_verify_b.json", "vb");
    REQUIRE_MESSAGE(a.exit_code == 0, a.output);
    REQUIRE(b.exit_code == 0);

    const std::string text_a = slurp("cli_verify_a.json");
    const std::string text_b = slurp("cli_verify_b.json");
    REQUIRE_FALSE(text_a.empty());
    CHECK(text_a == text_b);

    const json j = json::parse(text_a);
    CHECK(j.at("bound") == 20);
    CHECK(j.at("bound_satisfied") == true);
    CHECK(j.at("summary").at("runs") == 667);
    CHECK(j.at("summary").at("all_correct") == true);
    CHECK(j.at("summary").at("worst_total").get<std::uint64_t>() <= 20);
    CHECK(j.at("summary").at("max_stages").get<std::uint64_t>() <= 4);

    // The serial path reports the same summary (only the mode flag differs).
    const CliResult s = run_cli(base + " --serial --output cli_verify_s.json", "vs");
    REQUIRE(s.exit_code == 0);
    const json js = json::parse(slurp("cli_verify_s.json"));
    CHECK(js.at("parallel") == false);
    CHECK(js.at("summary") == j.at("summary"));

    std::remove("cli_verify_a.json");
    std::remove("cli_verify_b.json");
    std::remove("cli_verify_s.json");
}

TEST_CASE("verify writes one dump row per defect set on request") {
    const CliResult r = run_cli(
        "verify --t 36 --s 2 --strategy s2 --n-prime 4 --inner-weight 2 --q 6 "
        "--full-dump cli_dump.csv --output cli_dump_summary.json",
        "dump");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const auto lines = lines_of(slurp("cli_dump.csv"));
    REQUIRE(lines.size() == 668);  // header + one row per defect set
    CHECK(lines[0] == "defects,total_tests,stages,correct");
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK(lines[i].substr(lines[i].size() - 2) == ",1");  // every run correct
    std::remove("cli_dump.csv");
    std::remove("cli_dump_summary.json");
}

TEST_CASE("verify covers the generic strategy") {
    const CliResult r = run_cli(
        "verify --t 16 --s 3 --strategy generic --code-rows 10 --code-weight 2 --seed 1", "gen");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const json j = json::parse(r.output);
    CHECK(j.at("summary").at("runs") == 697);
    CHECK(j.at("summary").at("all_correct") == true);
    CHECK(j.at("summary").at("max_stages").get<std::uint64_t>() <= 4);
}

TEST_CASE("sweep prints the pinned header and the restricted bound") {
    const CliResult r =
        run_cli("sweep --t-list 36 --n-prime 4 --inner-weight 2 --q 6", "sweep1");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "t,log2t,bound,bound/log2t,info_bound,dr82,two_stage,damaschke25");
    CHECK(lines[1].rfind("36,", 0) == 0);
    std::stringstream row(lines[1]);
    std::string field;
    std::getline(row, field, ',');  // t
    std::getline(row, field, ',');  // log2t
    std::getline(row, field, ',');  // bound
    CHECK(field == "20");
}

TEST_CASE("sweep ratios do not increase between doubling scales") {
    const CliResult r = run_cli("sweep --t-list 1024,4096,16384", "sweep3");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 4);
    double prev = 1e300;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::stringstream row(lines[i]);
        std::string field;
        for (int f = 0; f < 4; ++f) std::getline(row, field, ',');  // bound/log2t
        const double ratio = std::stod(field);
        CHECK(ratio <= prev);
        prev = ratio;
    }
}

TEST_CASE("bounds reports the reference formulas as labeled JSON") {
    const CliResult r = run_cli("bounds --t 1048576 --s 2", "bounds");
    REQUIRE_MESSAGE(r.exit_code == 0, r.output);
    const json j = json::parse(r.output);
    CHECK(j.at("schema") == 1);
    CHECK(j.at("command") == "bounds");
    CHECK_FALSE(j.contains("strategy"));
    CHECK(j.at("info_bound") == 40.0);
    CHECK(j.at("damaschke25") == 50.0);
    CHECK(j.at("note").get<std::string>().find("main terms") != std::string::npos);

    const CliResult r3 = run_cli("bounds --t 1048576 --s 3", "bounds3");
    REQUIRE(r3.exit_code == 0);
    CHECK_FALSE(json::parse(r3.output).contains("damaschke25"));
}

TEST_CASE("identical seeds give byte-identical random-defect runs") {
    const CliResult a = run_cli("run --t 36 --s 2 --strategy s2 --seed 9", "seed_a");
    const CliResult b = run_cli("run --t 36 --s 2 --strategy s2 --seed 9", "seed_b");
    REQUIRE(a.exit_code == 0);
    CHECK(a.output == b.output);

    const CliResult c = run_cli("run --t 36 --s 2 --strategy s2 --seed 10", "seed_c");
    REQUIRE(c.exit_code == 0);
    // A different seed is allowed to pick different defects; the run must
    // still identify them.
    CHECK(json::parse(c.output).at("correct") == true);
}
