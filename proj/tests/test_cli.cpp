#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "mwdep_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    const char* cli = std::getenv("MWDEP_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "MWDEP_CLI must point at the built binary");
    const fs::path out_path = work_dir() / "stdout.txt";
    const fs::path err_path = work_dir() / "stderr.txt";
    const std::string command = std::string(cli) + " " + args + " > " + out_path.string() +
                                " 2> " + err_path.string();
    const int status = std::system(command.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

nlohmann::json payload_of(const std::string& report_text) {
    return nlohmann::json::parse(report_text).at("payload");
}

} // namespace

TEST_CASE("test-two-sample: degenerate toy input exits 2 with a warning") {
    const fs::path x = work_dir() / "x12.txt";
    const fs::path y = work_dir() / "y34.txt";
    write_file(x, "1\n2\n");
    write_file(y, "3\n4\n");
    const auto r = run_cli("test-two-sample --x " + x.string() + " --y " + y.string() +
                           " --a-lag 0 --b-lag 0");
    CHECK(r.exit_code == 2);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("payload_type") == "test_report");
    CHECK_FALSE(doc.contains("rng"));
    const auto payload = doc.at("payload");
    CHECK(payload.at("u_stat") == 1.0);
    CHECK(payload.at("t_stat").is_null());
    const auto warnings = payload.at("warnings").get<std::vector<std::string>>();
    CHECK(std::find(warnings.begin(), warnings.end(), "nonpositive-variance") !=
          warnings.end());
}

TEST_CASE("test-two-sample: malformed input reports the line number and exits 1") {
    const fs::path x = work_dir() / "bad.txt";
    const fs::path y = work_dir() / "good.txt";
    write_file(x, "1\n2\nabc\n4\n");
    write_file(y, "1\n2\n");
    const auto r = run_cli("test-two-sample --x " + x.string() + " --y " + y.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("test-two-sample: identical iid files stay near the null") {
    const fs::path sample = work_dir() / "iid2k.txt";
    const auto sim = run_cli("simulate --process iid-normal:mu=0,sigma=1 --n 2000 --seed 2024 "
                             "--out " + sample.string());
    REQUIRE(sim.exit_code == 0);
    const auto r = run_cli("test-two-sample --x " + sample.string() + " --y " +
                           sample.string() + " --a-lag 0 --b-lag 0");
    CHECK(r.exit_code == 0);
    const auto payload = payload_of(r.out);
    CHECK(std::fabs(payload.at("t_stat").get<double>()) < 3.0);
    const auto warnings = payload.at("warnings").get<std::vector<std::string>>();
    CHECK(std::find(warnings.begin(), warnings.end(), "ties-under-strict") != warnings.end());
}

TEST_CASE("test-one-sample") {
    const fs::path zeros = work_dir() / "zeros.txt";
    write_file(zeros, "0\n0\n0\n0\n");
    const auto r = run_cli("test-one-sample --x " + zeros.string() + " --dist normal:0,1");
    CHECK(r.exit_code == 2);
    CHECK(payload_of(r.out).at("u_stat") == 0.5);

    const fs::path half = work_dir() / "half.txt";
    write_file(half, "0.5\n");
    const auto r2 = run_cli("test-one-sample --x " + half.string() + " --dist uniform:0,1");
    CHECK(r2.exit_code == 2);
    CHECK(payload_of(r2.out).at("u_stat") == 0.5);

    const auto r3 = run_cli("test-one-sample --x " + half.string() + " --dist banana:0,1");
    CHECK(r3.exit_code == 1);
}

TEST_CASE("test-adjacent") {
    const fs::path series = work_dir() / "series4.txt";
    write_file(series, "1\n2\n3\n4\n");
    const auto r = run_cli("test-adjacent --series " + series.string() + " --split 2");
    CHECK(r.exit_code == 2);
    CHECK(payload_of(r.out).at("u_stat") == 1.0);

    const auto r2 = run_cli("test-adjacent --series " + series.string() + " --split 4");
    CHECK(r2.exit_code == 1);

    const fs::path two = work_dir() / "series2.txt";
    write_file(two, "1\n2\n");
    const auto r3 = run_cli("test-adjacent --series " + two.string() + " --split 1");
    CHECK(r3.exit_code == 2);
    CHECK(payload_of(r3.out).at("v_n") == 0.0);
}

TEST_CASE("covplot") {
    const fs::path x = work_dir() / "alt.txt";
    write_file(x, "1\n-1\n1\n-1\n");
    const auto r = run_cli("covplot --x " + x.string() + " --max-lag 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "lag,gamma_x,band\n0,1,1\n1,-0.75,1\n");

    const auto r2 = run_cli("covplot --x " + x.string() + " --max-lag 4");
    CHECK(r2.exit_code == 1);

    const fs::path y = work_dir() / "alty.txt";
    write_file(y, "0.5\n-0.25\n0.75\n-0.5\n0.1\n");
    const auto r3 = run_cli("covplot --x " + x.string() + " --y " + y.string() + " --max-lag 2");
    CHECK(r3.exit_code == 0);
    CHECK(r3.out.rfind("lag,gamma_x,gamma_y,band\n", 0) == 0);
    CHECK(std::count(r3.out.begin(), r3.out.end(), '\n') == 4);
}

TEST_CASE("simulate: determinism and validation") {
    const fs::path a = work_dir() / "sim_a.txt";
    const fs::path b = work_dir() / "sim_b.txt";
    const std::string flags = "simulate --process lsv:gamma=0.25 --n 5 --seed 9 --out ";
    REQUIRE(run_cli(flags + a.string()).exit_code == 0);
    REQUIRE(run_cli(flags + b.string()).exit_code == 0);
    const std::string bytes_a = slurp(a);
    CHECK(bytes_a == slurp(b));

    std::istringstream in(bytes_a);
    std::string line;
    int count = 0;
    while (std::getline(in, line)) {
        const double v = std::stod(line);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        ++count;
    }
    CHECK(count == 5);

    CHECK(run_cli("simulate --process nonsense:a=1 --n 5").exit_code == 1);
}

TEST_CASE("mc: named scenario, thread independence, validation") {
    const fs::path out1 = work_dir() / "mc1.json";
    const fs::path out8 = work_dir() / "mc8.json";
    const auto r1 = run_cli("mc --scenario example1 --trials 6 --seed 7 --threads 1 --out " +
                            out1.string());
    REQUIRE(r1.exit_code == 0);
    const auto r8 = run_cli("mc --scenario example1 --trials 6 --seed 7 --threads 8 --out " +
                            out8.string());
    REQUIRE(r8.exit_code == 0);
    CHECK(slurp(out1) == slurp(out8));

    const auto doc = nlohmann::json::parse(slurp(out1));
    CHECK(doc.at("rng").at("algorithm") == "philox4x32-10");
    CHECK(doc.at("payload").at("rows").size() == 5);

    CHECK(run_cli("mc --scenario example1 --trials 0").exit_code == 1);
    CHECK(run_cli("mc --scenario no-such-scenario --trials 5").exit_code == 1);
}

TEST_CASE("mc: MWDEP_THREADS default changes nothing but the wall time") {
    const char* cli = std::getenv("MWDEP_CLI");
    REQUIRE(cli != nullptr);
    const fs::path out_env = work_dir() / "mc_env.json";
    const fs::path out_flag = work_dir() / "mc_flag.json";
    const std::string tail = " mc --scenario example2 --trials 4 --seed 11 --out ";
    const int rc1 = std::system(("MWDEP_THREADS=3 " + std::string(cli) + tail +
                                 out_env.string() + " > /dev/null 2>&1").c_str());
    const int rc2 = std::system((std::string(cli) + tail + out_flag.string() +
                                 " --threads 1 > /dev/null 2>&1").c_str());
    REQUIRE(WEXITSTATUS(rc1) == 0);
    REQUIRE(WEXITSTATUS(rc2) == 0);
    CHECK(slurp(out_env) == slurp(out_flag));
}

TEST_CASE("mc: scenario from a json file") {
    const fs::path config = work_dir() / "scenario.json";
    write_file(config, R"({
      "design": {"type": "two_sample",
                 "x_process": "iid-normal:mu=0,sigma=1",
                 "y_process": "iid-normal:mu=0,sigma=1"},
      "sizes": [[40, 30]],
      "a_lag": 1, "b_lag": 1,
      "trials": 5
    })");
    const auto r = run_cli("mc --scenario " + config.string() + " --seed 3");
    CHECK(r.exit_code == 0);
    const auto payload = payload_of(r.out);
    CHECK(payload.at("rows").size() == 1);
    CHECK(payload.at("rows").at(0).at("n") == 40);
}

TEST_CASE("tail-diag runs and produces a monotone table") {
    const auto r = run_cli("tail-diag --x-process iid-uniform:lo=0,hi=1 "
                           "--y-process iid-uniform:lo=0,hi=1 --n-grid 200,400 "
                           "--thresholds 0,0.3,0.8 --trials 50 --pi 0.5 --seed 5");
    CHECK(r.exit_code == 0);
    const auto payload = payload_of(r.out);
    const auto table = payload.at("exceedance");
    REQUIRE(table.size() == 2);
    for (const auto& row : table) {
        REQUIRE(row.size() == 3);
        CHECK(row.at(0).get<double>() >= row.at(1).get<double>());
        CHECK(row.at(1).get<double>() >= row.at(2).get<double>());
    }
}
