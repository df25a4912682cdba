#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mstrang/bench.hpp"

using namespace mstrang;
namespace fs = std::filesystem;

namespace {

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"mstrang_bench"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("mstrang_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

const std::vector<std::string> kQuick = {"--grid-k", "19", "--dt-list", "0.0125,0.00625,0.003125",
                                         "--dt-ref", "1e-5"};

}  // namespace

TEST_CASE("case1 writes csv and report") {
    const fs::path out = scratch("case1");
    std::vector<std::string> args = {"--case", "case1", "--out", out.string()};
    args.insert(args.end(), kQuick.begin(), kQuick.end());
    REQUIRE(run(args) == 0);
    const std::string csv = slurp(out / "case1.csv");
    CHECK(csv.rfind("scheme,dt,linf_error,observed_order\n", 0) == 0);
    CHECK(parse_csv(csv).rows.size() == 6);
    const std::string report = slurp(out / "report.txt");
    CHECK(report.find("naive_strang: ") != std::string::npos);
    CHECK(report.find("modified_strang: ") != std::string::npos);
}

TEST_CASE("case2 flags and config file with overrides") {
    const fs::path out = scratch("case2");
    fs::create_directories(out);
    const fs::path config = out / "cfg.json";
    std::ofstream(config) << R"({"case": "case2", "b1": 1, "b2": 3, "K": 19, "schemes": ["modified"],
                                 "dt_list": [0.0125, 0.00625], "dt_ref": 1e-5})";
    REQUIRE(run({"--config", config.string(), "--b2", "2", "--out", out.string()}) == 0);
    const ErrorTable table = parse_csv(slurp(out / "case2.csv"));
    CHECK(table.rows.size() == 2);
    CHECK(table.rows[0].scheme == Scheme::ModifiedStrang);
}

TEST_CASE("errors give nonzero exit codes") {
    CHECK(run({"--config", "/nonexistent/missing.json"}) != 0);
    CHECK(run({"--no-such-flag"}) != 0);
    CHECK(run({"--case", "case7"}) != 0);
    CHECK(run({"--dt-list", "0.03"}) != 0);
}

TEST_CASE("repeated runs of the executable give identical csv") {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    std::string flags;
    for (const auto& s : kQuick) flags += " " + s;
    const std::string exe = MSTRANG_BENCH_EXE;
    REQUIRE(std::system((exe + " --case case2" + flags + " --out " + a.string() + " > /dev/null").c_str()) == 0);
    REQUIRE(std::system((exe + " --case case2" + flags + " --out " + b.string() + " > /dev/null").c_str()) == 0);
    CHECK(slurp(a / "case2.csv") == slurp(b / "case2.csv"));
}

TEST_CASE("reference blow-up gives a nonzero exit") {
    const fs::path out = scratch("blowup");
    CHECK(run({"--case", "custom", "--b1", "0", "--b2", "2e8", "--grid-k", "9", "--dt-list",
               "0.05", "--dt-ref", "1e-4", "--out", out.string()}) != 0);
}
