#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "corrkit/cli.hpp"
#include "corrkit/report.hpp"

using namespace corrkit;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("corrkit_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "corrkit");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json run_json(std::vector<std::string> args) {
    const auto out = scratch() / "out.json";
    args.push_back("-o");
    args.push_back(out.string());
    REQUIRE(run(args) == 0);
    return nlohmann::json::parse(slurp(out));
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("correlation report round trip") {
    const auto j = run_json({"corr", "--kind", "uniform", "-n", "500", "--seed", "3", "-k", "3", "-s", "2,1"});
    CHECK(j.at("schema") == kSchema);
    const auto rep = correlation_report_from_json(j);
    CHECK(rep.k == 3);
    CHECK(rep.n == 500);
    CHECK(to_json(rep) == j);
    CHECK(correlation_report_from_json(to_json(rep)) == rep);

    const auto box = run_json({"corr", "--kind", "kronecker", "--alpha", "0.3819660112501051", "-n", "300", "-k",
                               "2", "--box", "-1.5:0.5"});
    CHECK(correlation_report_from_json(box) == correlation_report_from_json(box));
    CHECK(box.at("boxes").size() == 1);
}

TEST_CASE("pair correlation of a large uniform sample") {
    const auto j = run_json({"corr", "-n", "100000", "--seed", "7", "-k", "2", "-s", "1"});
    CHECK(std::fabs(j.at("value").get<double>() - 2.0) <= 0.05);
}

TEST_CASE("point files") {
    const auto pts = scratch() / "points.txt";
    REQUIRE(run({"gen", "--kind", "vdc", "-n", "64", "-o", pts.string()}) == 0);
    const auto a = run_json({"corr", "-i", pts.string(), "-k", "2", "-s", "1"});
    const auto b = run_json({"corr", "--kind", "vdc", "-n", "64", "-k", "2", "-s", "1"});
    CHECK(a.at("value") == b.at("value"));
    CHECK(a.at("raw_count") == b.at("raw_count"));

    const auto cs = run_json({"cstar", "-i", pts.string(), "-k", "2", "-s", "1"});
    CHECK(cs.at("value").get<double>() > 0.0);
    const auto mom = run_json({"moments", "-i", pts.string(), "-k", "2", "-s", "1"});
    CHECK(mom.at("bell_prediction") == 2.0);
    const auto dist = run_json({"dist", "-i", pts.string(), "-r", "3", "-k", "2"});
    CHECK(dist.at("density_functional").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("energy and metric") {
    const auto e = run_json({"energy", "--range", "3"});
    CHECK(e.at("energy") == "19");
    CHECK(e.at("three_ap") == "2");
    const auto ints = scratch() / "ints.txt";
    std::ofstream(ints) << "# squares\n1\n4\n9\n16\n25\n";
    const auto sq = run_json({"energy", "--integers", ints.string()});
    CHECK(sq.at("N") == 5);
    const auto m = run_json({"metric", "--range", "64", "-n", "64", "-s", "0.5", "--trials", "3", "--seed", "1"});
    CHECK(m.at("trials") == 3);
    CHECK(m == run_json({"metric", "--range", "64", "-n", "64", "-s", "0.5", "--trials", "3", "--seed", "1"}));
}

TEST_CASE("sweep") {
    const auto out = scratch() / "sweep.csv";
    REQUIRE(run({"sweep", "--stat", "bell3", "-s", "1", "--N", "10,20", "-o", out.string()}) == 0);
    auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"N", "statistic", "target", "deviation"});
    CHECK(std::stod(rows[1][1]) == 5.0);
    CHECK(std::stod(rows[2][3]) == 0.0);

    REQUIRE(run({"sweep", "--kind", "dyadic", "--stat", "r3", "-s", "1.5", "--N", "16,64,256,1024", "-o",
                 out.string()}) == 0);
    rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][1]) == 0.0);
        CHECK(std::stod(rows[i][2]) == 9.0);
    }

    REQUIRE(run({"sweep", "--stat", "i2star", "-s", "2", "--N", "1000,4000", "-o", out.string()}) == 0);
    rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 3);
    CHECK(std::stod(rows[2][2]) == 6.0);
    CHECK(run({"sweep", "--stat", "r2", "--N", "100,50"}) == 4);
    CHECK(run({"sweep", "--stat", "q2"}) != 0);
}

TEST_CASE("output does not depend on the thread count") {
    std::string first;
    for (const char* threads : {"1", "2", "7"}) {
        const auto out = scratch() / "threads.csv";
        REQUIRE(run({"--threads", threads, "corr", "-n", "20000", "--seed", "4", "-k", "3", "-s", "2", "--format",
                     "csv", "-o", out.string()}) == 0);
        const auto text = slurp(out);
        if (first.empty()) first = text;
        CHECK(text == first);
    }
    CHECK(csv_rows(first)[0][0] == "statistic");
}

TEST_CASE("verify is deterministic") {
    const auto a = run_json({"verify", "--quick", "--seed", "3"});
    const auto b = run_json({"verify", "--quick", "--seed", "3"});
    CHECK(a == b);
    CHECK(a.at("passed") == true);
}

TEST_CASE("exit codes") {
    const auto bad = scratch() / "bad.txt";
    std::ofstream(bad) << "0.1\nabc\n";
    CHECK(run({"corr", "-i", bad.string(), "-k", "2", "-s", "1"}) == 3);
    const auto outside = scratch() / "outside.txt";
    std::ofstream(outside) << "0.1\n1.5\n";
    CHECK(run({"corr", "-i", outside.string(), "-k", "2", "-s", "1"}) == 3);
    CHECK(run({"corr", "-n", "10", "-k", "2", "-s", "6"}) == 4);
    CHECK(run({"corr", "-n", "10", "-k", "2", "--box", "1:0"}) == 4);
    CHECK(run({"moments", "-n", "10", "-k", "2", "-s", "0"}) == 4);
    CHECK(run({"corr", "-n", "3000", "-k", "3", "--box", "-1:1,-1:1", "--star"}) == 5);
    CHECK(run({"corr", "--bogus"}) == 2);
    CHECK(run({"energy"}) == 4);
}
