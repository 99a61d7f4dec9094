#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "ecslab/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = ecslab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path temp_file(const char* name) {
    fs::path dir = fs::temp_directory_path() / "ecslab_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("fig1 csv") {
    fs::path path = temp_file("fig1.csv");
    CliResult r = run_cli({"fig1", "--out", path.string()});
    REQUIRE(r.code == 0);
    std::string csv = slurp(path);
    CHECK(csv.rfind("alpha0,eta,fidelity\n", 0) == 0);
    CHECK(count_lines(csv) == 751);  // header + 150 x 5

    // determinism: a second run produces identical bytes
    fs::path path2 = temp_file("fig1_again.csv");
    run_cli({"fig1", "--out", path2.string()});
    CHECK(slurp(path2) == csv);

    fs::path path3 = temp_file("fig1_half.csv");
    run_cli({"fig1", "--etas", "0.5", "--steps", "20", "--out", path3.string()});
    std::istringstream lines(slurp(path3));
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.substr(line.rfind(',') + 1) == "0.5");
        ++rows;
    }
    CHECK(rows == 20);
}

TEST_CASE("fig2 and fig3 csv") {
    fs::path p2 = temp_file("fig2.csv");
    CliResult r2 = run_cli({"fig2", "--alphas", "0.5,1,4", "--etas", "1.0", "--out", p2.string()});
    REQUIRE(r2.code == 0);
    std::string csv2 = slurp(p2);
    CHECK(csv2.rfind("alpha,eta,avg_fidelity,avg_p_odd\n", 0) == 0);
    std::istringstream lines(csv2);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        auto first = line.find(',');
        auto second = line.find(',', first + 1);
        auto third = line.find(',', second + 1);
        CHECK(line.substr(second + 1, third - second - 1) == "1");
    }

    fs::path p3 = temp_file("fig3.csv");
    CliResult r3 = run_cli({"fig3", "--out", p3.string()});
    REQUIRE(r3.code == 0);
    std::string csv3 = slurp(p3);
    CHECK(csv3.rfind("alpha,p_even,entanglement\n", 0) == 0);
    CHECK(count_lines(csv3) == 151);
}

TEST_CASE("teleport report") {
    CliResult r = run_cli({"teleport", "--alpha", "1", "--eta", "1", "--theta", "1.2", "--phi",
                           "0.7", "--json"});
    REQUIRE(r.code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("resource") == "H");
    double sum = doc.at("probability_sum").get<double>();
    CHECK(std::abs(sum - 1.0) < 1e-9);
    double closed = doc.at("p_success_closed_form").get<double>();
    double enumerated = doc.at("success_probability").get<double>();
    CHECK(std::abs(closed - 0.5) < 1e-12);
    CHECK(std::abs(enumerated - closed) < 1e-8);
    for (const auto& o : doc.at("outcomes"))
        if (o.at("success").get<bool>())
            CHECK(std::abs(o.at("fidelity").get<double>() - 1.0) < 1e-10);
    CHECK(doc.at("input_state").at("n_modes") == 1);

    CliResult text = run_cli({"teleport", "--alpha", "0.8", "--eta", "0.9"});
    REQUIRE(text.code == 0);
    CHECK(text.out.find("success probability (closed form)") != std::string::npos);

    CliResult g = run_cli({"teleport", "--alpha", "1", "--resource", "G", "--json"});
    REQUIRE(g.code == 0);
    nlohmann::json gdoc = nlohmann::json::parse(g.out);
    CHECK(std::abs(gdoc.at("p_success_closed_form").get<double>() - 0.36709888558296015) <
          1e-12);
}

TEST_CASE("entangle report") {
    CliResult r = run_cli({"entangle", "--alpha", "1", "--json"});
    REQUIRE(r.code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(std::abs(doc.at("entanglement_ebits").get<double>() - 1.0) < 1e-9);

    CliResult g = run_cli({"entangle", "--alpha", "1", "--state", "G", "--json"});
    nlohmann::json gdoc = nlohmann::json::parse(g.out);
    CHECK(std::abs(gdoc.at("entanglement_ebits").get<double>() - 0.94841846623666144) < 1e-9);
}

TEST_CASE("validate subcommand") {
    CliResult r = run_cli({"validate", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("validation passed") != std::string::npos);
}

TEST_CASE("validate downgrades starved-cutoff oracle checks") {
    CliResult r = run_cli({"validate", "--cutoff", "5", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[WARN]") != std::string::npos);
    CHECK(r.out.find("truncation loss") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("error handling") {
    CliResult bad = run_cli({"fig1", "--out", "/nonexistent-dir/x/y.csv"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("error") != std::string::npos);

    CliResult usage = run_cli({"teleport", "--eta", "2.0", "--alpha", "1"});
    CHECK(usage.code == 2);

    CliResult none = run_cli({});
    CHECK(none.code == 2);
}
