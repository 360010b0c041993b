#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gkpwalk/analysis.hpp"
#include "gkpwalk/cli.hpp"
#include "gkpwalk/io.hpp"

using namespace gkpwalk;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

// Runs the CLI in-process with stdout captured, restoring the stream before
// any assertions run.
CliResult cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"gkpwalk"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream buffer;
    std::streambuf* saved = std::cout.rdbuf(buffer.rdbuf());
    CliResult result;
    result.code = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(saved);
    result.out = buffer.str();
    return result;
}

std::filesystem::path fresh_dir(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("target subcommand writes a normalized comb") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_target");
    const std::string out = (dir / "zero.json").string();
    REQUIRE(cli({"target", "--logical", "0", "--w", "3", "--kappa", "0.0333",
                 "--sigma2", "0.5", "--out", out})
                .code == kExitOk);
    const CoherentSuperposition state = load_state(out);
    CHECK(norm(state) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(load_json_file(out)["meta"]["generator"] == "gkp-target");
}

TEST_CASE("walk subcommand writes state, trace, and summary") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_walk");
    REQUIRE(cli({"walk", "--N", "4", "--w", "3", "--axis", "momentum", "--mode", "optical",
                 "--out", (dir / "run").string()})
                .code == kExitOk);
    CHECK(std::filesystem::exists(dir / "run" / "state.json"));
    CHECK(std::filesystem::exists(dir / "run" / "trace.json"));
    CHECK(std::filesystem::exists(dir / "run" / "summary.json"));

    const json summary = load_json_file(dir / "run" / "summary.json");
    CHECK(summary.contains("success_probability"));
    CHECK(summary.contains("fidelity_vs_gkp_target"));
    CHECK(summary["term_count"].get<int>() == 9);
    CHECK(summary["kappa"].get<double>() ==
          doctest::Approx(1.0 / std::sqrt(2.0 * 4.0 * 9.0)));

    const json trace = load_json_file(dir / "run" / "trace.json");
    CHECK(trace["steps"].size() == 8);
}

TEST_CASE("walk validation failures exit with the validation code") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_walk_bad");
    CHECK(cli({"walk", "--N", "0", "--w", "3", "--out", (dir / "run").string()}).code ==
          kExitValidation);
    CHECK(cli({"walk", "--N", "2", "--w", "-1", "--out", (dir / "run").string()}).code ==
          kExitValidation);
    CHECK(cli({"walk", "--N", "2", "--w", "1", "--mode", "sideways", "--out",
               (dir / "run").string()})
              .code == kExitValidation);
}

TEST_CASE("reduced and optical modes produce the same final state file") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_modes");
    for (const std::string axis : {"momentum", "position"}) {
        REQUIRE(cli({"walk", "--N", "3", "--w", "1.5", "--axis", axis, "--mode", "reduced",
                     "--out", (dir / ("r_" + axis)).string()})
                    .code == kExitOk);
        REQUIRE(cli({"walk", "--N", "3", "--w", "1.5", "--axis", axis, "--mode", "optical",
                     "--out", (dir / ("o_" + axis)).string()})
                    .code == kExitOk);
        const CoherentSuperposition reduced = load_state(dir / ("r_" + axis) / "state.json");
        const CoherentSuperposition optical = load_state(dir / ("o_" + axis) / "state.json");
        REQUIRE(reduced.size() == optical.size());
        CHECK(fidelity(reduced, optical) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            CHECK(std::abs(reduced.terms()[i].center.x - optical.terms()[i].center.x) < 1e-12);
            CHECK(std::abs(reduced.terms()[i].center.p - optical.terms()[i].center.p) < 1e-12);
            CHECK(std::abs(reduced.terms()[i].amplitude - optical.terms()[i].amplitude) <
                  1e-12);
        }
    }
}

TEST_CASE("fidelity subcommand prints a full-precision scalar") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_fidelity");
    const std::string a = (dir / "a.json").string();
    save_state(a, make_vacuum(0.5));
    const CliResult result = cli({"fidelity", a, a});
    REQUIRE(result.code == kExitOk);
    CHECK(std::stod(result.out) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exit codes distinguish validation, io, and schema failures") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_codes");
    const std::string a = (dir / "a.json").string();
    const std::string b = (dir / "b.json").string();
    save_state(a, make_vacuum(0.5));
    save_state(b, make_vacuum(0.7));

    // Mismatched sigma2 between two otherwise valid files is a schema error.
    CHECK(cli({"fidelity", a, b}).code == kExitSchema);
    CHECK(cli({"fidelity", a, (dir / "missing.json").string()}).code == kExitIo);

    write_text_file(dir / "broken.json", "][");
    CHECK(cli({"fidelity", a, (dir / "broken.json").string()}).code == kExitSchema);

    // Unknown flags and missing subcommands are validation failures.
    CHECK(cli({"fidelity", a, a, "--frobnicate"}).code == kExitValidation);
    CHECK(cli({}).code == kExitValidation);
}

TEST_CASE("wigner subcommand writes a grid whose Riemann sum is one") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_wigner");
    const std::string state = (dir / "vac.json").string();
    save_state(state, make_vacuum(0.5));
    const std::string out = (dir / "wigner.csv").string();
    REQUIRE(cli({"wigner", state, "--grid", "-6:6:64", "--out", out}).code == kExitOk);

    std::istringstream lines(read_text_file(out));
    std::string line;
    std::getline(lines, line);
    REQUIRE(line == "x,p,w");
    double sum = 0.0;
    int rows = 0;
    while (std::getline(lines, line)) {
        sum += std::stod(line.substr(line.rfind(',') + 1));
        ++rows;
    }
    CHECK(rows == 64 * 64);
    const double cell = (12.0 / 63.0) * (12.0 / 63.0);
    CHECK(sum * cell == doctest::Approx(1.0).epsilon(1e-6));

    CHECK(cli({"wigner", state, "--grid", "6:-6:64", "--out", out}).code ==
          kExitValidation);
}

TEST_CASE("density subcommand samples the comb") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_density");
    REQUIRE(cli({"walk", "--N", "1", "--w", "5", "--out", (dir / "run").string()}).code ==
            kExitOk);
    const std::string out = (dir / "density.csv").string();
    REQUIRE(cli({"density", (dir / "run" / "state.json").string(), "--grid", "-12:12:241",
                 "--out", out})
                .code == kExitOk);
    std::istringstream lines(read_text_file(out));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "coord,density");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 241);
}

TEST_CASE("envelope subcommand recovers the target kappa") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_envelope");
    const std::string state = (dir / "zero.json").string();
    REQUIRE(cli({"target", "--logical", "0", "--w", "3", "--kappa", "0.05", "--out", state})
                .code == kExitOk);
    const std::string report = (dir / "fit.json").string();
    REQUIRE(cli({"envelope", state, "--w", "3", "--out", report}).code == kExitOk);
    CHECK(load_json_file(report)["kappa_hat"].get<double>() ==
          doctest::Approx(0.05).epsilon(1e-10));
}

TEST_CASE("equiv subcommand reports four passing checks") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_equiv");
    const std::string out = (dir / "equiv.json").string();
    const CliResult result = cli({"equiv", "--N", "2", "--w", "1.3", "--out", out});
    REQUIRE(result.code == kExitOk);
    const json report = load_json_file(out);
    CHECK(report["pass"] == true);
    CHECK(report["checks"].size() == 4);
    CHECK(result.out.find("all checks passed") != std::string::npos);
}

TEST_CASE("trace-dump emits the requested document") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_trace");
    const std::string out = (dir / "final.json").string();
    REQUIRE(cli({"trace-dump", "--N", "1", "--w", "0.8", "--final-only", "--out", out})
                .code == kExitOk);
    // N=1 runs two steps: teeth at -2w, 0, +2w.
    CHECK(load_state(out).size() == 3);

    REQUIRE(cli({"trace-dump", "--N", "1", "--w", "0.8", "--out",
                 (dir / "full.json").string()})
                .code == kExitOk);
    CHECK(load_json_file(dir / "full.json")["steps"].size() == 2);
}

TEST_CASE("config files provide defaults that flags override") {
    const std::filesystem::path dir = fresh_dir("gkpwalk_cli_config");
    write_text_file(dir / "run.toml",
                    "[walk]\nN=1\nw=5.0\nout=\"" + (dir / "from_config").string() + "\"\n");
    REQUIRE(cli({"walk", "--config", (dir / "run.toml").string()}).code == kExitOk);
    CHECK(load_json_file(dir / "from_config" / "summary.json")["params"]["w"] == 5.0);

    REQUIRE(cli({"walk", "--config", (dir / "run.toml").string(), "--w", "2.0", "--out",
                 (dir / "overridden").string()})
                .code == kExitOk);
    CHECK(load_json_file(dir / "overridden" / "summary.json")["params"]["w"] == 2.0);
}
