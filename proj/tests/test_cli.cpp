#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "shnls/cli.hpp"
#include "shnls/io.hpp"
#include "support.hpp"

using namespace shnls;

namespace {

int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "shnls");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli::main(static_cast<int>(argv.size()), argv.data());
}

const char* kConfig = R"(
[grid]
dim = 1
n = 256
length = 40.0
[equation]
kind = "NLS"
[initial]
type = "soliton-1d"
[step]
t_end = 0.1
adaptive = false
)";

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(invoke({}) == cli::kExitUsage);
    CHECK(invoke({"frobnicate"}) == cli::kExitUsage);
    CHECK(invoke({"run", "missing.toml"}) == cli::kExitUsage);
    CHECK(invoke({"validate", "--suite", "nonsense"}) == cli::kExitUsage);
    CHECK(invoke({"--help"}) == cli::kExitOk);
}

TEST_CASE("malformed config exits with 2") {
    const auto dir = test::scratch_dir("cli_bad");
    io::write_text_file(dir / "bad.toml", "[grid]\ndim = 7\n");
    CHECK(invoke({"run", (dir / "bad.toml").string()}) == cli::kExitUsage);
}

TEST_CASE("run writes outputs and exits 0") {
    const auto dir = test::scratch_dir("cli_run");
    io::write_text_file(dir / "c.toml", kConfig);
    CHECK(invoke({"run", (dir / "c.toml").string(), "--out", (dir / "out").string(), "--quiet"}) == cli::kExitOk);
    const auto summary = nlohmann::json::parse(io::read_text_file(dir / "out" / "summary.json"));
    CHECK(summary["termination"] == "completed");
}

TEST_CASE("unwritable output exits with 3") {
    const auto dir = test::scratch_dir("cli_io");
    io::write_text_file(dir / "c.toml", kConfig);
    io::write_text_file(dir / "file", "x");
    CHECK(invoke({"run", (dir / "c.toml").string(), "--out", (dir / "file" / "sub").string(), "-q"}) == cli::kExitIo);
}

TEST_CASE("townes writes the profile") {
    const auto dir = test::scratch_dir("cli_townes");
    CHECK(invoke({"townes", "--sigma", "1", "--dim", "2", "--out", dir.string()}) == cli::kExitOk);
    CHECK(std::filesystem::exists(dir / "ground_state.csv"));
    const auto side = nlohmann::json::parse(io::read_text_file(dir / "ground_state.json"));
    CHECK(side["R0"].get<double>() == doctest::Approx(2.2062).epsilon(1e-4));
    CHECK(side["power"].get<double>() == doctest::Approx(11.70).epsilon(1e-3));
    CHECK(invoke({"townes", "--dim", "2", "--bracket", "2.5", "3.0"}) == cli::kExitUsage);
}

TEST_CASE("validate suites pass") {
    CHECK(invoke({"validate", "--suite", "conservation"}) == cli::kExitOk);
    CHECK(invoke({"validate", "--suite", "multipliers", "-q"}) == cli::kExitOk);
}
