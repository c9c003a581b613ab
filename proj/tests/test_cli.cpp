#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

std::string binary_path() {
    const char* p = std::getenv("CURVETOP_BIN");
    REQUIRE_MESSAGE(p != nullptr, "set CURVETOP_BIN to the curvetop binary");
    return p;
}

// Runs the CLI with stderr routed away from the captured stream so the
// report does not pollute artifact checks.
RunResult run(const std::string& args) {
    std::string cmd = binary_path() + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.stdout_text.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path temp_dir() {
    fs::path d = fs::temp_directory_path() / "curvetop_cli_test";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("plane subcommand emits a graph as json") {
    RunResult r = run("plane \"x^2 + y^2 - 1\"");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["dimension"] == 2);
    CHECK(j["vertices"].size() == 4);
    CHECK(j["edges"].size() == 4);
    CHECK(j["certificates"]["plane_generic"] == true);
}

TEST_CASE("polynomials may be supplied as files") {
    fs::path f = temp_dir() / "circle.txt";
    std::ofstream(f) << "x^2 + y^2 - 1\n";
    RunResult r = run("plane " + f.string());
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.stdout_text)["vertices"].size() == 4);
}

TEST_CASE("--out writes artifacts and moves the report to stdout") {
    fs::path prefix = temp_dir() / "circle_out";
    RunResult r = run("plane \"x^2 + y^2 - 1\" --format both --out " + prefix.string());
    CHECK(r.exit_code == 0);
    // Report, not an artifact, on stdout.
    CHECK(r.stdout_text.find("vertices: 4") != std::string::npos);
    CHECK(r.stdout_text.find("components: 1") != std::string::npos);
    json j = json::parse(slurp(prefix.string() + ".json"));
    CHECK(j["edges"].size() == 4);
    std::istringstream obj(slurp(prefix.string() + ".obj"));
    std::string line;
    while (std::getline(obj, line)) {
        if (line.empty()) continue;
        CHECK((line.rfind("v ", 0) == 0 || line.rfind("l ", 0) == 0));
    }
}

TEST_CASE("space subcommand handles a graph surface pair") {
    RunResult r = run("space \"z - x^2\" \"y - x^2\" --format json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(j["dimension"] == 3);
    for (const auto& v : j["vertices"]) CHECK(v["approx"].size() == 3);
}

TEST_CASE("surfaces sharing a component are an input error") {
    RunResult r = run("space \"z^2 - x\" \"x*z^2 - x^2\"");
    CHECK(r.exit_code == 1);
}

TEST_CASE("malformed input is an input error") {
    CHECK(run("plane \"x^2 + \"").exit_code == 1);
    CHECK(run("plane \"x^2 - w\"").exit_code == 1);
    CHECK(run("frobnicate \"x\"").exit_code == 1);
    CHECK(run("plane \"x*y - 1\" --refine-width 0").exit_code == 1);
}

TEST_CASE("check-generic certifies without shearing") {
    // Two stacked circles share a vertical tangent line: not generic as given.
    RunResult bad = run("check-generic \"(x^2 + y^2 - 1)*(x^2 + (y - 2)^2 - 1)\"");
    CHECK(bad.exit_code == 2);
    CHECK(bad.stdout_text.find("plane-generic: fail") != std::string::npos);
    CHECK(bad.stdout_text.find("witness") != std::string::npos);

    RunResult good = run("check-generic \"y^2 - x\"");
    CHECK(good.exit_code == 0);
    CHECK(good.stdout_text.find("plane-generic: pass") != std::string::npos);

    RunResult pair = run("check-generic \"z^2 - x\" \"z - y\"");
    CHECK(pair.exit_code == 0);
    CHECK(pair.stdout_text.find("pseudo-generic: pass") != std::string::npos);

    RunResult bad_pair = run("check-generic \"z^2 - x\" \"z^2 - y\"");
    CHECK(bad_pair.exit_code == 2);
}

TEST_CASE("shear budget of zero fails certification on a non-generic curve") {
    RunResult r = run("plane \"(x^2 + y^2 - 1)*(x^2 + (y - 2)^2 - 1)\" --shear-budget 0");
    CHECK(r.exit_code == 2);
}

TEST_CASE("--refine-width shrinks exported intervals") {
    RunResult r = run("plane \"y^2 - x^3 + x\" --refine-width 1/1000000000000");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    for (const auto& v : j["vertices"])
        for (const auto& c : v["exact"]) {
            if (!c.contains("interval")) continue;
            // Interval endpoints are exact rationals; parse as long doubles
            // only to bound the width, which far exceeds 1e-12 precision.
            auto val = [](const std::string& s) {
                std::size_t slash = s.find('/');
                if (slash == std::string::npos) return std::strtold(s.c_str(), nullptr);
                return std::strtold(s.substr(0, slash).c_str(), nullptr) /
                       std::strtold(s.substr(slash + 1).c_str(), nullptr);
            };
            long double w = val(c["interval"][1].get<std::string>()) -
                            val(c["interval"][0].get<std::string>());
            CHECK(w <= 1.0e-12L);
        }
}

TEST_CASE("--help exits cleanly") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("plane --help").exit_code == 0);
}
