#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "nicholson/commands.hpp"
#include "nicholson/config.hpp"
#include "nicholson/csv.hpp"
#include "nicholson/errors.hpp"

using namespace nicholson;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("nicholson_unit_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunConfig example_config(const fs::path& out) {
    std::istringstream in(R"(# example constants
delta = 1
H = 2
rho = 6
sigma = 0.15
r = 1.8
beta = 6.7093
lambda = 0.3420
epsilon = 0.33
alpha = 0.5
t0 = -1
grid.t_min = -30
grid.t_max = 20
grid.h = 0.01
)");
    auto cfg = parse_config(in);
    cfg.outputs = out;
    return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
    std::istringstream in("  # comment\n\ndelta=0.5   # trailing\n  grid.h = 0.02\nmax_iter = 7\n"
                          "check_weighted = yes\nharvest = 1.5\n");
    const auto cfg = parse_config(in);
    CHECK(cfg.params.delta == 0.5);
    CHECK(cfg.params.harvest == 1.5);
    CHECK(cfg.params.rho == 6.0);  // default kept
    CHECK(cfg.grid.h == 0.02);
    CHECK(cfg.max_iter == 7);
    CHECK(cfg.check_weighted);
    CHECK_FALSE(cfg.overrides.beta.has_value());

    RunConfig c2;
    apply_override(c2, "beta = 6.5");
    CHECK(*c2.overrides.beta == 6.5);
    apply_override(c2, "grid.t_min=-20");
    CHECK(c2.grid.t_min == -20.0);
}

TEST_CASE("config errors name the line") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            (void)parse_config(in);
            return false;
        } catch (const ConfigError& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
    };
    CHECK(fails_with("delta = 1\nnonsense\n", "line 2"));
    CHECK(fails_with("delta = 1\n\ngamma = 3\n", "line 3"));
    CHECK(fails_with("rho = six\n", "line 1"));
    CHECK(fails_with("rho = 6x\n", "line 1"));
    CHECK(fails_with("max_iter = -3\n", "line 1"));
    CHECK(fails_with("check_weighted = maybe\n", "line 1"));
    CHECK(fails_with("grid.t_max = -30\n", "t_min < t_max"));
    CHECK(fails_with("grid.h = 0.3\n", "divide"));
    CHECK(fails_with("sigma = 0\n", "> 0"));
    CHECK(fails_with("tol = 0\n", "tol"));

    RunConfig c;
    CHECK_THROWS_AS(apply_override(c, "beta"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/dir/x.cfg"), ConfigError);
}

TEST_CASE("csv formatting is exact") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-30.0) == "-30");
    CHECK(format_double(1e-300) == "1e-300");
    for (double v : {0.1, std::log(2.0), -1.0 / 3.0, 6.02e23, 5e-324}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    std::ostringstream os;
    write_csv(os, CsvTable{{"t", "value"}, {{0.0, 0.5}, {1.0, 0.25}}});
    CHECK(os.str() == "t,value\n0,1\n0.5,0.25\n");
}

TEST_CASE("csv round trip and corruption") {
    TempDir dir("csv");
    const CsvTable t{{"t", "value"}, {{-1.0, -0.5, 0.0}, {0.0, 0.1, 0.30000000000000004}}};
    write_csv(dir.path / "a.csv", t);
    const auto back = read_csv(dir.path / "a.csv");
    CHECK(back.header == t.header);
    CHECK(back.columns == t.columns);
    const auto p = profile_from_csv(back, LeftTail{}, 1.0);
    CHECK(p.grid().h == doctest::Approx(0.5));
    CHECK(p[2] == 0.30000000000000004);

    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir.path / name, std::ios::binary) << text;
        return dir.path / name;
    };
    CHECK_THROWS_AS(read_csv(write("empty.csv", "")), ConfigError);
    CHECK_THROWS_AS(read_csv(write("bad.csv", "t,value\n0,abc\n")), ConfigError);
    CHECK_THROWS_AS(read_csv(write("short.csv", "t,value\n0\n")), ConfigError);
    CHECK_THROWS_AS(read_csv(write("long.csv", "t,value\n0,1,2\n")), ConfigError);
    CHECK_THROWS_AS(read_csv(dir.path / "missing.csv"), ConfigError);
    CHECK_THROWS_AS(profile_from_csv(read_csv(write("uneven.csv", "t,value\n0,1\n0.1,1\n0.5,1\n")),
                                     LeftTail{}, 1.0),
                    ConfigError);
    CHECK_THROWS_AS(profile_from_csv(read_csv(write("one.csv", "t,value\n0,1\n")), LeftTail{}, 1.0),
                    ConfigError);
}

TEST_CASE("check command exit codes") {
    std::ostringstream out, err;
    TempDir dir("check");
    auto cfg = example_config(dir.path);
    CHECK(cmd_check(cfg, out, err) == kExitOk);
    CHECK(out.str().find("cond-2 PASS") != std::string::npos);

    cfg.params.sigma = 0.2;
    std::ostringstream out2;
    CHECK(cmd_check(cfg, out2, err) == kExitFailed);
    CHECK(out2.str().find("cond-2 FAIL") != std::string::npos);

    cfg = example_config(dir.path);
    cfg.params.rho = 2.5;  // ratio below one
    std::ostringstream out3;
    CHECK(cmd_check(cfg, out3, err) == kExitFailed);
    CHECK(out3.str().find("A1 FAIL") != std::string::npos);

    cfg = example_config(dir.path);
    cfg.overrides.epsilon = 0.9;  // above lambda
    CHECK(cmd_check(cfg, out, err) == kExitInput);
}

TEST_CASE("bounds command writes every table") {
    TempDir dir("bounds");
    std::ostringstream out, err;
    auto cfg = example_config(dir.path);
    cfg.overrides.alpha.reset();
    CHECK(cmd_bounds(cfg, out, err) == kExitOk);
    for (const char* f : {"upper.csv", "lower.csv", "residual_upper.csv", "residual_lower.csv",
                          "compat.csv"}) {
        INFO(f);
        REQUIRE(fs::exists(dir.path / f));
        const auto t = read_csv(dir.path / f);
        CHECK(t.header.front() == "t");
        CHECK(t.columns.size() == 2);
    }
    CHECK(read_csv(dir.path / "upper.csv").columns[0].size() == 5001);
    // the kink nodes are left out of the residual tables
    CHECK(read_csv(dir.path / "residual_upper.csv").columns[0].size() == 5000);
    const auto ru = read_csv(dir.path / "residual_upper.csv");
    const auto rl = read_csv(dir.path / "residual_lower.csv");
    for (double v : ru.columns[1]) CHECK(v <= 1e-9);
    for (double v : rl.columns[1]) CHECK(v >= -1e-9);

    SUBCASE("a bad lower solution fails but still writes") {
        TempDir bad("bounds_bad");
        auto c2 = example_config(bad.path);
        c2.require_hypotheses = false;
        c2.overrides.alpha = 5.0;
        CHECK(cmd_bounds(c2, out, err) == kExitFailed);
        CHECK(fs::exists(bad.path / "compat.csv"));
    }
}

TEST_CASE("iterate and verify commands") {
    TempDir dir("iterate");
    std::ostringstream out, err;
    const auto cfg = example_config(dir.path);
    REQUIRE(cmd_iterate(cfg, out, err) == kExitOk);

    const auto it = read_csv(dir.path / "iterates.csv");
    REQUIRE(it.header == std::vector<std::string>{"t", "x0", "x1", "x2", "x3"});
    for (std::size_t k = 2; k < it.columns.size(); ++k) {
        for (std::size_t i = 0; i < it.columns[k].size(); ++i) {
            CHECK(it.columns[k][i] <= it.columns[k - 1][i] + 1e-10);
        }
    }
    const std::string meta = slurp(dir.path / "run.txt");
    CHECK(meta.find("converged=true\n") != std::string::npos);
    CHECK(meta.find("gaps=") != std::string::npos);
    CHECK(meta.find("residual_sup=") != std::string::npos);

    std::ostringstream vout;
    CHECK(cmd_verify(cfg, {}, vout, err) == kExitOk);
    CHECK(vout.str().find("sup_residual=") != std::string::npos);
    CHECK(vout.str().find("cross_check_max_deviation=") != std::string::npos);

    SUBCASE("byte-identical reruns") {
        TempDir again("iterate_again");
        auto c2 = cfg;
        c2.outputs = again.path;
        REQUIRE(cmd_iterate(c2, out, err) == kExitOk);
        for (const char* f : {"iterates.csv", "final.csv", "run.txt"}) {
            INFO(f);
            CHECK(slurp(dir.path / f) == slurp(again.path / f));
        }
    }
    SUBCASE("zero steps leaves the upper solution") {
        TempDir zero("iterate_zero");
        auto c2 = cfg;
        c2.outputs = zero.path;
        c2.max_iter = 0;
        REQUIRE(cmd_iterate(c2, out, err) == kExitOk);
        const auto fin = read_csv(zero.path / "final.csv");
        const auto x0 = read_csv(zero.path / "iterates.csv").columns[1];
        CHECK(fin.columns[1] == x0);
    }
}

TEST_CASE("verify command input handling") {
    TempDir dir("verify");
    std::ostringstream out, err;
    const auto cfg = example_config(dir.path);
    CHECK(cmd_verify(cfg, {}, out, err) == kExitInput);  // no final.csv yet

    std::ofstream(dir.path / "corrupt.csv", std::ios::binary) << "t,value\n0,0.1\n0.01,garbage\n";
    VerifyOptions bad;
    bad.profile = dir.path / "corrupt.csv";
    CHECK(cmd_verify(cfg, bad, out, err) == kExitInput);

    CsvTable eq{{"t", "value"}, {{}, {}}};
    const auto g = GridSpec::make(-30.0, 20.0, 0.01);
    for (std::size_t i = 0; i < g.size(); ++i) {
        eq.columns[0].push_back(g.time(i));
        eq.columns[1].push_back(std::log(2.0));
    }
    write_csv(dir.path / "eq.csv", eq);
    VerifyOptions good;
    good.profile = dir.path / "eq.csv";
    std::ostringstream vout;
    cmd_verify(cfg, good, vout, err);
    const auto s = vout.str();
    const auto pos = s.find("sup_residual=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(s.substr(pos + 13)) <= 1e-12);
}
