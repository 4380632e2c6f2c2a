#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helmmin/config.hpp"

using namespace helmmin;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("complex literals") {
    CHECK(parse_complex("4") == Complex(4, 0));
    CHECK(parse_complex("-5+5i") == Complex(-5, 5));
    CHECK(parse_complex("4-4i") == Complex(4, -4));
    CHECK(parse_complex("3.33i") == Complex(0, 3.33));
    CHECK(parse_complex(".011i") == Complex(0, 0.011));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("i") == Complex(0, 1));
    CHECK(parse_complex("1e-2+1i") == Complex(0.01, 1));
    CHECK(parse_complex("2.5E+3-1e-1i") == Complex(2500, -0.1));
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+2j"), std::invalid_argument);
}

TEST_CASE("complex literals round-trip through formatting") {
    for (Complex c : {Complex(-5, 5), Complex(0, 3.33), Complex(1.25, 0),
                      Complex(-0.011, -7e3)}) {
        CHECK(parse_complex(format_complex(c)) == c);
    }
}

TEST_CASE("reference run config") {
    RunConfig cfg = parse_config(
        "n=30\nomega=2\nrho=-5+5i\nkappa=4-4i\nbc=dirichlet\ncase=manufactured");
    CHECK(cfg.n == 30);
    CHECK(cfg.omega == 2.0);
    CHECK(cfg.rho == Complex(-5, 5));
    CHECK(cfg.kappa == Complex(4, -4));
    CHECK(cfg.problem == RunConfig::Problem::Dirichlet);
    CHECK(cfg.bcase == RunConfig::BoundaryCase::Manufactured);
    // defaults
    CHECK(cfg.tol == 1e-8);
    CHECK(cfg.precondition);
    CHECK(cfg.eval_n == 1500);
}

TEST_CASE("missing n is an error") {
    CHECK_THROWS_AS(parse_config(""), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("omega=2"),
                         doctest::Contains("missing required key 'n'"),
                         ConfigError);
}

TEST_CASE("invalid grid size is an error") {
    CHECK_THROWS_WITH_AS(parse_config("n=2"), doctest::Contains("invalid grid"),
                         ConfigError);
}

TEST_CASE("errors name the line and key") {
    CHECK_THROWS_WITH_AS(parse_config("n=8\nbogus_key=1"),
                         doctest::Contains("line 2, key 'bogus_key'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("n=8\n\nrho=what"),
                         doctest::Contains("line 3, key 'rho'"), ConfigError);
    CHECK_THROWS_AS(parse_config("just a line"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    RunConfig cfg = parse_config("# a comment\n\nn=12  # trailing\nbc=robin\n");
    CHECK(cfg.n == 12);
    CHECK(cfg.problem == RunConfig::Problem::Robin);
}

TEST_CASE("inclusion geometry keys") {
    RunConfig cfg = parse_config(
        "n=10\ninclusion=disc 0.5 0.5 0.2\nrho_inside=2+.011i\n"
        "kappa_inside=1-.011i\nrho=1+.011i\nkappa=1-.011i\nperiodic_x=1");
    REQUIRE(cfg.inclusion.has_value());
    CHECK(cfg.inclusion->shape == InclusionSpec::Shape::Disc);
    CHECK(cfg.inclusion->r == 0.2);
    CHECK(cfg.inclusion->rho_in == Complex(2, 0.011));
    CHECK(cfg.periodic_x);

    MaterialField m = material_from_config(cfg);
    CHECK(m.rho(0.5, 0.5).a11 == Complex(2, 0.011));
    CHECK(m.rho(0.05, 0.05).a11 == Complex(1, 0.011));

    RunConfig bar = parse_config("n=10\ninclusion=bar 0.1 0.1 0.9 0.9 0.1");
    CHECK(bar.inclusion->shape == InclusionSpec::Shape::Bar);
    CHECK_THROWS_AS(parse_config("n=10\ninclusion=disc 0.5"), ConfigError);
}

TEST_CASE("study sweep parsing") {
    RunConfig cfg = parse_config("study=30:100:10");
    REQUIRE(cfg.study.has_value());
    CHECK((*cfg.study)[0] == 30);
    CHECK((*cfg.study)[1] == 100);
    CHECK((*cfg.study)[2] == 10);
    CHECK(cfg.n == 30);  // defaulted to the sweep start
    CHECK_THROWS_AS(parse_config("n=8\nstudy=10:5:1"), ConfigError);
    CHECK_THROWS_AS(parse_config("n=8\nstudy=abc"), ConfigError);
}

TEST_CASE("parse, serialize, parse round-trips") {
    RunConfig cfg = parse_config(
        "n=14\nomega=2\nrho=-5+5i\nkappa=4-4i\nbc=robin\nmode=real-primal\n"
        "robin_a=-1+.333i\nrobin_g=3.33i\ntol=1e-6\nprecond=off\neval_n=300\n"
        "periodic_x=yes\nout=some/dir");
    std::string text = serialize_config(cfg);
    RunConfig back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.problem == RunConfig::Problem::Robin);
    CHECK(back.mode == RunConfig::RunMode::RealPrimal);
    CHECK(back.robin_a == Complex(-1, 0.333));
    CHECK(back.tol == 1e-6);
    CHECK(!back.precondition);
    CHECK(back.periodic_x);
    CHECK(back.out_dir == "some/dir");
}

TEST_CASE("run driver writes the expected files deterministically") {
    namespace fs = std::filesystem;
    fs::path dir1 = fs::temp_directory_path() / "helmmin_cli_run1";
    fs::path dir2 = fs::temp_directory_path() / "helmmin_cli_run2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    std::string base =
        "n=9\nomega=2\nrho=-5+5i\nkappa=4-4i\nbc=dirichlet\ncase=manufactured\n"
        "eval_n=100\n";
    RunConfig c1 = parse_config(base + "out=" + dir1.string());
    RunConfig c2 = parse_config(base + "out=" + dir2.string());
    CHECK(run_config(c1) == 0);
    CHECK(run_config(c2) == 0);

    for (const char* name : {"field.csv", "iterations.log", "diagnostics.txt"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(dir1 / name));
        CHECK(slurp(dir1 / name) == slurp(dir2 / name));
    }
    std::string field = slurp(dir1 / "field.csv");
    CHECK(field.rfind("x,y,P_re,P_im,v1_re,v1_im,v2_re,v2_im\n", 0) == 0);
    // one header plus one row per node
    CHECK(std::count(field.begin(), field.end(), '\n') == 1 + 9 * 9);
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("study driver writes the convergence table") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "helmmin_cli_study";
    fs::remove_all(dir);
    RunConfig cfg = parse_config(
        "study=8:12:2\nomega=2\nrho=-5+5i\nkappa=4-4i\nbc=dirichlet\n"
        "case=manufactured\neval_n=100\nout=" +
        dir.string());
    CHECK(run_config(cfg) == 0);
    std::string csv = slurp(dir / "convergence.csv");
    CHECK(csv.rfind("N,h,vnorm_error\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3);
    fs::remove_all(dir);
}
