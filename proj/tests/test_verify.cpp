#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helmmin/verify.hpp"

using namespace helmmin;

namespace {

const Complex kRho(-5.0, 5.0);
const Complex kKappa(4.0, -4.0);
const double kOmega = 2.0;

FieldSolution nodal_injection(const AnalyticSolution& exact, int n) {
    Grid g = build_grid(n);
    FieldSolution f;
    f.n = n;
    f.P.resize(g.node_count());
    f.v1.resize(g.node_count());
    f.v2.resize(g.node_count());
    for (int ty = 0; ty < n; ++ty) {
        for (int jx = 0; jx < n; ++jx) {
            double x = jx * g.h, y = ty * g.h;
            int node = f.node(jx, ty);
            f.P[node] = exact.P(x, y);
            auto v = exact.v(x, y);
            f.v1[node] = v[0];
            f.v2[node] = v[1];
        }
    }
    return f;
}

AnalyticSolution zero_solution() {
    AnalyticSolution s;
    s.P = [](double, double) { return Complex(0, 0); };
    s.gradP = [](double, double) { return std::array<Complex, 2>{}; };
    s.v = [](double, double) { return std::array<Complex, 2>{}; };
    s.gradv = [](double, double) { return std::array<Complex, 4>{}; };
    s.div_v = [](double, double) { return Complex(0, 0); };
    s.lifts = {BoundaryLift::zero(), BoundaryLift::zero()};
    return s;
}

}  // namespace

TEST_CASE("analytic solution point values") {
    AnalyticSolution s = oracle_fields();
    CHECK(std::abs(s.P(0, 0) - Complex(1, 0)) <= 1e-15);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const Complex i(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        double x = unif(rng), y = unif(rng);
        Complex p = s.P(x, y);
        auto gp = s.gradP(x, y);
        CHECK(std::abs(gp[0] - 2.0 * i * p) <= 1e-13);
        CHECK(std::abs(gp[1] + 3.0 * p) <= 1e-13);
        auto v = s.v(x, y);
        CHECK(std::abs(v[0] - (-i / kOmega) / kRho * 2.0 * i * p) <= 1e-13);
        CHECK(std::abs(v[1] - (-i / kOmega) / kRho * (-3.0) * p) <= 1e-13);
    }
}

TEST_CASE("lifts reduce to the trace on the boundary") {
    AnalyticSolution s = oracle_fields();
    for (double t : {0.0, 0.21, 0.5, 0.83, 1.0}) {
        for (auto [x, y] : {std::array<double, 2>{t, 0.0},
                            std::array<double, 2>{t, 1.0},
                            std::array<double, 2>{0.0, t},
                            std::array<double, 2>{1.0, t}}) {
            CHECK(s.lifts.psi_R.value(x, y) ==
                  doctest::Approx(s.P(x, y).real()).epsilon(1e-13));
            CHECK(s.lifts.psi_I.value(x, y) ==
                  doctest::Approx(s.P(x, y).imag()).epsilon(1e-13));
        }
    }
    // interior perturbation is present away from the boundary
    CHECK(std::abs(s.lifts.psi_R.value(0.5, 0.5) - s.P(0.5, 0.5).real()) > 0.5);
}

TEST_CASE("manufactured solution satisfies the equation") {
    AnalyticSolution s = oracle_fields();
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        double x = unif(rng), y = unif(rng);
        Complex p = s.P(x, y);
        // laplacian of e^{2ix-3y} is (-4+9) p
        Complex residual = -(5.0 / kRho) * p - (kOmega * kOmega / kKappa) * p;
        CHECK(std::abs(residual) <= 1e-10);
    }
}

TEST_CASE("divergence identity holds") {
    AnalyticSolution s = oracle_fields();
    const Complex i(0, 1);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double x = unif(rng), y = unif(rng);
        auto gv = s.gradv(x, y);
        Complex div = gv[0] + gv[3];
        CHECK(std::abs(div - s.div_v(x, y)) <= 1e-10);
        CHECK(std::abs(div - i * kOmega / kKappa * s.P(x, y)) <= 1e-10);
    }
}

TEST_CASE("error of the zero field against the zero solution is zero") {
    AnalyticSolution z = zero_solution();
    FieldSolution f = nodal_injection(z, 8);
    CHECK(vnorm_error(f, z, 100) == 0.0);
    CHECK(vnorm_error(f, z, 100, ErrorConvention::ExactField) == 0.0);
}

TEST_CASE("nodal-difference error of exact nodal data vanishes") {
    AnalyticSolution s = oracle_fields();
    FieldSolution f = nodal_injection(s, 12);
    CHECK(vnorm_error(f, s, 200) <= 1e-13);
}

TEST_CASE("exact-field error of nodal data is the interpolation floor") {
    AnalyticSolution s = oracle_fields();
    double e20 = vnorm_error(nodal_injection(s, 20), s, 400,
                             ErrorConvention::ExactField);
    double e40 = vnorm_error(nodal_injection(s, 40), s, 400,
                             ErrorConvention::ExactField);
    CHECK(e20 > 0.0);
    // first-order decay of the interpolant's derivative error
    CHECK(e20 / e40 == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("real-pressure error metric") {
    AnalyticSolution s = oracle_fields();

    SUBCASE("vanishes on exact nodal data") {
        FieldSolution f = nodal_injection(s, 12);
        CHECK(pressure_real_l2_error(f, s, 200) <= 1e-13);
    }

    SUBCASE("recovers the amplitude of a known perturbation") {
        // Adding c sin(pi x) sin(pi y) to the real part of the nodal data
        // gives an error of |c| * ||sin sin||_L2 = |c|/2 up to the
        // interpolation error of the perturbation itself.
        int n = 40;
        double c = 0.37;
        FieldSolution f = nodal_injection(s, n);
        double h = 1.0 / (n - 1);
        for (int ty = 0; ty < n; ++ty) {
            for (int jx = 0; jx < n; ++jx) {
                f.P[f.node(jx, ty)] +=
                    c * std::sin(M_PI * jx * h) * std::sin(M_PI * ty * h);
            }
        }
        CHECK(pressure_real_l2_error(f, s, 400) ==
              doctest::Approx(c / 2).epsilon(0.01));
    }

    SUBCASE("purely imaginary perturbations are invisible") {
        int n = 15;
        FieldSolution f = nodal_injection(s, n);
        for (auto& p : f.P) p += Complex(0.0, 0.5);
        CHECK(pressure_real_l2_error(f, s, 200) <= 1e-13);
    }

    SUBCASE("bounded by the full V-norm error") {
        MaterialField m = make_constant_material(kRho, kKappa, kOmega);
        FieldSolution f = solve_dirichlet(build_grid(12), m, s.lifts, {});
        double pl2 = pressure_real_l2_error(f, s, 200);
        CHECK(pl2 > 0.0);
        CHECK(pl2 <= vnorm_error(f, s, 200));
    }
}

TEST_CASE("triangle inequality on nodal fields") {
    AnalyticSolution z = zero_solution();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int n = 7;
    auto random_field = [&]() {
        FieldSolution f = nodal_injection(z, n);
        for (auto& c : f.P) c = Complex(unif(rng), unif(rng));
        for (auto& c : f.v1) c = Complex(unif(rng), unif(rng));
        for (auto& c : f.v2) c = Complex(unif(rng), unif(rng));
        return f;
    };
    for (int trial = 0; trial < 5; ++trial) {
        FieldSolution a = random_field(), b = random_field(), sum = a;
        for (size_t i = 0; i < sum.P.size(); ++i) {
            sum.P[i] += b.P[i];
            sum.v1[i] += b.v1[i];
            sum.v2[i] += b.v2[i];
        }
        double na = vnorm_error(a, z, 120), nb = vnorm_error(b, z, 120);
        double ns = vnorm_error(sum, z, 120);
        CHECK(ns <= na + nb + 1e-12);
    }
}

TEST_CASE("rate fit recovers a quadratic decay") {
    std::vector<ConvergenceRow> rows;
    for (int n : {30, 40, 50, 60}) {
        double h = 1.0 / (n - 1);
        rows.push_back({n, h, 3.0 * h * h, true});
    }
    CHECK(fit_rate(rows) == doctest::Approx(2.0).epsilon(1e-10));

    // scaling all errors by a constant leaves the slope unchanged
    for (auto& r : rows) r.vnorm_err *= 7.0;
    CHECK(fit_rate(rows) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("rate fit skips non-converged rows") {
    std::vector<ConvergenceRow> rows;
    for (int n : {30, 40, 50}) {
        double h = 1.0 / (n - 1);
        rows.push_back({n, h, h * h, true});
    }
    rows.push_back({60, 1.0 / 59, 1e6, false});  // junk row, flagged
    CHECK(fit_rate(rows) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("convergence study is deterministic") {
    MaterialField m = make_constant_material(kRho, kKappa, kOmega);
    AnalyticSolution s = oracle_fields();
    SolverOptions opts;
    ConvergenceStudy study = convergence_study(m, s, {9, 9, 13}, 100, opts);
    REQUIRE(study.rows.size() == 3);
    CHECK(study.rows[0].vnorm_err == study.rows[1].vnorm_err);
    CHECK(study.rows[2].vnorm_err < study.rows[0].vnorm_err);
    for (const auto& r : study.rows) CHECK(r.converged);
}
