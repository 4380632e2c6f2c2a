#include "helmmin/verify.hpp"

#include <cmath>

namespace helmmin {

AnalyticSolution oracle_fields(Complex rho_iso, Complex kappa, double omega) {
    const Complex i(0.0, 1.0);
    auto p = [i](double x, double y) { return std::exp(2.0 * i * x - 3.0 * y); };
    const std::array<Complex, 2> gp_fac = {2.0 * i, Complex(-3.0)};
    const std::array<Complex, 2> v_fac = {(-i / omega) / rho_iso * gp_fac[0],
                                          (-i / omega) / rho_iso * gp_fac[1]};
    AnalyticSolution s;
    s.P = p;
    s.gradP = [=](double x, double y) {
        Complex val = p(x, y);
        return std::array<Complex, 2>{gp_fac[0] * val, gp_fac[1] * val};
    };
    s.v = [=](double x, double y) {
        Complex val = p(x, y);
        return std::array<Complex, 2>{v_fac[0] * val, v_fac[1] * val};
    };
    s.gradv = [=](double x, double y) {
        Complex val = p(x, y);
        return std::array<Complex, 4>{v_fac[0] * gp_fac[0] * val,
                                      v_fac[0] * gp_fac[1] * val,
                                      v_fac[1] * gp_fac[0] * val,
                                      v_fac[1] * gp_fac[1] * val};
    };
    s.div_v = [=](double x, double y) { return i * omega / kappa * p(x, y); };

    const double pi = M_PI;
    s.lifts.psi_R.value = [=](double x, double y) {
        return p(x, y).real() + std::sin(pi * x) * std::sin(pi * y);
    };
    s.lifts.psi_R.grad = [=](double x, double y) {
        Complex val = p(x, y);
        return std::array<double, 2>{
            (gp_fac[0] * val).real() + pi * std::cos(pi * x) * std::sin(pi * y),
            (gp_fac[1] * val).real() + pi * std::sin(pi * x) * std::cos(pi * y)};
    };
    s.lifts.psi_I.value = [=](double x, double y) {
        return p(x, y).imag() + 3.0 * std::sin(pi * x) * std::sin(pi * y);
    };
    s.lifts.psi_I.grad = [=](double x, double y) {
        Complex val = p(x, y);
        return std::array<double, 2>{
            (gp_fac[0] * val).imag() + 3.0 * pi * std::cos(pi * x) * std::sin(pi * y),
            (gp_fac[1] * val).imag() + 3.0 * pi * std::sin(pi * x) * std::cos(pi * y)};
    };
    return s;
}

namespace {

struct InterpSample {
    Complex value;
    Complex ddx, ddy;
};

// Bilinear interpolant of a nodal complex array at (x, y); derivatives are
// the exact piecewise derivatives of the interpolant (cell chosen by clamped
// floor, so points on cell boundaries use the cell to their upper-right).
InterpSample interp(const std::vector<Complex>& nodal, int n, double h, double x,
                    double y) {
    int cx = std::min(static_cast<int>(x / h), n - 2);
    int cy = std::min(static_cast<int>(y / h), n - 2);
    double xi = x / h - cx;
    double eta = y / h - cy;
    Complex f00 = nodal[cy * n + cx];
    Complex f10 = nodal[cy * n + cx + 1];
    Complex f01 = nodal[(cy + 1) * n + cx];
    Complex f11 = nodal[(cy + 1) * n + cx + 1];
    InterpSample s;
    s.value = f00 * (1 - xi) * (1 - eta) + f10 * xi * (1 - eta) +
              f01 * (1 - xi) * eta + f11 * xi * eta;
    s.ddx = ((f10 - f00) * (1 - eta) + (f11 - f01) * eta) / h;
    s.ddy = ((f01 - f00) * (1 - xi) + (f11 - f10) * xi) / h;
    return s;
}

}  // namespace

double vnorm_error(const FieldSolution& field, const AnalyticSolution& exact,
                   int eval_n, ErrorConvention convention) {
    const int n = field.n;
    const double h = 1.0 / (n - 1);
    std::vector<Complex> d_p, d_v1, d_v2;
    if (convention == ErrorConvention::NodalDifference) {
        d_p.resize(field.P.size());
        d_v1.resize(field.P.size());
        d_v2.resize(field.P.size());
        for (int ty = 0; ty < n; ++ty) {
            for (int jx = 0; jx < n; ++jx) {
                double x = jx * h, y = ty * h;
                int node = ty * n + jx;
                auto ve = exact.v(x, y);
                d_p[node] = field.P[node] - exact.P(x, y);
                d_v1[node] = field.v1[node] - ve[0];
                d_v2[node] = field.v2[node] - ve[1];
            }
        }
    }

    const double hh = 1.0 / (eval_n - 1);
    double acc = 0.0;
    for (int iy = 0; iy < eval_n; ++iy) {
        double wy = (iy == 0 || iy == eval_n - 1) ? 0.5 : 1.0;
        double y = iy * hh;
        for (int ix = 0; ix < eval_n; ++ix) {
            double wx = (ix == 0 || ix == eval_n - 1) ? 0.5 : 1.0;
            double x = ix * hh;
            Complex ep, epx, epy, ev1, ev2, ediv;
            if (convention == ErrorConvention::NodalDifference) {
                InterpSample sp = interp(d_p, n, h, x, y);
                InterpSample s1 = interp(d_v1, n, h, x, y);
                InterpSample s2 = interp(d_v2, n, h, x, y);
                ep = sp.value;
                epx = sp.ddx;
                epy = sp.ddy;
                ev1 = s1.value;
                ev2 = s2.value;
                ediv = s1.ddx + s2.ddy;
            } else {
                InterpSample sp = interp(field.P, n, h, x, y);
                InterpSample s1 = interp(field.v1, n, h, x, y);
                InterpSample s2 = interp(field.v2, n, h, x, y);
                auto gp = exact.gradP(x, y);
                auto ve = exact.v(x, y);
                ep = sp.value - exact.P(x, y);
                epx = sp.ddx - gp[0];
                epy = sp.ddy - gp[1];
                ev1 = s1.value - ve[0];
                ev2 = s2.value - ve[1];
                ediv = s1.ddx + s2.ddy - exact.div_v(x, y);
            }
            double density = std::norm(ep) + std::norm(epx) + std::norm(epy) +
                             std::norm(ev1) + std::norm(ev2) + std::norm(ediv);
            acc += wx * wy * density;
        }
    }
    return std::sqrt(acc * hh * hh);
}

double pressure_real_l2_error(const FieldSolution& field,
                              const AnalyticSolution& exact, int eval_n) {
    const int n = field.n;
    const double h = 1.0 / (n - 1);
    std::vector<Complex> d_p(field.P.size());
    for (int ty = 0; ty < n; ++ty) {
        for (int jx = 0; jx < n; ++jx) {
            int node = ty * n + jx;
            d_p[node] = field.P[node].real() - exact.P(jx * h, ty * h).real();
        }
    }
    const double hh = 1.0 / (eval_n - 1);
    double acc = 0.0;
    for (int iy = 0; iy < eval_n; ++iy) {
        double wy = (iy == 0 || iy == eval_n - 1) ? 0.5 : 1.0;
        for (int ix = 0; ix < eval_n; ++ix) {
            double wx = (ix == 0 || ix == eval_n - 1) ? 0.5 : 1.0;
            InterpSample sp = interp(d_p, n, h, ix * hh, iy * hh);
            acc += wx * wy * std::norm(sp.value);
        }
    }
    return std::sqrt(acc) * hh;
}

double fit_rate(const std::vector<ConvergenceRow>& rows) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (const auto& r : rows) {
        if (!r.converged || r.vnorm_err <= 0.0) continue;
        double lx = std::log(r.h), ly = std::log(r.vnorm_err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return 0.0;
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ConvergenceStudy convergence_study(const MaterialField& material,
                                   const AnalyticSolution& exact,
                                   const std::vector<int>& ns, int eval_n,
                                   const SolverOptions& opts) {
    ConvergenceStudy study;
    for (int n : ns) {
        Grid grid = build_grid(n);
        FieldSolution f = solve_dirichlet(grid, material, exact.lifts, opts);
        ConvergenceRow row;
        row.n = n;
        row.h = grid.h;
        row.converged = f.converged;
        row.vnorm_err = vnorm_error(f, exact, eval_n);
        study.rows.push_back(row);
    }
    study.fitted_rate = fit_rate(study.rows);
    return study;
}

}  // namespace helmmin
