#include "helmmin/solver.hpp"

#include <cmath>

namespace helmmin {

CgResult solve_block_system(const BlockSystem& sys, const SolverOptions& opts) {
    CgOptions copts;
    copts.tol = opts.tol;
    copts.maxit = opts.maxit > 0
                      ? opts.maxit
                      : std::max(100, static_cast<int>(
                                          10.0 * std::sqrt(double(sys.sizes.total())) + 1));
    copts.estimate_eigs = opts.estimate_eigs;
    if (!opts.precondition) {
        return cg(sys.matrix, sys.rhs, copts);
    }
    BlockJacobiPreconditioner m({sys.block_a1(), sys.block_a2(), sys.block_a3()},
                                opts.inner_tol, opts.inner_maxit);
    return pcg(sys.matrix, sys.rhs, m, copts);
}

namespace {

// Nodal scalar field from a solve: lift sample plus interior coefficient.
std::vector<double> extract_scalar(const Grid& grid, const DofLayout& layout,
                                   const std::vector<double>& x,
                                   const BoundaryLift* lift) {
    std::vector<double> out(grid.node_count(), 0.0);
    for (int ty = 0; ty < grid.n; ++ty) {
        for (int jx = 0; jx < grid.n; ++jx) {
            double v = lift ? lift->value(jx * grid.h, ty * grid.h) : 0.0;
            int sd = layout.scalar_dof(jx, ty);
            if (sd >= 0) v += x[sd];
            out[ty * grid.n + jx] = v;
        }
    }
    return out;
}

std::vector<double> extract_vector(const Grid& grid, const DofLayout& layout,
                                   const std::vector<double>& x, int offset) {
    std::vector<double> out(grid.node_count(), 0.0);
    for (int ty = 0; ty < grid.n; ++ty) {
        for (int jx = 0; jx < grid.n; ++jx) {
            out[ty * grid.n + jx] = x[offset + layout.vector_dof(jx, ty)];
        }
    }
    return out;
}

}  // namespace

FieldSolution solve_dirichlet(const Grid& grid, const MaterialField& material,
                              const DirichletData& data, const SolverOptions& opts,
                              std::optional<Mode> only) {
    const bool do_real = !only || *only == Mode::RealPrimal;
    const bool do_imag = !only || *only == Mode::ImagPrimal;
    int nn = grid.node_count();

    FieldSolution f;
    f.n = grid.n;
    f.periodic_x = grid.periodic_x;
    f.converged = true;

    std::vector<double> p_re(nn, 0.0), p_im(nn, 0.0);
    std::vector<double> v1_re(nn, 0.0), v1_im(nn, 0.0);
    std::vector<double> v2_re(nn, 0.0), v2_im(nn, 0.0);

    if (do_real) {
        BlockSystem sys = assemble_dirichlet(grid, material, data, Mode::RealPrimal);
        CgResult res = solve_block_system(sys, opts);
        f.report_real = res.report;
        f.converged = f.converged && res.report.converged;
        p_re = extract_scalar(grid, sys.layout, res.x, &data.psi_R);
        v1_im = extract_vector(grid, sys.layout, res.x, sys.sizes.n_scalar);
        v2_im = extract_vector(grid, sys.layout, res.x,
                               sys.sizes.n_scalar + sys.sizes.n_vec);
    }
    if (do_imag) {
        BlockSystem sys = assemble_dirichlet(grid, material, data, Mode::ImagPrimal);
        CgResult res = solve_block_system(sys, opts);
        f.report_imag = res.report;
        f.converged = f.converged && res.report.converged;
        p_im = extract_scalar(grid, sys.layout, res.x, &data.psi_I);
        v1_re = extract_vector(grid, sys.layout, res.x, sys.sizes.n_scalar);
        v2_re = extract_vector(grid, sys.layout, res.x,
                               sys.sizes.n_scalar + sys.sizes.n_vec);
    }
    f.P.resize(nn);
    f.v1.resize(nn);
    f.v2.resize(nn);
    for (int i = 0; i < nn; ++i) {
        f.P[i] = Complex(p_re[i], p_im[i]);
        f.v1[i] = Complex(v1_re[i], v1_im[i]);
        f.v2[i] = Complex(v2_re[i], v2_im[i]);
    }
    return f;
}

FieldSolution solve_robin(const Grid& grid, const MaterialField& material,
                          const RobinData& data, const SolverOptions& opts,
                          std::optional<Mode> only) {
    const bool do_real = !only || *only == Mode::RealPrimal;
    const bool do_imag = !only || *only == Mode::ImagPrimal;
    int nn = grid.node_count();

    FieldSolution f;
    f.n = grid.n;
    f.periodic_x = grid.periodic_x;
    f.converged = true;

    std::vector<double> p_re(nn, 0.0), p_im(nn, 0.0);
    std::vector<double> v1_re(nn, 0.0), v1_im(nn, 0.0);
    std::vector<double> v2_re(nn, 0.0), v2_im(nn, 0.0);

    if (do_real) {
        BlockSystem sys = assemble_robin(grid, material, data, Mode::RealPrimal);
        CgResult res = solve_block_system(sys, opts);
        f.report_real = res.report;
        f.converged = f.converged && res.report.converged;
        p_re = extract_scalar(grid, sys.layout, res.x, nullptr);
        v1_im = extract_vector(grid, sys.layout, res.x, sys.sizes.n_scalar);
        v2_im = extract_vector(grid, sys.layout, res.x,
                               sys.sizes.n_scalar + sys.sizes.n_vec);
    }
    if (do_imag) {
        BlockSystem sys = assemble_robin(grid, material, data, Mode::ImagPrimal);
        CgResult res = solve_block_system(sys, opts);
        f.report_imag = res.report;
        f.converged = f.converged && res.report.converged;
        p_im = extract_scalar(grid, sys.layout, res.x, nullptr);
        v1_re = extract_vector(grid, sys.layout, res.x, sys.sizes.n_scalar);
        v2_re = extract_vector(grid, sys.layout, res.x,
                               sys.sizes.n_scalar + sys.sizes.n_vec);
    }
    f.P.resize(nn);
    f.v1.resize(nn);
    f.v2.resize(nn);
    for (int i = 0; i < nn; ++i) {
        f.P[i] = Complex(p_re[i], p_im[i]);
        f.v1[i] = Complex(v1_re[i], v1_im[i]);
        f.v2[i] = Complex(v2_re[i], v2_im[i]);
    }

    // Boundary dual pair (v'.n, P'') from the Robin identity
    //   (v'.n, P'')^T = M2^{-1} (g', g'')^T - M2^{-1} M1 (P', v''.n)^T.
    // Needs the real-primal fields, so it is skipped for an imag-only run.
    if (!do_real) return f;
    double ap = data.a.real(), app = data.a.imag();
    auto recover = [&](int jx, int ty, double nx, double ny) {
        double x = jx * grid.h, y = ty * grid.h;
        int node = ty * grid.n + jx;
        double pp = p_re[node];
        double vppn = v1_im[node] * nx + v2_im[node] * ny;
        Complex g = data.g(x, y);
        // M2^{-1} g
        double r0 = g.real() / ap;
        double r1 = (-app * g.real() + ap * g.imag()) / ap;
        // M2^{-1} M1 (P', v''.n)
        double k0 = (pp - app * vppn) / ap;
        double k1 = (-app * pp + std::norm(data.a) * vppn) / ap;
        f.robin_boundary_dual.push_back({x, y, r0 - k0, r1 - k1});
    };
    int jmax = grid.periodic_x ? grid.n - 1 : grid.n;
    for (int jx = 0; jx < jmax; ++jx) {
        recover(jx, 0, 0.0, -1.0);
        recover(jx, grid.n - 1, 0.0, 1.0);
    }
    if (!grid.periodic_x) {
        // skip corners: the normal is ambiguous there
        for (int ty = 1; ty < grid.n - 1; ++ty) {
            recover(0, ty, -1.0, 0.0);
            recover(grid.n - 1, ty, 1.0, 0.0);
        }
    }
    return f;
}

double helmholtz_residual(const FieldSolution& field, const MaterialField& material,
                          const Grid& grid) {
    const int n = grid.n;
    const double h = grid.h;
    const double w2 = material.omega * material.omega;
    auto inv_rho = [&](double x, double y) { return material.rho(x, y).inverse(); };
    double worst = 0.0;
    for (int ty = 1; ty < n - 1; ++ty) {
        for (int jx = 1; jx < n - 1; ++jx) {
            double x = jx * h, y = ty * h;
            Complex cxp = inv_rho(x + 0.5 * h, y).a11;
            Complex cxm = inv_rho(x - 0.5 * h, y).a11;
            Complex cyp = inv_rho(x, y + 0.5 * h).a22;
            Complex cym = inv_rho(x, y - 0.5 * h).a22;
            int node = ty * n + jx;
            Complex p = field.P[node];
            Complex flux =
                (cxp * (field.P[node + 1] - p) - cxm * (p - field.P[node - 1]) +
                 cyp * (field.P[node + n] - p) - cym * (p - field.P[node - n])) /
                (h * h);
            Complex res = -flux - w2 / material.kappa(x, y) * p;
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

}  // namespace helmmin
