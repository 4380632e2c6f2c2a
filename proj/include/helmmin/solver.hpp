#pragma once

#include "helmmin/assembly.hpp"

namespace helmmin {

struct SolverOptions {
    double tol = 1e-8;
    int maxit = 0;  // 0 -> 10 * sqrt(unknown count)
    bool precondition = true;
    double inner_tol = 1e-2;
    int inner_maxit = 50;
    bool estimate_eigs = false;
};

/// Nodal fields on the full N x N lattice, row-major with t (the y index)
/// outermost. P = P' + iP'', v = v' + iv''.
struct FieldSolution {
    int n = 0;
    bool periodic_x = false;
    std::vector<Complex> P;
    std::vector<Complex> v1;
    std::vector<Complex> v2;
    SolveReport report_real;  // real-primal solve: (P', v'')
    SolveReport report_imag;  // imag-primal solve: (P'', v')
    bool converged = false;

    /// Boundary dual pair recovered from the Robin identity, per boundary
    /// node visited: {x, y, v'.n, P''}.
    struct BoundaryDual {
        double x, y;
        double v_re_n;
        double p_im;
    };
    std::vector<BoundaryDual> robin_boundary_dual;

    int node(int jx, int ty) const { return ty * n + jx; }
};

// `only` restricts the run to a single formulation; the skipped field parts
// stay zero.
FieldSolution solve_dirichlet(const Grid& grid, const MaterialField& material,
                              const DirichletData& data, const SolverOptions& opts,
                              std::optional<Mode> only = std::nullopt);

FieldSolution solve_robin(const Grid& grid, const MaterialField& material,
                          const RobinData& data, const SolverOptions& opts,
                          std::optional<Mode> only = std::nullopt);

/// Solve one assembled block system with block-Jacobi PCG (or plain CG).
CgResult solve_block_system(const BlockSystem& sys, const SolverOptions& opts);

/// Max over interior nodes of the second-order finite-difference residual
/// |-div(rho^{-1} grad P) - (omega^2/kappa) P| of the recombined field.
double helmholtz_residual(const FieldSolution& field, const MaterialField& material,
                          const Grid& grid);

}  // namespace helmmin
