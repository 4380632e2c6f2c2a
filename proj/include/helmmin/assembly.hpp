#pragma once

#include <Eigen/Dense>

#include "helmmin/grid.hpp"
#include "helmmin/linalg.hpp"
#include "helmmin/materials.hpp"

namespace helmmin {

/// Which field pair is solved for: RealPrimal -> (P', v''),
/// ImagPrimal -> (P'', v'). ImagPrimal negates the cross blocks A4 and A6 and
/// swaps the roles of the two Dirichlet lift functions.
enum class Mode { RealPrimal, ImagPrimal };

/// Scalar boundary lift: value and gradient, evaluable on the closed square.
struct BoundaryLift {
    std::function<double(double, double)> value;
    std::function<std::array<double, 2>(double, double)> grad;

    static BoundaryLift zero();
    static BoundaryLift constant(double c);
};

struct DirichletData {
    BoundaryLift psi_R;  // Dirichlet data for P'
    BoundaryLift psi_I;  // Dirichlet data for P''
};

/// Robin condition P + a v.n = g with elimination matrices
/// M1 = [[1, -a''], [0, a']], M2 = [[a', 0], [a'', 1]].
struct RobinData {
    Complex a;
    std::function<Complex(double, double)> g;
};

struct BlockSizes {
    int n_scalar = 0;
    int n_vec = 0;
    int total() const { return n_scalar + 2 * n_vec; }
};

/// Degree-of-freedom numbering shared by assembly and solution extraction.
/// Node indices are 0-based here; -1 marks eliminated (Dirichlet boundary)
/// scalar nodes. Periodic wrap in x identifies column N-1 with column 0.
struct DofLayout {
    int n = 0;
    bool scalar_includes_boundary = false;
    bool periodic_x = false;
    BlockSizes sizes;

    int scalar_dof(int jx, int ty) const;  // -1 if eliminated
    int vector_dof(int jx, int ty) const;

    static DofLayout dirichlet(const Grid& g);
    static DofLayout robin(const Grid& g);
};

struct BlockSystem {
    SparseSym matrix;          // full assembled system (A, or A - omega B)
    std::vector<double> rhs;   // (b1, b2, b3)
    BlockSizes sizes;
    Mode mode = Mode::RealPrimal;
    DofLayout layout;
    CoercivityReport coercivity;

    SparseSym block_a1() const { return matrix.submatrix(0, sizes.n_scalar); }
    SparseSym block_a2() const {
        return matrix.submatrix(sizes.n_scalar, sizes.n_scalar + sizes.n_vec);
    }
    SparseSym block_a3() const {
        return matrix.submatrix(sizes.n_scalar + sizes.n_vec, sizes.total());
    }
};

BlockSystem assemble_dirichlet(const Grid& grid, const MaterialField& material,
                               const DirichletData& data, Mode mode);

BlockSystem assemble_robin(const Grid& grid, const MaterialField& material,
                           const RobinData& data, Mode mode);

/// Dense Galerkin matrix computed entry-by-entry with 5x5 Gauss quadrature
/// directly from the weak form, bypassing the sparse block machinery.
/// Test oracle; refuses N > 8.
Eigen::MatrixXd brute_force_matrix(const Grid& grid, const MaterialField& material,
                                   Mode mode);

Eigen::MatrixXd dense_matrix(const SparseSym& a);

}  // namespace helmmin
