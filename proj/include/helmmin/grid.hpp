#pragma once

#include <array>
#include <stdexcept>
#include <vector>

namespace helmmin {

/// Structured N x N node lattice on the unit square, spacing h = 1/(N-1).
/// Immutable after construction; safe to share across threads.
struct Grid {
    int n = 0;              // nodes per side
    double h = 0.0;         // grid spacing
    bool periodic_x = false;

    int node_count() const { return n * n; }
    int interior_count() const { return (n - 2) * (n - 2); }
    int cell_count() const { return (n - 1) * (n - 1); }

    // 0-based node index -> coordinate
    double coord(int i) const { return i * h; }
};

Grid build_grid(int n, bool periodic_x = false);

// Flat index maps, 1-based in and out (t = row, j = column).
// Scalar unknowns live on interior nodes only: k = (t-2)(N-2) + j - 1.
int scalar_interior_index(int t, int j, int n);
// Vector unknowns live on all nodes: k = (t-1)N + j.
int vector_index(int t, int j, int n);

enum class BasisKind { Scalar, VectorX, VectorY };

struct BasisId {
    BasisKind kind;
    int flat_index;  // 1-based, per the index maps above
};

/// Value/gradient sample of a basis function at a point.
/// For vector kinds, `value` is the nonzero component and `div` its divergence;
/// for the scalar kind, `grad` holds the full gradient.
struct BasisSample {
    double value = 0.0;
    std::array<double, 2> grad{0.0, 0.0};
    double div = 0.0;
};

// Tent-product evaluation for node (t, j), 1-based. Zero outside the support
// box; at kinks the derivative is the limit from the left.
BasisSample eval_tent(const Grid& grid, int t, int j, double x, double y);
BasisSample eval_basis(const BasisId& id, const Grid& grid, double x, double y);

struct QuadraturePoint {
    double xi, eta, weight;
};

/// Tensor Gauss rule on the reference cell (0,1)^2; weights sum to 1.
struct QuadratureRule {
    std::vector<QuadraturePoint> points;
};

QuadratureRule tensor_gauss(int points_per_direction);

// 1-D Gauss on (0,1); weights sum to 1.
std::vector<std::array<double, 2>> gauss_1d(int npoints);  // {x, w}

}  // namespace helmmin
