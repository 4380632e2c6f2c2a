#include "helmmin/grid.hpp"

#include <cmath>
#include <string>

namespace helmmin {

Grid build_grid(int n, bool periodic_x) {
    if (n < 3) {
        throw std::invalid_argument("build_grid: N must be at least 3, got " +
                                    std::to_string(n));
    }
    Grid g;
    g.n = n;
    g.h = 1.0 / (n - 1);
    g.periodic_x = periodic_x;
    return g;
}

int scalar_interior_index(int t, int j, int n) {
    if (t < 2 || t > n - 1 || j < 2 || j > n - 1) {
        throw std::out_of_range("scalar_interior_index: node (" + std::to_string(t) +
                                "," + std::to_string(j) + ") is not interior for N=" +
                                std::to_string(n));
    }
    return (t - 2) * (n - 2) + j - 1;
}

int vector_index(int t, int j, int n) {
    if (t < 1 || t > n || j < 1 || j > n) {
        throw std::out_of_range("vector_index: node (" + std::to_string(t) + "," +
                                std::to_string(j) + ") out of range for N=" +
                                std::to_string(n));
    }
    return (t - 1) * n + j;
}

namespace {

// 1-D tent centered at node c (1-based): value and left-limit derivative.
std::array<double, 2> tent_1d(double s, double center, double h) {
    double d = s - center;
    if (std::abs(d) >= h) return {0.0, 0.0};
    if (d >= 0.0) return {1.0 - d / h, -1.0 / h};
    return {1.0 + d / h, 1.0 / h};
}

}  // namespace

BasisSample eval_tent(const Grid& grid, int t, int j, double x, double y) {
    double xj = (j - 1) * grid.h;
    double yt = (t - 1) * grid.h;
    auto tx = tent_1d(x, xj, grid.h);
    auto ty = tent_1d(y, yt, grid.h);
    BasisSample s;
    s.value = tx[0] * ty[0];
    s.grad = {tx[1] * ty[0], tx[0] * ty[1]};
    return s;
}

BasisSample eval_basis(const BasisId& id, const Grid& grid, double x, double y) {
    int n = grid.n;
    int t, j;
    if (id.kind == BasisKind::Scalar) {
        int k = id.flat_index - 1;
        if (k < 0 || k >= grid.interior_count()) {
            throw std::out_of_range("eval_basis: scalar index out of range");
        }
        t = k / (n - 2) + 2;
        j = k % (n - 2) + 2;
    } else {
        int k = id.flat_index - 1;
        if (k < 0 || k >= grid.node_count()) {
            throw std::out_of_range("eval_basis: vector index out of range");
        }
        t = k / n + 1;
        j = k % n + 1;
    }
    BasisSample s = eval_tent(grid, t, j, x, y);
    if (id.kind == BasisKind::VectorX) {
        s.div = s.grad[0];
    } else if (id.kind == BasisKind::VectorY) {
        s.div = s.grad[1];
    }
    return s;
}

std::vector<std::array<double, 2>> gauss_1d(int npoints) {
    // Gauss-Legendre nodes/weights on (-1,1), mapped to (0,1) with weight sum 1.
    std::vector<std::array<double, 2>> ref;
    switch (npoints) {
        case 1:
            ref = {{0.0, 2.0}};
            break;
        case 2: {
            double a = 1.0 / std::sqrt(3.0);
            ref = {{-a, 1.0}, {a, 1.0}};
            break;
        }
        case 3: {
            double a = std::sqrt(3.0 / 5.0);
            ref = {{-a, 5.0 / 9.0}, {0.0, 8.0 / 9.0}, {a, 5.0 / 9.0}};
            break;
        }
        case 4: {
            double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
            double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
            double wa = (18.0 + std::sqrt(30.0)) / 36.0;
            double wb = (18.0 - std::sqrt(30.0)) / 36.0;
            ref = {{-b, wb}, {-a, wa}, {a, wa}, {b, wb}};
            break;
        }
        case 5: {
            double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
            double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
            double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
            double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
            ref = {{-b, wb}, {-a, wa}, {0.0, 128.0 / 225.0}, {a, wa}, {b, wb}};
            break;
        }
        default:
            throw std::invalid_argument("gauss_1d: unsupported point count");
    }
    std::vector<std::array<double, 2>> out;
    out.reserve(ref.size());
    for (auto [x, w] : ref) {
        out.push_back({0.5 * (x + 1.0), 0.5 * w});
    }
    return out;
}

QuadratureRule tensor_gauss(int points_per_direction) {
    auto g = gauss_1d(points_per_direction);
    QuadratureRule rule;
    for (const auto& py : g) {
        for (const auto& px : g) {
            rule.points.push_back({px[0], py[0], px[1] * py[1]});
        }
    }
    return rule;
}

}  // namespace helmmin
