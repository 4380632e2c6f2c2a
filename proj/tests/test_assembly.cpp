#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "helmmin/assembly.hpp"

using namespace helmmin;

namespace {

MaterialField unit_material() {
    // rho = iI, kappa = -i: both dissipation tensors are the identity
    return make_constant_material(Complex(0, 1), Complex(0, -1), 1.0);
}

MaterialField reference_material() {
    return make_constant_material(Complex(-5, 5), Complex(4, -4), 2.0);
}

MaterialField varying_material() {
    return make_disc_inclusion(Complex(-5, 5), Complex(4, -4), Complex(-2, 3),
                               Complex(2, -1), 2.0, 0.4, 0.6, 0.25);
}

DirichletData zero_data() { return {BoundaryLift::zero(), BoundaryLift::zero()}; }

}  // namespace

TEST_CASE("dof layout, dirichlet") {
    Grid g = build_grid(5);
    DofLayout l = DofLayout::dirichlet(g);
    CHECK(l.sizes.n_scalar == 9);
    CHECK(l.sizes.n_vec == 25);
    CHECK(l.sizes.total() == 59);
    CHECK(l.scalar_dof(0, 2) == -1);
    CHECK(l.scalar_dof(1, 1) == 0);
    CHECK(l.scalar_dof(3, 3) == 8);
    CHECK(l.vector_dof(0, 0) == 0);
    CHECK(l.vector_dof(4, 4) == 24);
}

TEST_CASE("dof layout, robin with periodic wrap") {
    Grid g = build_grid(6, true);
    DofLayout l = DofLayout::robin(g);
    CHECK(l.sizes.n_scalar == 30);  // 6 rows x 5 distinct columns
    CHECK(l.sizes.n_vec == 30);
    for (int ty = 0; ty < 6; ++ty) {
        CHECK(l.vector_dof(5, ty) == l.vector_dof(0, ty));
        CHECK(l.scalar_dof(5, ty) == l.scalar_dof(0, ty));
    }
}

TEST_CASE("interior diagonal entries with identity tensors") {
    // With R = I4, K = I2 and omega = 1 the scalar diagonal entry is
    // int |grad psi|^2 + int psi^2 = 8/3 + 4h^2/9, and the vector diagonal
    // entry is omega^2 int psi^2 + int (dpsi/dx)^2 = 4h^2/9 + 4/3.
    for (int n : {5, 8}) {
        Grid g = build_grid(n);
        double h = g.h;
        BlockSystem sys =
            assemble_dirichlet(g, unit_material(), zero_data(), Mode::RealPrimal);

        int sd = sys.layout.scalar_dof(2, 2);
        CHECK(sys.matrix.diagonal_entry(sd) ==
              doctest::Approx(8.0 / 3.0 + 4.0 * h * h / 9.0).epsilon(1e-12));

        int vd = sys.sizes.n_scalar + sys.layout.vector_dof(2, 2);
        CHECK(sys.matrix.diagonal_entry(vd) ==
              doctest::Approx(4.0 * h * h / 9.0 + 4.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("zero Dirichlet data gives a zero right-hand side") {
    Grid g = build_grid(6);
    for (Mode mode : {Mode::RealPrimal, Mode::ImagPrimal}) {
        BlockSystem sys =
            assemble_dirichlet(g, reference_material(), zero_data(), mode);
        for (double v : sys.rhs) CHECK(v == 0.0);
    }
}

TEST_CASE("assembled matrix is symmetric") {
    Grid g = build_grid(7);
    BlockSystem sys =
        assemble_dirichlet(g, varying_material(), zero_data(), Mode::RealPrimal);
    CHECK(sys.matrix.symmetry_defect() <= 1e-12);
}

TEST_CASE("row sparsity stays within the nine-point block stencil") {
    Grid g = build_grid(10);
    BlockSystem sys =
        assemble_dirichlet(g, reference_material(), zero_data(), Mode::RealPrimal);
    CHECK(sys.matrix.max_row_nnz() <= 27);
}

// Two-phase material with the interface on a mesh line of the given grid, so
// the coefficient is constant on every cell and any quadrature rule integrates
// the weak form exactly.
MaterialField aligned_two_phase(const Grid& g) {
    double split = g.h * ((g.n - 1) / 2);
    MaterialField m;
    m.rho = [split](double x, double) {
        return Mat2c::iso(x < split ? Complex(-5, 5) : Complex(-2, 3));
    };
    m.kappa = [split](double, double y) {
        return y < split ? Complex(4, -4) : Complex(2, -1);
    };
    m.omega = 2.0;
    return m;
}

TEST_CASE("assembled matrix matches the dense oracle") {
    for (int n : {4, 5}) {
        Grid g = build_grid(n);
        for (const MaterialField& m : {reference_material(), aligned_two_phase(g)}) {
            for (Mode mode : {Mode::RealPrimal, Mode::ImagPrimal}) {
                BlockSystem sys = assemble_dirichlet(g, m, zero_data(), mode);
                Eigen::MatrixXd got = dense_matrix(sys.matrix);
                Eigen::MatrixXd want = brute_force_matrix(g, m, mode);
                CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-10);
            }
        }
    }
}

// For a coefficient jump that crosses cell interiors the two quadrature rules
// sample different points, so agreement is only approximate.
TEST_CASE("oracle stays close for a non-aligned varying material") {
    Grid g = build_grid(6);
    BlockSystem sys =
        assemble_dirichlet(g, varying_material(), zero_data(), Mode::RealPrimal);
    Eigen::MatrixXd got = dense_matrix(sys.matrix);
    Eigen::MatrixXd want = brute_force_matrix(g, varying_material(), Mode::RealPrimal);
    double rel = (got - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff();
    CHECK(rel < 0.1);
}

TEST_CASE("oracle refuses large grids") {
    CHECK_THROWS_AS(brute_force_matrix(build_grid(9), unit_material(),
                                       Mode::RealPrimal),
                    std::invalid_argument);
}

TEST_CASE("formulation flip negates exactly the two cross blocks") {
    Grid g = build_grid(5);
    MaterialField m = reference_material();
    BlockSystem re = assemble_dirichlet(g, m, zero_data(), Mode::RealPrimal);
    BlockSystem im = assemble_dirichlet(g, m, zero_data(), Mode::ImagPrimal);
    Eigen::MatrixXd a = dense_matrix(re.matrix);
    Eigen::MatrixXd b = dense_matrix(im.matrix);
    int ns = re.sizes.n_scalar, nv = re.sizes.n_vec;

    auto block = [&](const Eigen::MatrixXd& full, int bi, int bj) {
        std::array<int, 3> off{0, ns, ns + nv};
        std::array<int, 3> len{ns, nv, nv};
        return Eigen::MatrixXd(full.block(off[bi], off[bj], len[bi], len[bj]));
    };

    // diagonal blocks and the vector-vector coupling are unchanged
    CHECK((block(a, 0, 0) - block(b, 0, 0)).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((block(a, 1, 1) - block(b, 1, 1)).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((block(a, 2, 2) - block(b, 2, 2)).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((block(a, 1, 2) - block(b, 1, 2)).cwiseAbs().maxCoeff() <= 1e-13);
    // scalar-vector couplings change sign
    CHECK((block(a, 0, 1) + block(b, 0, 1)).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((block(a, 0, 2) + block(b, 0, 2)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("right-hand side is linear in the boundary data") {
    Grid g = build_grid(6);
    auto make_data = [](double scale) {
        DirichletData d;
        d.psi_R.value = [scale](double x, double y) {
            return scale * (std::sin(x) + y);
        };
        d.psi_R.grad = [scale](double x, double) {
            return std::array<double, 2>{scale * std::cos(x), scale};
        };
        d.psi_I.value = [scale](double x, double y) { return scale * x * y; };
        d.psi_I.grad = [scale](double x, double y) {
            return std::array<double, 2>{scale * y, scale * x};
        };
        return d;
    };
    BlockSystem one = assemble_dirichlet(g, reference_material(), make_data(1.0),
                                         Mode::RealPrimal);
    BlockSystem two = assemble_dirichlet(g, reference_material(), make_data(2.0),
                                         Mode::RealPrimal);
    for (size_t i = 0; i < one.rhs.size(); ++i) {
        CHECK(std::abs(two.rhs[i] - 2.0 * one.rhs[i]) <= 1e-12);
    }
}

TEST_CASE("dirichlet matrix is positive definite for coercive materials") {
    Grid g = build_grid(8);
    BlockSystem sys =
        assemble_dirichlet(g, reference_material(), zero_data(), Mode::RealPrimal);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_matrix(sys.matrix));
    CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("robin rejects a purely imaginary impedance") {
    Grid g = build_grid(5);
    RobinData r{Complex(0, 0.5), [](double, double) { return Complex(1, 0); }};
    CHECK_THROWS_AS(assemble_robin(g, reference_material(), r, Mode::RealPrimal),
                    std::invalid_argument);
}

TEST_CASE("robin with zero g has a zero right-hand side") {
    Grid g = build_grid(5);
    RobinData r{Complex(-1, 0.333), [](double, double) { return Complex(0, 0); }};
    BlockSystem sys = assemble_robin(g, reference_material(), r, Mode::RealPrimal);
    for (double v : sys.rhs) CHECK(v == 0.0);
}

TEST_CASE("robin system is symmetric and positive definite for a' < 0") {
    Grid g = build_grid(6);
    RobinData r{Complex(-1, 0.333), [](double, double) { return Complex(0, 3.33); }};
    for (Mode mode : {Mode::RealPrimal, Mode::ImagPrimal}) {
        BlockSystem sys = assemble_robin(g, reference_material(), r, mode);
        CHECK(sys.matrix.symmetry_defect() <= 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_matrix(sys.matrix));
        CHECK(es.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("robin rhs scales linearly in g") {
    Grid g = build_grid(5);
    RobinData r1{Complex(-1, 0.333),
                 [](double x, double) { return Complex(0.5 * x, 3.33); }};
    RobinData r3{Complex(-1, 0.333),
                 [](double x, double) { return Complex(1.5 * x, 9.99); }};
    BlockSystem one = assemble_robin(g, reference_material(), r1, Mode::RealPrimal);
    BlockSystem three = assemble_robin(g, reference_material(), r3, Mode::RealPrimal);
    for (size_t i = 0; i < one.rhs.size(); ++i) {
        CHECK(std::abs(three.rhs[i] - 3.0 * one.rhs[i]) <= 1e-12);
    }
}

TEST_CASE("robin right-hand side reaches only boundary unknowns") {
    Grid g = build_grid(6);
    RobinData r{Complex(-1, 0.333), [](double, double) { return Complex(0, 3.33); }};
    BlockSystem sys = assemble_robin(g, reference_material(), r, Mode::RealPrimal);
    // interior scalar dofs never touch the surface integrals
    for (int ty = 2; ty < 4; ++ty) {
        for (int jx = 2; jx < 4; ++jx) {
            CHECK(sys.rhs[sys.layout.scalar_dof(jx, ty)] == 0.0);
        }
    }
}

TEST_CASE("periodic robin assembly stays symmetric") {
    Grid g = build_grid(6, true);
    MaterialField m = make_disc_inclusion(Complex(-5, 5), Complex(4, -4),
                                          Complex(-2, 3), Complex(2, -1), 1.0, 0.5,
                                          0.5, 0.2);
    RobinData r{Complex(-1, 0.333), [](double, double) { return Complex(0, 3.33); }};
    BlockSystem sys = assemble_robin(g, m, r, Mode::RealPrimal);
    CHECK(sys.matrix.symmetry_defect() <= 1e-12);
    CHECK(sys.sizes.n_scalar == 30);
}

TEST_CASE("assembly is bit-reproducible") {
    Grid g = build_grid(7);
    BlockSystem a =
        assemble_dirichlet(g, varying_material(), zero_data(), Mode::RealPrimal);
    BlockSystem b =
        assemble_dirichlet(g, varying_material(), zero_data(), Mode::RealPrimal);
    REQUIRE(a.matrix.val.size() == b.matrix.val.size());
    for (size_t i = 0; i < a.matrix.val.size(); ++i) {
        CHECK(a.matrix.val[i] == b.matrix.val[i]);
    }
}
