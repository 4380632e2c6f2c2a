#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace helmmin {

using Complex = std::complex<double>;

/// Complex symmetric 2x2 matrix (row-major).
struct Mat2c {
    Complex a11{}, a12{}, a21{}, a22{};

    static Mat2c iso(Complex c) { return {c, Complex{0.0}, Complex{0.0}, c}; }
    Mat2c inverse() const;
    Mat2c operator*(Complex s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Mat2c operator-() const { return {-a11, -a12, -a21, -a22}; }
};

struct DegenerateMaterialError : std::runtime_error {
    DegenerateMaterialError(const std::string& what, double x, double y);
    double x, y;
};

/// Spatially varying complex density rho (2x2) and bulk modulus kappa
/// (scalar), with frequency omega. Evaluation must be deterministic.
struct MaterialField {
    std::function<Mat2c(double, double)> rho;
    std::function<Complex(double, double)> kappa;
    double omega = 0.0;
};

MaterialField make_constant_material(Complex rho_iso, Complex kappa, double omega);
MaterialField make_constant_material(Mat2c rho, Complex kappa, double omega);

/// Disc inclusion: `inside` values within radius r of (cx, cy), `outside`
/// elsewhere.
MaterialField make_disc_inclusion(Complex rho_out, Complex kappa_out,
                                  Complex rho_in, Complex kappa_in, double omega,
                                  double cx, double cy, double r);

/// Bar inclusion: `inside` values within distance w/2 of the segment
/// (x0,y0)-(x1,y1).
MaterialField make_bar_inclusion(Complex rho_out, Complex kappa_out,
                                 Complex rho_in, Complex kappa_in, double omega,
                                 double x0, double y0, double x1, double y1,
                                 double w);

/// Real symmetric dissipation tensors built from r = -rho^{-1}, k = 1/kappa:
///   R = [[r'' + r'(r'')^{-1}r', r'(r'')^{-1}], [(r'')^{-1}r', (r'')^{-1}]]
///   K = [[k'' + (k')^2/k'', k'/k''], [k'/k'', 1/k'']]
/// R acts on (grad P', -omega v''), K on (omega P', -div v'').
struct DissipationTensors {
    std::array<std::array<double, 4>, 4> R{};
    std::array<std::array<double, 2>, 2> K{};
};

DissipationTensors dissipation_at(const MaterialField& m, double x, double y);

struct CoercivityReport {
    double alpha = 0.0;  // lower bound on eigenvalues of rho'' over samples
    double beta = 0.0;   // kappa'' < -beta over samples
    bool satisfied = false;
};

CoercivityReport check_coercivity(const MaterialField& m,
                                  const std::vector<std::array<double, 2>>& points);

// Uniform interior sample lattice for coercivity / rescale scans.
std::vector<std::array<double, 2>> sample_lattice(int per_side);

/// Eigenvalues of the 2x2 L-block generated by a diagonal Z entry c.
/// Requires c'' > 0. For c' = 0 the eigenvalues are {c'', 1/c''}.
std::pair<double, double> L_eigenvalues_diagonal(Complex c);

/// Multiply the constitutive matrix Z by r e^{i theta}, realized by replacing
/// rho with e^{-i theta} rho / r and kappa with e^{-i theta} kappa / r.
MaterialField rescale(const MaterialField& m, double r, double theta);

/// Grid search over (r, theta) minimizing the eigenvalue spread of L on the
/// sampled Z entries. 360 theta samples, 41 log-spaced r in [1e-2, 1e2].
std::pair<double, double> suggest_rescale(
    const MaterialField& m, const std::vector<std::array<double, 2>>& points);

/// Eigenvalue spread (max/min over sampled entries) used by suggest_rescale;
/// +inf if any rescaled entry is non-dissipative.
double rescaled_spread(const MaterialField& m,
                       const std::vector<std::array<double, 2>>& points, double r,
                       double theta);

}  // namespace helmmin
