#include "helmmin/materials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace helmmin {

namespace {

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    double det() const { return a11 * a22 - a12 * a21; }
    Mat2 inverse() const {
        double d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2 operator+(const Mat2& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
};

Mat2 real_part(const Mat2c& m) {
    return {m.a11.real(), m.a12.real(), m.a21.real(), m.a22.real()};
}

Mat2 imag_part(const Mat2c& m) {
    return {m.a11.imag(), m.a12.imag(), m.a21.imag(), m.a22.imag()};
}

}  // namespace

Mat2c Mat2c::inverse() const {
    Complex d = a11 * a22 - a12 * a21;
    if (std::abs(d) == 0.0) {
        throw std::runtime_error("Mat2c::inverse: singular matrix");
    }
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

DegenerateMaterialError::DegenerateMaterialError(const std::string& what, double x,
                                                double y)
    : std::runtime_error(what + " at point (" + std::to_string(x) + ", " +
                         std::to_string(y) + ")"),
      x(x),
      y(y) {}

MaterialField make_constant_material(Complex rho_iso, Complex kappa, double omega) {
    return make_constant_material(Mat2c::iso(rho_iso), kappa, omega);
}

MaterialField make_constant_material(Mat2c rho, Complex kappa, double omega) {
    MaterialField m;
    m.rho = [rho](double, double) { return rho; };
    m.kappa = [kappa](double, double) { return kappa; };
    m.omega = omega;
    return m;
}

MaterialField make_disc_inclusion(Complex rho_out, Complex kappa_out, Complex rho_in,
                                  Complex kappa_in, double omega, double cx,
                                  double cy, double r) {
    auto inside = [cx, cy, r](double x, double y) {
        double dx = x - cx, dy = y - cy;
        return dx * dx + dy * dy <= r * r;
    };
    MaterialField m;
    m.rho = [=](double x, double y) {
        return Mat2c::iso(inside(x, y) ? rho_in : rho_out);
    };
    m.kappa = [=](double x, double y) { return inside(x, y) ? kappa_in : kappa_out; };
    m.omega = omega;
    return m;
}

MaterialField make_bar_inclusion(Complex rho_out, Complex kappa_out, Complex rho_in,
                                 Complex kappa_in, double omega, double x0,
                                 double y0, double x1, double y1, double w) {
    auto inside = [=](double x, double y) {
        double ex = x1 - x0, ey = y1 - y0;
        double len2 = ex * ex + ey * ey;
        double t = len2 > 0.0 ? ((x - x0) * ex + (y - y0) * ey) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        double dx = x - (x0 + t * ex), dy = y - (y0 + t * ey);
        return dx * dx + dy * dy <= 0.25 * w * w;
    };
    MaterialField m;
    m.rho = [=](double x, double y) {
        return Mat2c::iso(inside(x, y) ? rho_in : rho_out);
    };
    m.kappa = [=](double x, double y) { return inside(x, y) ? kappa_in : kappa_out; };
    m.omega = omega;
    return m;
}

DissipationTensors dissipation_at(const MaterialField& m, double x, double y) {
    Mat2c rho = m.rho(x, y);
    Complex det = rho.a11 * rho.a22 - rho.a12 * rho.a21;
    if (std::abs(det) == 0.0) {
        throw DegenerateMaterialError("dissipation_at: singular rho", x, y);
    }
    Mat2c r = -rho.inverse();
    Mat2 rp = real_part(r);
    Mat2 rpp = imag_part(r);
    if (std::abs(rpp.det()) < 1e-300) {
        throw DegenerateMaterialError("dissipation_at: singular rho''-derived r''", x,
                                      y);
    }
    Mat2 rpp_inv = rpp.inverse();
    Mat2 tl = rpp + rp * rpp_inv * rp;
    Mat2 tr = rp * rpp_inv;
    Mat2 bl = rpp_inv * rp;
    Mat2 br = rpp_inv;

    DissipationTensors d;
    d.R[0] = {tl.a11, tl.a12, tr.a11, tr.a12};
    d.R[1] = {tl.a21, tl.a22, tr.a21, tr.a22};
    d.R[2] = {bl.a11, bl.a12, br.a11, br.a12};
    d.R[3] = {bl.a21, bl.a22, br.a21, br.a22};

    Complex kappa = m.kappa(x, y);
    if (std::abs(kappa) == 0.0) {
        throw DegenerateMaterialError("dissipation_at: zero kappa", x, y);
    }
    Complex k = 1.0 / kappa;
    double kp = k.real(), kpp = k.imag();
    if (kpp == 0.0) {
        throw DegenerateMaterialError("dissipation_at: lossless kappa (k''=0)", x, y);
    }
    d.K[0] = {kpp + kp * kp / kpp, kp / kpp};
    d.K[1] = {kp / kpp, 1.0 / kpp};
    return d;
}

CoercivityReport check_coercivity(const MaterialField& m,
                                  const std::vector<std::array<double, 2>>& points) {
    if (points.empty()) {
        throw std::invalid_argument("check_coercivity: empty sample set");
    }
    double alpha = std::numeric_limits<double>::infinity();
    double max_kpp = -std::numeric_limits<double>::infinity();
    for (auto [x, y] : points) {
        Mat2 rpp = imag_part(m.rho(x, y));
        double off = 0.5 * (rpp.a12 + rpp.a21);
        double mean = 0.5 * (rpp.a11 + rpp.a22);
        double rad = std::sqrt(0.25 * (rpp.a11 - rpp.a22) * (rpp.a11 - rpp.a22) +
                               off * off);
        alpha = std::min(alpha, mean - rad);
        max_kpp = std::max(max_kpp, m.kappa(x, y).imag());
    }
    CoercivityReport rep;
    rep.alpha = alpha;
    rep.beta = -max_kpp;
    rep.satisfied = rep.alpha > 0.0 && rep.beta > 0.0;
    return rep;
}

std::vector<std::array<double, 2>> sample_lattice(int per_side) {
    std::vector<std::array<double, 2>> pts;
    for (int i = 1; i <= per_side; ++i) {
        for (int j = 1; j <= per_side; ++j) {
            pts.push_back({j / (per_side + 1.0), i / (per_side + 1.0)});
        }
    }
    return pts;
}

std::pair<double, double> L_eigenvalues_diagonal(Complex c) {
    double cp = c.real(), cpp = c.imag();
    if (cpp <= 0.0) {
        throw std::invalid_argument("L_eigenvalues_diagonal: non-dissipative entry "
                                    "(c'' <= 0)");
    }
    if (std::abs(cp) < 1e-12 * std::abs(c)) {
        double lo = std::min(cpp, 1.0 / cpp);
        double hi = std::max(cpp, 1.0 / cpp);
        return {lo, hi};
    }
    double a = 1.0 / cp + cpp * cpp / cp + cp;
    double b = 2.0 * cpp / cp;
    double disc = std::sqrt(std::max(a * a - b * b, 0.0));
    double l1 = (-a + disc) / (-b);
    double l2 = (-a - disc) / (-b);
    return {std::min(l1, l2), std::max(l1, l2)};
}

MaterialField rescale(const MaterialField& m, double r, double theta) {
    if (r <= 0.0) {
        throw std::invalid_argument("rescale: r must be positive");
    }
    Complex factor = std::polar(1.0 / r, -theta);
    MaterialField out;
    out.rho = [rho = m.rho, factor](double x, double y) {
        return rho(x, y) * factor;
    };
    out.kappa = [kappa = m.kappa, factor](double x, double y) {
        return kappa(x, y) * factor;
    };
    out.omega = m.omega;
    return out;
}

namespace {

// Diagonal Z entries at a point: the two diagonal entries of r = -rho^{-1}
// and M = omega^2 / kappa.
std::array<Complex, 3> z_entries(const MaterialField& m, double x, double y) {
    Mat2c r = -m.rho(x, y).inverse();
    Complex M = m.omega * m.omega / m.kappa(x, y);
    return {r.a11, r.a22, M};
}

}  // namespace

double rescaled_spread(const MaterialField& m,
                       const std::vector<std::array<double, 2>>& points, double r,
                       double theta) {
    Complex factor = std::polar(r, theta);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (auto [x, y] : points) {
        for (Complex c : z_entries(m, x, y)) {
            Complex cs = c * factor;
            if (cs.imag() <= 0.0) return std::numeric_limits<double>::infinity();
            auto [lmin, lmax] = L_eigenvalues_diagonal(cs);
            lo = std::min(lo, lmin);
            hi = std::max(hi, lmax);
        }
    }
    return hi / lo;
}

std::pair<double, double> suggest_rescale(
    const MaterialField& m, const std::vector<std::array<double, 2>>& points) {
    double best_spread = std::numeric_limits<double>::infinity();
    double best_r = 1.0, best_theta = 0.0;
    for (int kt = 0; kt < 360; ++kt) {
        double theta = kt * (2.0 * M_PI / 360.0);
        for (int kr = 0; kr <= 40; ++kr) {
            double r = std::pow(10.0, (kr - 20) / 10.0);
            double spread = rescaled_spread(m, points, r, theta);
            if (spread < best_spread) {
                best_spread = spread;
                best_r = r;
                best_theta = theta;
            }
        }
    }
    return {best_r, best_theta};
}

}  // namespace helmmin
