#pragma once

#include <array>
#include <optional>
#include <string>

#include "helmmin/materials.hpp"

namespace helmmin {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InclusionSpec {
    enum class Shape { Disc, Bar } shape = Shape::Disc;
    // disc: cx cy r;  bar: x0 y0 x1 y1 w
    double cx = 0.5, cy = 0.5, r = 0.2;
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0, w = 0.1;
    Complex rho_in{0.0, 0.0};
    Complex kappa_in{0.0, 0.0};
};

struct RunConfig {
    enum class Problem { Dirichlet, Robin };
    enum class RunMode { Both, RealPrimal, ImagPrimal };
    enum class BoundaryCase { Manufactured, Constants };

    Problem problem = Problem::Dirichlet;
    RunMode mode = RunMode::Both;
    int n = 0;  // required
    double omega = 2.0;
    Complex rho{-5.0, 5.0};
    Complex kappa{4.0, -4.0};
    std::optional<InclusionSpec> inclusion;
    BoundaryCase bcase = BoundaryCase::Manufactured;
    double psi_r_const = 0.0;  // used when bcase == Constants
    double psi_i_const = 0.0;
    Complex robin_a{-1.0, 0.333};
    Complex robin_g{0.0, 3.33};
    bool periodic_x = false;
    double tol = 1e-8;
    int maxit = 0;
    bool precondition = true;
    int eval_n = 1500;
    std::string out_dir = ".";
    std::optional<std::array<int, 3>> study;  // start, end, step
};

/// Parse "a+bi" complex literals (also pure real "4", pure imaginary ".011i").
Complex parse_complex(const std::string& text);
std::string format_complex(Complex c);

/// key=value lines, '#' comments. Unknown keys, bad literals and a missing
/// `n` are errors naming the line and key.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);

MaterialField material_from_config(const RunConfig& cfg);

/// Execute the configured driver; writes field/convergence CSVs, iteration
/// logs and diagnostics into cfg.out_dir. Returns a process exit status.
int run_config(const RunConfig& cfg);

}  // namespace helmmin
