#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helmmin/config.hpp"
#include "helmmin/verify.hpp"

namespace helmmin {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_csv(const std::string& path, const FieldSolution& f) {
    std::ofstream out(path);
    out << "x,y,P_re,P_im,v1_re,v1_im,v2_re,v2_im\n";
    double h = 1.0 / (f.n - 1);
    for (int ty = 0; ty < f.n; ++ty) {
        for (int jx = 0; jx < f.n; ++jx) {
            int node = ty * f.n + jx;
            out << g17(jx * h) << ',' << g17(ty * h) << ','
                << g17(f.P[node].real()) << ',' << g17(f.P[node].imag()) << ','
                << g17(f.v1[node].real()) << ',' << g17(f.v1[node].imag()) << ','
                << g17(f.v2[node].real()) << ',' << g17(f.v2[node].imag()) << '\n';
        }
    }
}

void write_iteration_log(std::ofstream& out, const std::string& label,
                         const SolveReport& rep) {
    out << "# " << label << "\n";
    out << "iter,relres,inner_iters\n";
    for (size_t i = 1; i < rep.residual_history.size(); ++i) {
        long inner =
            i - 1 < rep.inner_history.size() ? rep.inner_history[i - 1] : 0;
        out << i << ',' << g17(rep.residual_history[i]) << ',' << inner << '\n';
    }
}

DirichletData dirichlet_data(const RunConfig& cfg) {
    if (cfg.bcase == RunConfig::BoundaryCase::Manufactured) {
        return oracle_fields(cfg.rho, cfg.kappa, cfg.omega).lifts;
    }
    DirichletData d;
    d.psi_R = BoundaryLift::constant(cfg.psi_r_const);
    d.psi_I = BoundaryLift::constant(cfg.psi_i_const);
    return d;
}

SolverOptions solver_options(const RunConfig& cfg) {
    SolverOptions opts;
    opts.tol = cfg.tol;
    opts.maxit = cfg.maxit;
    opts.precondition = cfg.precondition;
    opts.estimate_eigs = true;
    return opts;
}

int run_study(const RunConfig& cfg, const MaterialField& material) {
    std::vector<int> ns;
    for (int n = (*cfg.study)[0]; n <= (*cfg.study)[1]; n += (*cfg.study)[2]) {
        ns.push_back(n);
    }
    AnalyticSolution exact = oracle_fields(cfg.rho, cfg.kappa, cfg.omega);
    ConvergenceStudy study =
        convergence_study(material, exact, ns, cfg.eval_n, solver_options(cfg));
    std::ofstream out(cfg.out_dir + "/convergence.csv");
    out << "N,h,vnorm_error\n";
    bool ok = true;
    for (const auto& row : study.rows) {
        out << row.n << ',' << g17(row.h) << ',' << g17(row.vnorm_err) << '\n';
        ok = ok && row.converged;
    }
    if (!ok) {
        std::fprintf(stderr, "warning: study contains non-converged rows\n");
    }
    return ok ? 0 : 2;
}

}  // namespace

int run_config(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    MaterialField material = material_from_config(cfg);
    Grid grid = build_grid(cfg.n, cfg.periodic_x);

    if (cfg.study) {
        if (cfg.problem != RunConfig::Problem::Dirichlet ||
            cfg.bcase != RunConfig::BoundaryCase::Manufactured) {
            std::fprintf(stderr,
                         "study driver requires bc=dirichlet case=manufactured\n");
            return 1;
        }
        return run_study(cfg, material);
    }

    SolverOptions opts = solver_options(cfg);
    std::optional<Mode> only;
    if (cfg.mode == RunConfig::RunMode::RealPrimal) only = Mode::RealPrimal;
    if (cfg.mode == RunConfig::RunMode::ImagPrimal) only = Mode::ImagPrimal;
    bool do_real = !only || *only == Mode::RealPrimal;
    bool do_imag = !only || *only == Mode::ImagPrimal;

    FieldSolution field;
    if (cfg.problem == RunConfig::Problem::Dirichlet) {
        field = solve_dirichlet(grid, material, dirichlet_data(cfg), opts, only);
    } else {
        RobinData robin{cfg.robin_a, [g = cfg.robin_g](double, double) { return g; }};
        field = solve_robin(grid, material, robin, opts, only);
    }

    write_field_csv(cfg.out_dir + "/field.csv", field);
    {
        std::ofstream out(cfg.out_dir + "/iterations.log");
        if (do_real) write_iteration_log(out, "real-primal", field.report_real);
        if (do_imag) write_iteration_log(out, "imag-primal", field.report_imag);
    }
    {
        std::ofstream out(cfg.out_dir + "/diagnostics.txt");
        CoercivityReport coer =
            check_coercivity(material, sample_lattice(8));
        out << "coercivity: alpha=" << g17(coer.alpha) << " beta=" << g17(coer.beta)
            << " satisfied=" << (coer.satisfied ? "yes" : "no") << "\n";
        auto report_line = [&](const std::string& label, const SolveReport& rep) {
            out << label << ": iterations=" << rep.iterations
                << " converged=" << (rep.converged ? "yes" : "no")
                << " inner_total=" << rep.inner_iterations_total;
            if (rep.extremal_eigs) {
                double lo = rep.extremal_eigs->first, hi = rep.extremal_eigs->second;
                out << " ritz_min=" << g17(lo) << " ritz_max=" << g17(hi)
                    << " cond_estimate=" << g17(hi / lo);
            }
            out << "\n";
        };
        if (do_real) report_line("real-primal", field.report_real);
        if (do_imag) report_line("imag-primal", field.report_imag);
        if (cfg.precondition) {
            // Unpreconditioned operator extremes for comparison.
            BlockSystem sys = cfg.problem == RunConfig::Problem::Dirichlet
                                  ? assemble_dirichlet(grid, material,
                                                       dirichlet_data(cfg),
                                                       Mode::RealPrimal)
                                  : assemble_robin(grid, material,
                                                   RobinData{cfg.robin_a,
                                                             [g = cfg.robin_g](
                                                                 double, double) {
                                                                 return g;
                                                             }},
                                                   Mode::RealPrimal);
            EigEstimate est = extremal_eigs(sys.matrix, 60);
            out << "unpreconditioned: ritz_min=" << g17(est.lambda_min)
                << " ritz_max=" << g17(est.lambda_max)
                << " cond_estimate=" << g17(est.lambda_max / est.lambda_min)
                << "\n";
        }
        if (cfg.problem == RunConfig::Problem::Dirichlet &&
            cfg.bcase == RunConfig::BoundaryCase::Manufactured && !cfg.inclusion &&
            cfg.mode == RunConfig::RunMode::Both) {
            AnalyticSolution exact = oracle_fields(cfg.rho, cfg.kappa, cfg.omega);
            out << "vnorm_error=" << g17(vnorm_error(field, exact, cfg.eval_n))
                << "\n";
        }
        out << "status=" << (field.converged ? "ok" : "solver-failure") << "\n";
    }

    if (!field.converged) {
        std::fprintf(stderr, "status: solver failure, partial outputs written\n");
        return 2;
    }
    return 0;
}

}  // namespace helmmin
