#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "helmmin/config.hpp"

// Flags mirror config keys; a flag given on the command line overrides the
// value from --config. Overrides are applied by appending key=value lines to
// the config text so they go through the same validation.
int main(int argc, char** argv) {
    CLI::App app{"Finite element solver for the complex Helmholtz equation"};

    std::string config_path, n_s, omega_s, tol_s, bc_s, mode_s, out_s, study_s,
        eval_n_s;
    bool no_precond = false;

    app.add_option("--config", config_path, "config file (key=value lines)")
        ->check(CLI::ExistingFile);
    app.add_option("--n", n_s, "grid nodes per side (>= 3)");
    app.add_option("--omega", omega_s, "frequency");
    app.add_option("--tol", tol_s, "outer solver relative tolerance");
    app.add_option("--bc", bc_s, "boundary condition: dirichlet or robin");
    app.add_option("--mode", mode_s, "both, real-primal or imag-primal");
    app.add_option("--out", out_s, "output directory");
    app.add_option("--study", study_s, "convergence sweep start:end:step");
    app.add_option("--eval-n", eval_n_s, "error evaluation grid size");
    app.add_flag("--no-precond", no_precond, "plain CG instead of block-Jacobi PCG");

    CLI11_PARSE(app, argc, argv);

    std::ostringstream text;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::fprintf(stderr, "cannot read config file '%s'\n",
                         config_path.c_str());
            return 1;
        }
        text << in.rdbuf();
        text << "\n";
    }
    auto append = [&](const char* key, const std::string& value) {
        if (!value.empty()) text << key << "=" << value << "\n";
    };
    append("n", n_s);
    append("omega", omega_s);
    append("tol", tol_s);
    append("bc", bc_s);
    append("mode", mode_s);
    append("out", out_s);
    append("study", study_s);
    append("eval_n", eval_n_s);
    if (no_precond) text << "precond=off\n";

    try {
        helmmin::RunConfig cfg = helmmin::parse_config(text.str());
        int rc = helmmin::run_config(cfg);
        if (rc == 0) std::printf("status: ok\n");
        return rc;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
