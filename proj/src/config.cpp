#include "helmmin/config.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <vector>

namespace helmmin {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
}

// Position of the sign splitting real and imaginary parts, or npos.
size_t split_pos(const std::string& s) {
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            return i;
        }
    }
    return std::string::npos;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    try {
        if (s.back() != 'i') {
            return Complex(parse_real(s), 0.0);
        }
        std::string body = s.substr(0, s.size() - 1);
        size_t p = split_pos(body);
        if (p == std::string::npos) {
            // pure imaginary: "i", "-i", "3.33i"
            if (body.empty() || body == "+") return Complex(0.0, 1.0);
            if (body == "-") return Complex(0.0, -1.0);
            return Complex(0.0, parse_real(body));
        }
        double re = parse_real(body.substr(0, p));
        std::string im_s = body.substr(p);
        if (im_s == "+") return Complex(re, 1.0);
        if (im_s == "-") return Complex(re, -1.0);
        return Complex(re, parse_real(im_s));
    } catch (const std::exception&) {
        throw std::invalid_argument("unparsable complex literal '" + text + "'");
    }
}

std::string format_complex(Complex c) {
    char buf[80];
    if (c.imag() == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.17g", c.real());
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", c.real(), c.imag());
    return buf;
}

namespace {

struct Kv {
    int line;
    std::string key, value;
};

[[noreturn]] void fail(int line, const std::string& key, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ", key '" + key +
                      "': " + what);
}

bool parse_bool(const Kv& kv) {
    const std::string& v = kv.value;
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    fail(kv.line, kv.key, "expected a boolean");
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool have_n = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<Kv> kvs;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value");
        }
        kvs.push_back({lineno, strip(line.substr(0, eq)), strip(line.substr(eq + 1))});
    }

    for (const Kv& kv : kvs) {
        try {
            if (kv.key == "n") {
                cfg.n = std::stoi(kv.value);
                if (cfg.n < 3) fail(kv.line, kv.key, "invalid grid: n must be >= 3");
                have_n = true;
            } else if (kv.key == "omega") {
                cfg.omega = parse_real(kv.value);
            } else if (kv.key == "rho") {
                cfg.rho = parse_complex(kv.value);
            } else if (kv.key == "kappa") {
                cfg.kappa = parse_complex(kv.value);
            } else if (kv.key == "bc") {
                if (kv.value == "dirichlet") {
                    cfg.problem = RunConfig::Problem::Dirichlet;
                } else if (kv.value == "robin") {
                    cfg.problem = RunConfig::Problem::Robin;
                } else {
                    fail(kv.line, kv.key, "expected dirichlet or robin");
                }
            } else if (kv.key == "mode") {
                if (kv.value == "both") {
                    cfg.mode = RunConfig::RunMode::Both;
                } else if (kv.value == "real-primal") {
                    cfg.mode = RunConfig::RunMode::RealPrimal;
                } else if (kv.value == "imag-primal") {
                    cfg.mode = RunConfig::RunMode::ImagPrimal;
                } else {
                    fail(kv.line, kv.key, "expected both, real-primal or imag-primal");
                }
            } else if (kv.key == "case") {
                if (kv.value == "manufactured") {
                    cfg.bcase = RunConfig::BoundaryCase::Manufactured;
                } else if (kv.value == "constants") {
                    cfg.bcase = RunConfig::BoundaryCase::Constants;
                } else {
                    fail(kv.line, kv.key, "expected manufactured or constants");
                }
            } else if (kv.key == "psi_r") {
                cfg.psi_r_const = parse_real(kv.value);
            } else if (kv.key == "psi_i") {
                cfg.psi_i_const = parse_real(kv.value);
            } else if (kv.key == "robin_a") {
                cfg.robin_a = parse_complex(kv.value);
            } else if (kv.key == "robin_g") {
                cfg.robin_g = parse_complex(kv.value);
            } else if (kv.key == "inclusion") {
                auto toks = split_ws(kv.value);
                InclusionSpec inc = cfg.inclusion.value_or(InclusionSpec{});
                if (!toks.empty() && toks[0] == "disc" && toks.size() == 4) {
                    inc.shape = InclusionSpec::Shape::Disc;
                    inc.cx = parse_real(toks[1]);
                    inc.cy = parse_real(toks[2]);
                    inc.r = parse_real(toks[3]);
                } else if (!toks.empty() && toks[0] == "bar" && toks.size() == 6) {
                    inc.shape = InclusionSpec::Shape::Bar;
                    inc.x0 = parse_real(toks[1]);
                    inc.y0 = parse_real(toks[2]);
                    inc.x1 = parse_real(toks[3]);
                    inc.y1 = parse_real(toks[4]);
                    inc.w = parse_real(toks[5]);
                } else {
                    fail(kv.line, kv.key,
                         "expected 'disc cx cy r' or 'bar x0 y0 x1 y1 w'");
                }
                cfg.inclusion = inc;
            } else if (kv.key == "rho_inside") {
                InclusionSpec inc = cfg.inclusion.value_or(InclusionSpec{});
                inc.rho_in = parse_complex(kv.value);
                cfg.inclusion = inc;
            } else if (kv.key == "kappa_inside") {
                InclusionSpec inc = cfg.inclusion.value_or(InclusionSpec{});
                inc.kappa_in = parse_complex(kv.value);
                cfg.inclusion = inc;
            } else if (kv.key == "periodic_x") {
                cfg.periodic_x = parse_bool(kv);
            } else if (kv.key == "tol") {
                cfg.tol = parse_real(kv.value);
                if (cfg.tol <= 0.0) fail(kv.line, kv.key, "tol must be positive");
            } else if (kv.key == "maxit") {
                cfg.maxit = std::stoi(kv.value);
            } else if (kv.key == "precond") {
                cfg.precondition = parse_bool(kv);
            } else if (kv.key == "eval_n") {
                cfg.eval_n = std::stoi(kv.value);
            } else if (kv.key == "out") {
                cfg.out_dir = kv.value;
            } else if (kv.key == "study") {
                auto toks = split_ws(kv.value);
                std::string spec = toks.empty() ? "" : toks[0];
                int a = 0, b = 0, c = 0;
                if (std::sscanf(spec.c_str(), "%d:%d:%d", &a, &b, &c) != 3 ||
                    a < 3 || b < a || c <= 0) {
                    fail(kv.line, kv.key, "expected start:end:step");
                }
                cfg.study = {a, b, c};
            } else {
                fail(kv.line, kv.key, "unknown key");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            fail(kv.line, kv.key, e.what());
        }
    }
    if (!have_n && !cfg.study) {
        throw ConfigError("config: missing required key 'n'");
    }
    if (!have_n && cfg.study) cfg.n = (*cfg.study)[0];
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "n=" << cfg.n << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.omega);
    out << "omega=" << buf << "\n";
    out << "rho=" << format_complex(cfg.rho) << "\n";
    out << "kappa=" << format_complex(cfg.kappa) << "\n";
    out << "bc="
        << (cfg.problem == RunConfig::Problem::Dirichlet ? "dirichlet" : "robin")
        << "\n";
    out << "mode="
        << (cfg.mode == RunConfig::RunMode::Both
                ? "both"
                : cfg.mode == RunConfig::RunMode::RealPrimal ? "real-primal"
                                                             : "imag-primal")
        << "\n";
    out << "case="
        << (cfg.bcase == RunConfig::BoundaryCase::Manufactured ? "manufactured"
                                                               : "constants")
        << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.psi_r_const);
    out << "psi_r=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.psi_i_const);
    out << "psi_i=" << buf << "\n";
    out << "robin_a=" << format_complex(cfg.robin_a) << "\n";
    out << "robin_g=" << format_complex(cfg.robin_g) << "\n";
    if (cfg.inclusion) {
        const InclusionSpec& inc = *cfg.inclusion;
        if (inc.shape == InclusionSpec::Shape::Disc) {
            std::snprintf(buf, sizeof(buf), "inclusion=disc %.17g %.17g %.17g",
                          inc.cx, inc.cy, inc.r);
            out << buf << "\n";
        } else {
            std::snprintf(buf, sizeof(buf),
                          "inclusion=bar %.17g %.17g %.17g %.17g %.17g", inc.x0,
                          inc.y0, inc.x1, inc.y1, inc.w);
            out << buf << "\n";
        }
        out << "rho_inside=" << format_complex(inc.rho_in) << "\n";
        out << "kappa_inside=" << format_complex(inc.kappa_in) << "\n";
    }
    out << "periodic_x=" << (cfg.periodic_x ? "1" : "0") << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", cfg.tol);
    out << "tol=" << buf << "\n";
    out << "maxit=" << cfg.maxit << "\n";
    out << "precond=" << (cfg.precondition ? "on" : "off") << "\n";
    out << "eval_n=" << cfg.eval_n << "\n";
    out << "out=" << cfg.out_dir << "\n";
    if (cfg.study) {
        out << "study=" << (*cfg.study)[0] << ":" << (*cfg.study)[1] << ":"
            << (*cfg.study)[2] << "\n";
    }
    return out.str();
}

MaterialField material_from_config(const RunConfig& cfg) {
    if (!cfg.inclusion) {
        return make_constant_material(cfg.rho, cfg.kappa, cfg.omega);
    }
    const InclusionSpec& inc = *cfg.inclusion;
    if (inc.shape == InclusionSpec::Shape::Disc) {
        return make_disc_inclusion(cfg.rho, cfg.kappa, inc.rho_in, inc.kappa_in,
                                   cfg.omega, inc.cx, inc.cy, inc.r);
    }
    return make_bar_inclusion(cfg.rho, cfg.kappa, inc.rho_in, inc.kappa_in,
                              cfg.omega, inc.x0, inc.y0, inc.x1, inc.y1, inc.w);
}

}  // namespace helmmin
