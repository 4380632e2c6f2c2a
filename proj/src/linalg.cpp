#include "helmmin/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helmmin {

SparseSym SparseSym::from_triplets(int n, std::vector<Triplet> triplets) {
    std::stable_sort(triplets.begin(), triplets.end(),
                     [](const Triplet& a, const Triplet& b) {
                         return a.row != b.row ? a.row < b.row : a.col < b.col;
                     });
    SparseSym m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    for (size_t i = 0; i < triplets.size();) {
        size_t j = i + 1;
        double sum = triplets[i].value;
        while (j < triplets.size() && triplets[j].row == triplets[i].row &&
               triplets[j].col == triplets[i].col) {
            sum += triplets[j].value;
            ++j;
        }
        m.col.push_back(triplets[i].col);
        m.val.push_back(sum);
        ++m.row_ptr[triplets[i].row + 1];
        i = j;
    }
    for (int i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    return m;
}

void SparseSym::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p] * x[col[p]];
        y[i] = s;
    }
}

std::vector<double> SparseSym::multiply(const std::vector<double>& x) const {
    std::vector<double> y;
    multiply(x, y);
    return y;
}

namespace {

double entry_at(const SparseSym& m, int i, int j) {
    auto begin = m.col.begin() + m.row_ptr[i];
    auto end = m.col.begin() + m.row_ptr[i + 1];
    auto it = std::lower_bound(begin, end, j);
    if (it == end || *it != j) return 0.0;
    return m.val[it - m.col.begin()];
}

}  // namespace

double SparseSym::symmetry_defect() const {
    double defect = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
            defect = std::max(defect, std::abs(val[p] - entry_at(*this, col[p], i)));
        }
    }
    return defect;
}

SparseSym SparseSym::submatrix(int begin, int end) const {
    std::vector<Triplet> t;
    for (int i = begin; i < end; ++i) {
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
            if (col[p] >= begin && col[p] < end) {
                t.push_back({i - begin, col[p] - begin, val[p]});
            }
        }
    }
    return from_triplets(end - begin, std::move(t));
}

double SparseSym::diagonal_entry(int i) const { return entry_at(*this, i, i); }

int SparseSym::max_row_nnz() const {
    int m = 0;
    for (int i = 0; i < n; ++i) m = std::max(m, row_ptr[i + 1] - row_ptr[i]);
    return m;
}

DiagonalPreconditioner::DiagonalPreconditioner(const SparseSym& a) {
    inv_diag_.resize(a.n);
    for (int i = 0; i < a.n; ++i) {
        double d = a.diagonal_entry(i);
        inv_diag_[i] = d != 0.0 ? 1.0 / d : 1.0;
    }
}

void DiagonalPreconditioner::apply(const std::vector<double>& r,
                                   std::vector<double>& z) const {
    z.resize(r.size());
    for (size_t i = 0; i < r.size(); ++i) z[i] = inv_diag_[i] * r[i];
}

IcFactor ic0(const SparseSym& a) {
    IcFactor f;
    f.n = a.n;
    // Lower-triangle pattern (col <= row), columns sorted.
    f.row_ptr.assign(a.n + 1, 0);
    for (int i = 0; i < a.n; ++i) {
        for (int p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            if (a.col[p] <= i) {
                f.col.push_back(a.col[p]);
                ++f.row_ptr[i + 1];
            }
        }
    }
    for (int i = 0; i < a.n; ++i) f.row_ptr[i + 1] += f.row_ptr[i];
    f.val.assign(f.col.size(), 0.0);

    double tau = 0.0;
    for (int attempt = 0; attempt <= 10; ++attempt) {
        bool failed = false;
        std::fill(f.val.begin(), f.val.end(), 0.0);
        for (int i = 0; i < a.n && !failed; ++i) {
            for (int p = f.row_ptr[i]; p < f.row_ptr[i + 1]; ++p) {
                int k = f.col[p];
                double aik = entry_at(a, i, k);
                if (k == i) aik += tau * std::abs(aik);
                // dot of rows i and k over shared columns < k
                double dot = 0.0;
                int pi = f.row_ptr[i], pk = f.row_ptr[k];
                int ei = p, ek = f.row_ptr[k + 1] - 1;  // exclude diagonal of k
                while (pi < ei && pk < ek) {
                    if (f.col[pi] == f.col[pk]) {
                        dot += f.val[pi] * f.val[pk];
                        ++pi;
                        ++pk;
                    } else if (f.col[pi] < f.col[pk]) {
                        ++pi;
                    } else {
                        ++pk;
                    }
                }
                if (k == i) {
                    double d = aik - dot;
                    if (d <= 0.0) {
                        failed = true;
                        break;
                    }
                    f.val[p] = std::sqrt(d);
                } else {
                    double lkk = f.val[f.row_ptr[k + 1] - 1];
                    f.val[p] = (aik - dot) / lkk;
                }
            }
        }
        if (!failed) {
            f.ok = true;
            f.shift = tau;
            return f;
        }
        tau = tau == 0.0 ? 1e-8 : 2.0 * tau;
    }
    f.ok = false;
    return f;
}

void IcFactor::solve(const std::vector<double>& r, std::vector<double>& z) const {
    z = r;
    // forward: L y = r
    for (int i = 0; i < n; ++i) {
        double s = z[i];
        for (int p = row_ptr[i]; p < row_ptr[i + 1] - 1; ++p) s -= val[p] * z[col[p]];
        z[i] = s / val[row_ptr[i + 1] - 1];
    }
    // backward: L^T z = y
    for (int i = n - 1; i >= 0; --i) {
        z[i] /= val[row_ptr[i + 1] - 1];
        double zi = z[i];
        for (int p = row_ptr[i]; p < row_ptr[i + 1] - 1; ++p) z[col[p]] -= val[p] * zi;
    }
}

IcPreconditioner::IcPreconditioner(const SparseSym& a) : factor_(ic0(a)) {
    if (!factor_.ok) {
        inv_diag_.resize(a.n);
        for (int i = 0; i < a.n; ++i) {
            double d = a.diagonal_entry(i);
            inv_diag_[i] = d != 0.0 ? 1.0 / d : 1.0;
        }
    }
}

void IcPreconditioner::apply(const std::vector<double>& r,
                             std::vector<double>& z) const {
    if (factor_.ok) {
        factor_.solve(r, z);
    } else {
        z.resize(r.size());
        for (size_t i = 0; i < r.size(); ++i) z[i] = inv_diag_[i] * r[i];
    }
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

CgResult pcg_impl(const SparseSym& a, const std::vector<double>& b,
                  const Preconditioner* m, const CgOptions& opts) {
    CgResult out;
    double bnorm = norm2(b);
    if (opts.x0.empty()) {
        out.x.assign(a.n, 0.0);
    } else {
        out.x = opts.x0;
    }
    if (bnorm == 0.0 && opts.x0.empty()) {
        out.report.converged = true;
        return out;
    }
    std::vector<double> r(a.n);
    std::vector<double> z, p, ap;
    if (opts.x0.empty()) {
        r = b;
    } else {
        a.multiply(out.x, r);
        for (int i = 0; i < a.n; ++i) r[i] = b[i] - r[i];
    }
    double scale = bnorm > 0.0 ? bnorm : 1.0;
    if (norm2(r) / scale <= opts.tol) {
        out.report.converged = true;
        out.report.residual_history.push_back(norm2(r) / scale);
        return out;
    }
    if (m) {
        m->apply(r, z);
    } else {
        z = r;
    }
    p = z;
    double rz = dot(r, z);
    std::vector<double> alphas, betas;
    out.report.residual_history.push_back(norm2(r) / scale);
    long inner0 = m ? m->inner_iterations() : 0;
    for (int it = 0; it < opts.maxit; ++it) {
        a.multiply(p, ap);
        double pap = dot(p, ap);
        if (pap <= 0.0) {
            out.report.breakdown = true;
            break;
        }
        double alpha = rz / pap;
        for (int i = 0; i < a.n; ++i) out.x[i] += alpha * p[i];
        for (int i = 0; i < a.n; ++i) r[i] -= alpha * ap[i];
        out.report.iterations = it + 1;
        double relres = norm2(r) / scale;
        out.report.residual_history.push_back(relres);
        if (relres <= opts.tol) {
            out.report.converged = true;
            alphas.push_back(alpha);
            break;
        }
        long inner_before = m ? m->inner_iterations() : 0;
        if (m) {
            m->apply(r, z);
        } else {
            z = r;
        }
        out.report.inner_history.push_back((m ? m->inner_iterations() : 0) -
                                           inner_before);
        double rz_new = dot(r, z);
        double beta = rz_new / rz;
        for (int i = 0; i < a.n; ++i) p[i] = z[i] + beta * p[i];
        rz = rz_new;
        alphas.push_back(alpha);
        betas.push_back(beta);
    }
    out.report.inner_iterations_total = (m ? m->inner_iterations() : 0) - inner0;
    if (opts.estimate_eigs && !alphas.empty()) {
        out.report.extremal_eigs = ritz_extremes(alphas, betas);
    }
    return out;
}

}  // namespace

CgResult cg(const SparseSym& a, const std::vector<double>& b, const CgOptions& opts) {
    return pcg_impl(a, b, nullptr, opts);
}

CgResult pcg(const SparseSym& a, const std::vector<double>& b,
             const Preconditioner& m, const CgOptions& opts) {
    return pcg_impl(a, b, &m, opts);
}

BlockJacobiPreconditioner::BlockJacobiPreconditioner(std::vector<SparseSym> blocks,
                                                     double inner_tol,
                                                     int inner_maxit)
    : blocks_(std::move(blocks)), inner_tol_(inner_tol), inner_maxit_(inner_maxit) {
    offsets_.push_back(0);
    for (const auto& b : blocks_) {
        inner_precond_.emplace_back(b);
        offsets_.push_back(offsets_.back() + b.n);
    }
}

void BlockJacobiPreconditioner::apply(const std::vector<double>& r,
                                      std::vector<double>& z) const {
    z.assign(r.size(), 0.0);
    for (size_t k = 0; k < blocks_.size(); ++k) {
        std::vector<double> rk(r.begin() + offsets_[k], r.begin() + offsets_[k + 1]);
        CgOptions opts;
        opts.tol = inner_tol_;
        opts.maxit = inner_maxit_;
        CgResult res = pcg(blocks_[k], rk, inner_precond_[k], opts);
        inner_total_ += res.report.iterations;
        std::copy(res.x.begin(), res.x.end(), z.begin() + offsets_[k]);
    }
}

std::pair<double, double> ritz_extremes(const std::vector<double>& alphas,
                                        const std::vector<double>& betas) {
    int m = static_cast<int>(alphas.size());
    if (m == 0) throw std::invalid_argument("ritz_extremes: no CG coefficients");
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    t(0, 0) = 1.0 / alphas[0];
    for (int k = 1; k < m; ++k) {
        t(k, k) = 1.0 / alphas[k] + betas[k - 1] / alphas[k - 1];
        double off = std::sqrt(std::max(betas[k - 1], 0.0)) / alphas[k - 1];
        t(k, k - 1) = off;
        t(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

EigEstimate extremal_eigs(
    int n,
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
    int n_iter) {
    EigEstimate est;
    // Deterministic pseudo-random start vector.
    std::vector<double> v(n);
    unsigned long long s = 88172645463325252ull;
    for (int i = 0; i < n; ++i) {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        v[i] = (double(s % 2000001) / 1000000.0) - 1.0;
    }
    double nv = norm2(v);
    for (auto& x : v) x /= nv;

    std::vector<std::vector<double>> basis;  // full reorthogonalization
    std::vector<double> alpha, beta;
    std::vector<double> w;
    std::vector<double> v_prev(n, 0.0);
    double b_prev = 0.0;
    int m = std::min(n_iter, n);
    for (int k = 0; k < m; ++k) {
        basis.push_back(v);
        apply(v, w);
        double a = dot(v, w);
        alpha.push_back(a);
        for (int i = 0; i < n; ++i) w[i] -= a * v[i] + b_prev * v_prev[i];
        for (const auto& q : basis) {
            double c = dot(q, w);
            for (int i = 0; i < n; ++i) w[i] -= c * q[i];
        }
        double b = norm2(w);
        if (b < 1e-12) {
            est.breakdown = true;
            break;
        }
        beta.push_back(b);
        v_prev = v;
        for (int i = 0; i < n; ++i) v[i] = w[i] / b;
        b_prev = b;
    }
    int mm = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mm, mm);
    for (int k = 0; k < mm; ++k) {
        t(k, k) = alpha[k];
        if (k + 1 < mm) {
            t(k, k + 1) = beta[k];
            t(k + 1, k) = beta[k];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    est.lambda_min = es.eigenvalues().minCoeff();
    est.lambda_max = es.eigenvalues().maxCoeff();
    return est;
}

EigEstimate extremal_eigs(const SparseSym& a, int n_iter) {
    return extremal_eigs(
        a.n,
        [&a](const std::vector<double>& x, std::vector<double>& y) {
            a.multiply(x, y);
        },
        n_iter);
}

}  // namespace helmmin
