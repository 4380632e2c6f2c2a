#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace helmmin {

struct Triplet {
    int row, col;
    double value;
};

/// Symmetric sparse matrix in CSR form; both triangles are stored.
struct SparseSym {
    int n = 0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> col;
    std::vector<double> val;

    // Duplicates are summed in insertion order (deterministic accumulation).
    static SparseSym from_triplets(int n, std::vector<Triplet> triplets);

    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
    std::vector<double> multiply(const std::vector<double>& x) const;

    /// max |A_ij - A_ji| over the stored pattern.
    double symmetry_defect() const;

    /// Principal submatrix on index range [begin, end).
    SparseSym submatrix(int begin, int end) const;

    double diagonal_entry(int i) const;
    int max_row_nnz() const;
};

struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;  // relative 2-norm per iteration
    bool converged = false;
    bool breakdown = false;  // p'Ap <= 0 encountered
    long inner_iterations_total = 0;
    std::vector<long> inner_history;  // inner iterations per outer iteration
    std::optional<std::pair<double, double>> extremal_eigs;
};

class Preconditioner {
  public:
    virtual ~Preconditioner() = default;
    // z = M^{-1} r
    virtual void apply(const std::vector<double>& r, std::vector<double>& z) const = 0;
    virtual long inner_iterations() const { return 0; }
};

class IdentityPreconditioner final : public Preconditioner {
  public:
    void apply(const std::vector<double>& r, std::vector<double>& z) const override {
        z = r;
    }
};

class DiagonalPreconditioner final : public Preconditioner {
  public:
    explicit DiagonalPreconditioner(const SparseSym& a);
    void apply(const std::vector<double>& r, std::vector<double>& z) const override;

  private:
    std::vector<double> inv_diag_;
};

/// Zero-fill incomplete Cholesky factor (lower triangular, CSR). On negative
/// pivots the factorization is retried with a diagonal shift tau, doubling
/// from 1e-8; after 10 shifts `ok` is false and callers should fall back to
/// diagonal preconditioning.
struct IcFactor {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;  // row-wise lower triangle incl. diagonal
    double shift = 0.0;
    bool ok = false;

    // Solve L L^T z = r.
    void solve(const std::vector<double>& r, std::vector<double>& z) const;
};

IcFactor ic0(const SparseSym& a);

class IcPreconditioner final : public Preconditioner {
  public:
    explicit IcPreconditioner(const SparseSym& a);
    void apply(const std::vector<double>& r, std::vector<double>& z) const override;
    bool used_fallback() const { return !factor_.ok; }

  private:
    IcFactor factor_;
    std::vector<double> inv_diag_;  // fallback
};

struct CgResult {
    std::vector<double> x;
    SolveReport report;
};

struct CgOptions {
    double tol = 1e-8;
    int maxit = 1000;
    bool estimate_eigs = false;     // Ritz extremes from the CG coefficients
    std::vector<double> x0{};       // empty -> zero initial guess
};

CgResult cg(const SparseSym& a, const std::vector<double>& b, const CgOptions& opts);
CgResult pcg(const SparseSym& a, const std::vector<double>& b,
             const Preconditioner& m, const CgOptions& opts);

/// Inner solver bundle for one diagonal block: IC(0)-preconditioned PCG.
class BlockJacobiPreconditioner final : public Preconditioner {
  public:
    BlockJacobiPreconditioner(std::vector<SparseSym> blocks, double inner_tol = 1e-2,
                              int inner_maxit = 50);
    void apply(const std::vector<double>& r, std::vector<double>& z) const override;
    long inner_iterations() const override { return inner_total_; }

  private:
    std::vector<SparseSym> blocks_;
    std::vector<IcPreconditioner> inner_precond_;
    std::vector<int> offsets_;
    double inner_tol_;
    int inner_maxit_;
    mutable long inner_total_ = 0;
};

/// Lanczos extremal Ritz values of a symmetric operator.
struct EigEstimate {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    bool breakdown = false;
};

EigEstimate extremal_eigs(
    int n, const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
    int n_iter);

EigEstimate extremal_eigs(const SparseSym& a, int n_iter);

/// Extremal eigenvalues of the CG/PCG Lanczos tridiagonal built from the step
/// lengths alpha_k and direction coefficients beta_k.
std::pair<double, double> ritz_extremes(const std::vector<double>& alphas,
                                        const std::vector<double>& betas);

}  // namespace helmmin
