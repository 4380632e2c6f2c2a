#include "helmmin/assembly.hpp"

#include <cmath>

namespace helmmin {

BoundaryLift BoundaryLift::zero() { return constant(0.0); }

BoundaryLift BoundaryLift::constant(double c) {
    BoundaryLift l;
    l.value = [c](double, double) { return c; };
    l.grad = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
    return l;
}

int DofLayout::scalar_dof(int jx, int ty) const {
    if (!scalar_includes_boundary) {
        if (jx < 1 || jx > n - 2 || ty < 1 || ty > n - 2) return -1;
        return (ty - 1) * (n - 2) + (jx - 1);
    }
    return vector_dof(jx, ty);
}

int DofLayout::vector_dof(int jx, int ty) const {
    if (periodic_x && jx == n - 1) jx = 0;
    int ncols = periodic_x ? n - 1 : n;
    return ty * ncols + jx;
}

DofLayout DofLayout::dirichlet(const Grid& g) {
    DofLayout l;
    l.n = g.n;
    l.scalar_includes_boundary = false;
    l.periodic_x = g.periodic_x;
    int ncols = g.periodic_x ? g.n - 1 : g.n;
    l.sizes.n_scalar = (g.n - 2) * (g.n - 2);
    l.sizes.n_vec = g.n * ncols;
    return l;
}

DofLayout DofLayout::robin(const Grid& g) {
    DofLayout l;
    l.n = g.n;
    l.scalar_includes_boundary = true;
    l.periodic_x = g.periodic_x;
    int ncols = g.periodic_x ? g.n - 1 : g.n;
    l.sizes.n_scalar = g.n * ncols;
    l.sizes.n_vec = g.n * ncols;
    return l;
}

namespace {

enum class Field { S, V1, V2 };

// One local unknown (or lift) sampled at a quadrature point.
struct Entity {
    Field field;
    int dof;        // global dof, -1 for lifts / eliminated nodes
    double value;   // shape value
    double gx, gy;  // shape gradient
};

// Volume integrand of the weak form at one point: test . (R,K) . trial.
// The mode enters through the sign of the vector slot (-omega v'' becomes
// +omega v') and of the scalar K slot (omega P' becomes -omega P'').
struct PointForm {
    DissipationTensors d;
    double omega;
    double vec_sign;   // RealPrimal: -1, ImagPrimal: +1
    double scal_sign;  // RealPrimal: +1, ImagPrimal: -1

    void vectors(const Entity& e, std::array<double, 4>& f,
                 std::array<double, 2>& k) const {
        f = {0.0, 0.0, 0.0, 0.0};
        k = {0.0, 0.0};
        switch (e.field) {
            case Field::S:
                f[0] = e.gx;
                f[1] = e.gy;
                k[0] = scal_sign * omega * e.value;
                break;
            case Field::V1:
                f[2] = vec_sign * omega * e.value;
                k[1] = -e.gx;
                break;
            case Field::V2:
                f[3] = vec_sign * omega * e.value;
                k[1] = -e.gy;
                break;
        }
    }

    double entry(const Entity& test, const Entity& trial) const {
        std::array<double, 4> ft, fj;
        std::array<double, 2> kt, kj;
        vectors(test, ft, kt);
        vectors(trial, fj, kj);
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) s += ft[i] * d.R[i][j] * fj[j];
        }
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) s += kt[i] * d.K[i][j] * kj[j];
        }
        return s;
    }
};

PointForm point_form(const MaterialField& m, double x, double y, Mode mode) {
    PointForm pf;
    pf.d = dissipation_at(m, x, y);
    pf.omega = m.omega;
    pf.vec_sign = mode == Mode::RealPrimal ? -1.0 : 1.0;
    pf.scal_sign = mode == Mode::RealPrimal ? 1.0 : -1.0;
    return pf;
}

// Local bilinear shapes on the cell (cx, cy); node order (0,0),(1,0),(0,1),(1,1).
struct CellShapes {
    std::array<double, 4> s;
    std::array<double, 4> gx, gy;
};

CellShapes cell_shapes(double xi, double eta, double h) {
    CellShapes c;
    std::array<double, 2> lx = {1.0 - xi, xi};
    std::array<double, 2> ly = {1.0 - eta, eta};
    std::array<double, 2> dx = {-1.0 / h, 1.0 / h};
    std::array<double, 2> dy = {-1.0 / h, 1.0 / h};
    for (int iy = 0; iy < 2; ++iy) {
        for (int ix = 0; ix < 2; ++ix) {
            int i = 2 * iy + ix;
            c.s[i] = lx[ix] * ly[iy];
            c.gx[i] = dx[ix] * ly[iy];
            c.gy[i] = lx[ix] * dy[iy];
        }
    }
    return c;
}

struct VolumeResult {
    std::vector<Triplet> triplets;
    std::vector<double> rhs;
};

// Element-loop assembly of the volume part. For Dirichlet problems the lifts
// enter the right-hand side; Robin problems pass data = nullptr.
VolumeResult assemble_volume(const Grid& grid, const MaterialField& material,
                             const DofLayout& layout, Mode mode,
                             const DirichletData* data) {
    const int n = grid.n;
    const double h = grid.h;
    const double omega = material.omega;
    QuadratureRule quad = tensor_gauss(2);

    const BoundaryLift* lift_primal = nullptr;
    const BoundaryLift* lift_dual = nullptr;
    if (data) {
        lift_primal = mode == Mode::RealPrimal ? &data->psi_R : &data->psi_I;
        lift_dual = mode == Mode::RealPrimal ? &data->psi_I : &data->psi_R;
    }

    VolumeResult out;
    out.rhs.assign(layout.sizes.total(), 0.0);
    out.triplets.reserve(static_cast<size_t>(grid.cell_count()) * 4 * 144);

    const int off_v1 = layout.sizes.n_scalar;
    const int off_v2 = layout.sizes.n_scalar + layout.sizes.n_vec;

    for (int cy = 0; cy < n - 1; ++cy) {
        for (int cx = 0; cx < n - 1; ++cx) {
            double x0 = cx * h, y0 = cy * h;
            for (const auto& qp : quad.points) {
                double x = x0 + qp.xi * h;
                double y = y0 + qp.eta * h;
                double w = qp.weight * h * h;
                PointForm pf = point_form(material, x, y, mode);
                CellShapes cs = cell_shapes(qp.xi, qp.eta, h);

                std::array<Entity, 12> ent;
                int ne = 0;
                for (int i = 0; i < 4; ++i) {
                    int jx = cx + (i & 1), ty = cy + (i >> 1);
                    int sd = layout.scalar_dof(jx, ty);
                    if (sd >= 0) {
                        ent[ne++] = {Field::S, sd, cs.s[i], cs.gx[i], cs.gy[i]};
                    }
                }
                for (int i = 0; i < 4; ++i) {
                    int jx = cx + (i & 1), ty = cy + (i >> 1);
                    int vd = layout.vector_dof(jx, ty);
                    ent[ne++] = {Field::V1, off_v1 + vd, cs.s[i], cs.gx[i], cs.gy[i]};
                }
                for (int i = 0; i < 4; ++i) {
                    int jx = cx + (i & 1), ty = cy + (i >> 1);
                    int vd = layout.vector_dof(jx, ty);
                    ent[ne++] = {Field::V2, off_v2 + vd, cs.s[i], cs.gx[i], cs.gy[i]};
                }

                for (int t = 0; t < ne; ++t) {
                    for (int j = 0; j < ne; ++j) {
                        double v = w * pf.entry(ent[t], ent[j]);
                        if (v != 0.0) {
                            out.triplets.push_back({ent[t].dof, ent[j].dof, v});
                        }
                    }
                }

                if (data) {
                    double pv = lift_primal->value(x, y);
                    auto pg = lift_primal->grad(x, y);
                    Entity lift{Field::S, -1, pv, pg[0], pg[1]};
                    double dv = lift_dual->value(x, y);
                    auto dg = lift_dual->grad(x, y);
                    for (int t = 0; t < ne; ++t) {
                        double b = -w * pf.entry(ent[t], lift);
                        if (ent[t].field == Field::V1) {
                            b -= w * omega * (dg[0] * ent[t].value + dv * ent[t].gx);
                        } else if (ent[t].field == Field::V2) {
                            b -= w * omega * (dg[1] * ent[t].value + dv * ent[t].gy);
                        }
                        out.rhs[ent[t].dof] += b;
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::array<double, 2>> coercivity_samples(const Grid& grid) {
    QuadratureRule quad = tensor_gauss(2);
    std::vector<std::array<double, 2>> pts;
    // Quadrature points of a coarse sub-lattice of cells (all cells for small N).
    int stride = std::max(1, (grid.n - 1) / 8);
    for (int cy = 0; cy < grid.n - 1; cy += stride) {
        for (int cx = 0; cx < grid.n - 1; cx += stride) {
            for (const auto& qp : quad.points) {
                pts.push_back({(cx + qp.xi) * grid.h, (cy + qp.eta) * grid.h});
            }
        }
    }
    return pts;
}

}  // namespace

BlockSystem assemble_dirichlet(const Grid& grid, const MaterialField& material,
                               const DirichletData& data, Mode mode) {
    BlockSystem sys;
    sys.layout = DofLayout::dirichlet(grid);
    sys.sizes = sys.layout.sizes;
    sys.mode = mode;
    sys.coercivity = check_coercivity(material, coercivity_samples(grid));
    VolumeResult vol = assemble_volume(grid, material, sys.layout, mode, &data);
    sys.matrix = SparseSym::from_triplets(sys.sizes.total(), std::move(vol.triplets));
    sys.rhs = std::move(vol.rhs);
    return sys;
}

namespace {

struct Mat2r {
    double a11, a12, a21, a22;
};

// Surface kernel M2^{-1} M1 = (1/a') [[1, -a''], [-a'', |a|^2]].
Mat2r robin_kernel(Complex a) {
    double ap = a.real(), app = a.imag();
    return {1.0 / ap, -app / ap, -app / ap, std::norm(a) / ap};
}

// M2^{-1} = (1/a') [[1, 0], [-a'', a']].
std::array<double, 2> m2_inv_apply(Complex a, std::array<double, 2> g) {
    double ap = a.real(), app = a.imag();
    return {g[0] / ap, (-app * g[0] + ap * g[1]) / ap};
}

}  // namespace

BlockSystem assemble_robin(const Grid& grid, const MaterialField& material,
                           const RobinData& data, Mode mode) {
    if (data.a.real() == 0.0) {
        throw std::invalid_argument("assemble_robin: a' = 0 makes M2 singular");
    }
    BlockSystem sys;
    sys.layout = DofLayout::robin(grid);
    sys.sizes = sys.layout.sizes;
    sys.mode = mode;
    sys.coercivity = check_coercivity(material, coercivity_samples(grid));

    VolumeResult vol = assemble_volume(grid, material, sys.layout, mode, nullptr);
    sys.rhs = std::move(vol.rhs);

    // Mode-effective Robin data: the imag-primal pair (P'', v'.n) satisfies
    // the same elimination with a replaced by conj(a) and (g', g'') swapped.
    Complex a_eff = mode == Mode::RealPrimal ? data.a : std::conj(data.a);
    Mat2r w = robin_kernel(a_eff);
    const double omega = material.omega;
    const int n = grid.n;
    const double h = grid.h;
    const int off_v1 = sys.sizes.n_scalar;
    const int off_v2 = sys.sizes.n_scalar + sys.sizes.n_vec;
    auto g1d = gauss_1d(2);

    struct Edge {
        bool horizontal;  // along x (y fixed)
        int fixed;        // node index of the fixed coordinate
        double nx, ny;
    };
    std::vector<Edge> edges = {{true, 0, 0.0, -1.0}, {true, n - 1, 0.0, 1.0}};
    if (!grid.periodic_x) {
        edges.push_back({false, 0, -1.0, 0.0});
        edges.push_back({false, n - 1, 1.0, 0.0});
    }

    for (const Edge& e : edges) {
        for (int seg = 0; seg < n - 1; ++seg) {
            for (const auto& [q, qw] : g1d) {
                double w_surf = qw * h;
                double s0 = 1.0 - q, s1 = q;
                double x, y;
                if (e.horizontal) {
                    x = (seg + q) * h;
                    y = e.fixed * h;
                } else {
                    x = e.fixed * h;
                    y = (seg + q) * h;
                }
                // Surface pair (psi-part, phi.n-part) for the six local unknowns.
                struct SurfEntity {
                    int dof;
                    double psi, vn;
                };
                std::array<SurfEntity, 4> se;
                int nse = 0;
                for (int i = 0; i < 2; ++i) {
                    int node = seg + i;
                    int jx = e.horizontal ? node : e.fixed;
                    int ty = e.horizontal ? e.fixed : node;
                    double val = i == 0 ? s0 : s1;
                    se[nse++] = {sys.layout.scalar_dof(jx, ty), val, 0.0};
                    int vd = sys.layout.vector_dof(jx, ty);
                    if (e.horizontal) {
                        se[nse++] = {off_v2 + vd, 0.0, e.ny * val};
                    } else {
                        se[nse++] = {off_v1 + vd, 0.0, e.nx * val};
                    }
                }

                for (int t = 0; t < nse; ++t) {
                    for (int j = 0; j < nse; ++j) {
                        double kt0 = se[t].psi, kt1 = se[t].vn;
                        double kj0 = se[j].psi, kj1 = se[j].vn;
                        double bval = kt0 * (w.a11 * kj0 + w.a12 * kj1) +
                                      kt1 * (w.a21 * kj0 + w.a22 * kj1);
                        // system matrix is A - omega B
                        double v = -omega * w_surf * bval;
                        if (v != 0.0) {
                            vol.triplets.push_back({se[t].dof, se[j].dof, v});
                        }
                    }
                }

                Complex gval = data.g(x, y);
                std::array<double, 2> gp =
                    mode == Mode::RealPrimal
                        ? std::array<double, 2>{gval.real(), gval.imag()}
                        : std::array<double, 2>{gval.imag(), gval.real()};
                auto mg = m2_inv_apply(a_eff, gp);
                for (int t = 0; t < nse; ++t) {
                    sys.rhs[se[t].dof] -=
                        omega * w_surf * (se[t].psi * mg[0] + se[t].vn * mg[1]);
                }
            }
        }
    }

    sys.matrix = SparseSym::from_triplets(sys.sizes.total(), std::move(vol.triplets));
    return sys;
}

Eigen::MatrixXd brute_force_matrix(const Grid& grid, const MaterialField& material,
                                   Mode mode) {
    if (grid.n > 8) {
        throw std::invalid_argument("brute_force_matrix: refusing N > 8");
    }
    const int n = grid.n;
    const double h = grid.h;
    const double omega = material.omega;
    const int ns = grid.interior_count();
    const int nv = grid.node_count();
    const int total = ns + 2 * nv;
    const double vec_sign = mode == Mode::RealPrimal ? -1.0 : 1.0;
    const double scal_sign = mode == Mode::RealPrimal ? 1.0 : -1.0;

    std::vector<BasisId> ids;
    ids.reserve(total);
    for (int k = 1; k <= ns; ++k) ids.push_back({BasisKind::Scalar, k});
    for (int k = 1; k <= nv; ++k) ids.push_back({BasisKind::VectorX, k});
    for (int k = 1; k <= nv; ++k) ids.push_back({BasisKind::VectorY, k});

    QuadratureRule quad = tensor_gauss(5);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(total, total);

    for (int cy = 0; cy < n - 1; ++cy) {
        for (int cx = 0; cx < n - 1; ++cx) {
            for (const auto& qp : quad.points) {
                double x = (cx + qp.xi) * h;
                double y = (cy + qp.eta) * h;
                double w = qp.weight * h * h;
                DissipationTensors d = dissipation_at(material, x, y);
                // 4-vector (grad P slot, -omega v slot) and 2-vector
                // (omega P slot, -div v slot) for every basis function.
                std::vector<std::array<double, 4>> f(total);
                std::vector<std::array<double, 2>> kv(total);
                for (int i = 0; i < total; ++i) {
                    BasisSample bs = eval_basis(ids[i], grid, x, y);
                    f[i] = {0.0, 0.0, 0.0, 0.0};
                    kv[i] = {0.0, 0.0};
                    switch (ids[i].kind) {
                        case BasisKind::Scalar:
                            f[i][0] = bs.grad[0];
                            f[i][1] = bs.grad[1];
                            kv[i][0] = scal_sign * omega * bs.value;
                            break;
                        case BasisKind::VectorX:
                            f[i][2] = vec_sign * omega * bs.value;
                            kv[i][1] = -bs.div;
                            break;
                        case BasisKind::VectorY:
                            f[i][3] = vec_sign * omega * bs.value;
                            kv[i][1] = -bs.div;
                            break;
                    }
                }
                for (int t = 0; t < total; ++t) {
                    for (int j = 0; j < total; ++j) {
                        double s = 0.0;
                        for (int p = 0; p < 4; ++p) {
                            for (int q2 = 0; q2 < 4; ++q2) {
                                s += f[t][p] * d.R[p][q2] * f[j][q2];
                            }
                        }
                        for (int p = 0; p < 2; ++p) {
                            for (int q2 = 0; q2 < 2; ++q2) {
                                s += kv[t][p] * d.K[p][q2] * kv[j][q2];
                            }
                        }
                        a(t, j) += w * s;
                    }
                }
            }
        }
    }
    return a;
}

Eigen::MatrixXd dense_matrix(const SparseSym& m) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m.n, m.n);
    for (int i = 0; i < m.n; ++i) {
        for (int p = m.row_ptr[i]; p < m.row_ptr[i + 1]; ++p) {
            a(i, m.col[p]) += m.val[p];
        }
    }
    return a;
}

}  // namespace helmmin
