#include "geonoether/collineation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace geonoether {

std::string coll_kind_name(CollKind k) {
    switch (k) {
        case CollKind::KV: return "KV";
        case CollKind::HV: return "HV";
        case CollKind::CKV: return "CKV";
        case CollKind::AC: return "AC";
        case CollKind::PC: return "PC";
        case CollKind::SPC: return "SPC";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// exact linear algebra
// ---------------------------------------------------------------------------

namespace {

using RatRow = std::vector<Rational>;
using RatMatrix = std::vector<RatRow>;

// Gauss-Jordan to reduced row echelon form; returns pivot column indices.
std::vector<int> rref(RatMatrix& A) {
    if (A.empty()) return {};
    const int rows = static_cast<int>(A.size());
    const int cols = static_cast<int>(A[0].size());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][c] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(A[r], A[sel]);
        Rational inv = A[r][c];
        for (int j = c; j < cols; ++j) A[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (int j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

RatMatrix nullspace(RatMatrix A) {
    if (A.empty()) return {};
    const int cols = static_cast<int>(A[0].size());
    std::vector<int> pivots = rref(A);
    std::vector<int> pivot_of_col(cols, -1);
    for (std::size_t r = 0; r < pivots.size(); ++r) pivot_of_col[pivots[r]] = static_cast<int>(r);
    RatMatrix basis;
    for (int f = 0; f < cols; ++f) {
        if (pivot_of_col[f] >= 0) continue;
        RatRow v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -A[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// particular solution of A x = b with free variables set to zero; empty when
// inconsistent
RatRow solve_particular(RatMatrix A, const RatRow& b) {
    if (A.empty()) return {};
    const int cols = static_cast<int>(A[0].size());
    for (std::size_t i = 0; i < A.size(); ++i) A[i].push_back(b[i]);
    std::vector<int> pivots = rref(A);
    // inconsistent when a pivot lands in the augmented column
    for (int c : pivots)
        if (c == cols) return {};
    RatRow x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = A[r][cols];
    return x;
}

// ---------------------------------------------------------------------------
// polynomial ansatz
// ---------------------------------------------------------------------------

// multi-indices of total degree in [lo, hi], graded-lexicographic
std::vector<std::vector<int>> monomials(int n, int lo, int hi) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, int pos, int remaining, int total) -> void {
        if (pos == n) {
            if (total >= lo) out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v, total + v);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, hi, 0);
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        int da = 0, db = 0;
        for (int v : a) da += v;
        for (int v : b) db += v;
        if (da != db) return da < db;
        return a < b;
    });
    return out;
}

Expr monomial_expr(const std::vector<int>& alpha) {
    Expr e = Expr::integer(1);
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] > 0) e = e * Expr::pow_int(Expr::coord(static_cast<int>(i)), alpha[i]);
    return e;
}

Expr poly_to_expr(const PolyMap& p) {
    Expr e;
    for (const auto& [alpha, c] : p) {
        if (c == 0) continue;
        e = e + Expr::number(c) * monomial_expr(alpha);
    }
    return e;
}

PolyMap poly_diff(const PolyMap& p, int k) {
    PolyMap out;
    for (const auto& [alpha, c] : p) {
        if (alpha[k] == 0) continue;
        std::vector<int> beta = alpha;
        beta[k] -= 1;
        out[beta] += c * alpha[k];
    }
    return out;
}

void poly_prune(PolyMap& p) {
    for (auto it = p.begin(); it != p.end();)
        it = (it->second == 0) ? p.erase(it) : std::next(it);
}

std::vector<Rational> metric_rationals(const Metric& m) {
    const int n = m.dim();
    std::vector<Rational> g(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Expr& e = m.g(i, j);
            if (!e.is_number() || !e.exact())
                throw std::invalid_argument(
                    "determining-equation solver requires a constant-coefficient metric");
            g[i * n + j] = e.rational_value();
        }
    return g;
}

struct AnsatzProblem {
    int n = 0;
    std::vector<std::vector<int>> monos;
    std::map<std::vector<int>, int> mono_index;
    int extras = 0;  // psi (HV) or b components (SPC)

    int cols() const { return n * static_cast<int>(monos.size()) + extras; }
    int col(int comp, const std::vector<int>& alpha) const {
        return comp * static_cast<int>(monos.size()) + mono_index.at(alpha);
    }
    int extra_col(int e) const { return n * static_cast<int>(monos.size()) + e; }
};

using RowKey = std::pair<int, std::vector<int>>;  // (equation id, monomial)
using SparseRows = std::map<RowKey, std::map<int, Rational>>;

RatMatrix densify(const SparseRows& rows, int cols) {
    RatMatrix A;
    A.reserve(rows.size());
    for (const auto& [key, entries] : rows) {
        (void)key;
        RatRow r(cols, Rational(0));
        for (const auto& [c, v] : entries) r[c] = v;
        A.push_back(std::move(r));
    }
    return A;
}

// L_eta g for a constant metric, coefficient-matched per monomial
void assemble_metric_equations(const AnsatzProblem& P, const std::vector<Rational>& g,
                               SparseRows& rows) {
    const int n = P.n;
    auto pair_id = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                for (const auto& alpha : P.monos) {
                    int c = P.col(k, alpha);
                    if (alpha[i] > 0) {
                        std::vector<int> beta = alpha;
                        beta[i] -= 1;
                        rows[{pair_id(i, j), beta}][c] += g[k * n + j] * alpha[i];
                    }
                    if (alpha[j] > 0) {
                        std::vector<int> beta = alpha;
                        beta[j] -= 1;
                        rows[{pair_id(i, j), beta}][c] += g[i * n + k] * alpha[j];
                    }
                }
            }
        }
    }
}

// eta^i_{,jk} = rhs, coefficient-matched (flat Cartesian connection is zero)
void assemble_connection_equations(const AnsatzProblem& P, bool spc, SparseRows& rows) {
    const int n = P.n;
    auto eq_id = [n](int i, int j, int k) { return (i * n + j) * n + k; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = j; k < n; ++k) {
                for (const auto& alpha : P.monos) {
                    long long factor;
                    std::vector<int> beta = alpha;
                    if (j == k) {
                        if (alpha[j] < 2) continue;
                        factor = static_cast<long long>(alpha[j]) * (alpha[j] - 1);
                        beta[j] -= 2;
                    } else {
                        if (alpha[j] == 0 || alpha[k] == 0) continue;
                        factor = static_cast<long long>(alpha[j]) * alpha[k];
                        beta[j] -= 1;
                        beta[k] -= 1;
                    }
                    rows[{eq_id(i, j, k), beta}][P.col(i, alpha)] += Rational(factor);
                }
                if (spc) {
                    // subtract b_j delta^i_k + b_k delta^i_j (constant monomial)
                    std::vector<int> zero(n, 0);
                    if (i == k) rows[{eq_id(i, j, k), zero}][P.extra_col(j)] -= 1;
                    if (i == j) rows[{eq_id(i, j, k), zero}][P.extra_col(k)] -= 1;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// claims from coefficient vectors
// ---------------------------------------------------------------------------

bool poly_gradient(const std::vector<PolyMap>& eta, const std::vector<Rational>& g, int n,
                   PolyMap* potential) {
    // lowered components p_l = g_lj eta^j
    std::vector<PolyMap> low(n);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            for (const auto& [alpha, c] : eta[j]) low[l][alpha] += g[l * n + j] * c;
    for (int l = 0; l < n; ++l) poly_prune(low[l]);
    for (int l = 0; l < n; ++l)
        for (int k = l + 1; k < n; ++k) {
            PolyMap a = poly_diff(low[l], k), b = poly_diff(low[k], l);
            poly_prune(a);
            poly_prune(b);
            if (a != b) return false;
        }
    if (potential) {
        PolyMap F;
        for (int l = 0; l < n; ++l)
            for (const auto& [alpha, c] : low[l]) {
                int deg = 0;
                for (int v : alpha) deg += v;
                std::vector<int> beta = alpha;
                beta[l] += 1;
                F[beta] += c / (deg + 1);
            }
        poly_prune(F);
        *potential = std::move(F);
    }
    return true;
}

CollineationClaim claim_from_coeffs(const AnsatzProblem& P, const RatRow& v, CollKind kind,
                                    const CoordinateChart& chart,
                                    const std::vector<Rational>& g, const std::string& name) {
    const int n = P.n;
    std::vector<PolyMap> eta(n);
    for (int k = 0; k < n; ++k)
        for (std::size_t mi = 0; mi < P.monos.size(); ++mi) {
            const Rational& c = v[k * P.monos.size() + mi];
            if (c != 0) eta[k][P.monos[mi]] = c;
        }
    std::vector<Expr> comps(n);
    for (int k = 0; k < n; ++k) comps[k] = poly_to_expr(eta[k]);
    CollineationClaim claim;
    claim.name = name;
    claim.vec = SymmetryVector(chart, Expr(), comps);
    claim.kind = kind;
    claim.exact_eta = eta;
    if (kind == CollKind::HV) claim.psi = 1.0;
    if (kind == CollKind::SPC) {
        PolyMap phi;
        for (int m = 0; m < n; ++m) {
            const Rational& b = v[P.extra_col(m)];
            if (b != 0) {
                std::vector<int> alpha(n, 0);
                alpha[m] = 1;
                phi[alpha] = b;
            }
        }
        claim.phi = poly_to_expr(phi);
    }
    if (kind == CollKind::KV || kind == CollKind::HV) {
        PolyMap potential;
        if (poly_gradient(eta, g, n, &potential)) {
            claim.gradient = true;
            claim.gradient_function = poly_to_expr(potential);
        }
    }
    return claim;
}

}  // namespace

// ---------------------------------------------------------------------------
// solver
// ---------------------------------------------------------------------------

CollineationBasis solve_determining_equations(const Metric& m, CollKind kind, int max_degree) {
    const int n = m.dim();
    CollineationBasis out;
    out.provenance = "solver";
    if (kind == CollKind::CKV || kind == CollKind::PC)
        throw std::invalid_argument("solver handles KV, HV, AC and SPC kinds");
    std::vector<Rational> g = metric_rationals(m);
    CoordinateChart chart = m.chart();

    int lo = 0;
    if (kind == CollKind::AC) lo = 1;   // origin-fixing transversal
    if (kind == CollKind::SPC) lo = 2;  // pure quadratic transversal
    int needed = (kind == CollKind::SPC) ? 2 : 1;
    if (max_degree < needed)
        out.warnings.push_back("degree " + std::to_string(max_degree) +
                               " is too small to express every " + coll_kind_name(kind) +
                               " generator");
    if (max_degree < lo) return out;

    AnsatzProblem P;
    P.n = n;
    P.monos = monomials(n, lo, max_degree);
    for (std::size_t i = 0; i < P.monos.size(); ++i) P.mono_index[P.monos[i]] = static_cast<int>(i);
    P.extras = (kind == CollKind::SPC) ? n : 0;

    SparseRows rows;
    if (kind == CollKind::KV || kind == CollKind::HV) {
        assemble_metric_equations(P, g, rows);
    } else {
        assemble_connection_equations(P, kind == CollKind::SPC, rows);
    }
    RatMatrix A = densify(rows, P.cols());

    RatMatrix basis;
    if (kind == CollKind::HV) {
        // inhomogeneous: L_eta g = 2 g with psi normalized to 1
        RatRow rhs;
        rhs.reserve(rows.size());
        std::vector<int> zero(n, 0);
        for (const auto& [key, entries] : rows) {
            (void)entries;
            Rational r = 0;
            if (key.second == zero) {
                int i = key.first / n, j = key.first % n;
                r = 2 * g[i * n + j];
            }
            rhs.push_back(r);
        }
        RatRow part = solve_particular(A, rhs);
        if (part.empty()) {
            out.warnings.push_back("metric admits no homothetic vector in this ansatz");
            return out;
        }
        basis.push_back(std::move(part));
    } else {
        basis = nullspace(std::move(A));
        rref(basis);  // canonical reduced-echelon presentation
    }

    int idx = 1;
    for (const auto& v : basis) {
        bool all_zero = true;
        for (const auto& c : v)
            if (c != 0) { all_zero = false; break; }
        if (all_zero) continue;
        std::ostringstream name;
        name << coll_kind_name(kind) << "#" << idx++;
        out.claims.push_back(claim_from_coeffs(P, v, kind, chart, g, name.str()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

VerifyReport verify_collineation(const CollineationClaim& claim, const Metric& m,
                                 const std::vector<Sample>& samples, double tol) {
    VerifyReport rep;
    if (claim.vec.dim() != m.dim())
        throw std::invalid_argument("claim and metric dimensions differ");
    const int n = m.dim();
    const bool needs_connection =
        claim.kind == CollKind::AC || claim.kind == CollKind::PC || claim.kind == CollKind::SPC;
    ChristoffelField chris;
    if (needs_connection) chris = ChristoffelField(m);

    for (const Sample& s : samples) {
        try {
            switch (claim.kind) {
                case CollKind::KV:
                case CollKind::HV:
                case CollKind::CKV: {
                    Eigen::MatrixXd L = lie_derivative_metric(claim.vec, m, s.x, 0.0);
                    Eigen::MatrixXd g = m.eval(s.x);
                    double psi = 0.0;
                    if (claim.kind == CollKind::HV) psi = claim.psi;
                    if (claim.kind == CollKind::CKV) psi = claim.psi_expr.eval(s.x);
                    rep.residual = std::max(rep.residual,
                                            (L - 2.0 * psi * g).cwiseAbs().maxCoeff());
                    break;
                }
                case CollKind::AC:
                case CollKind::PC:
                case CollKind::SPC: {
                    auto L = lie_derivative_connection(claim.vec, chris, s.x, 0.0);
                    std::vector<double> dphi(n, 0.0);
                    bool has_phi = claim.kind != CollKind::AC;
                    if (has_phi)
                        for (int k = 0; k < n; ++k) dphi[k] = claim.phi.diff_coord(k).eval(s.x);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            for (int k = 0; k < n; ++k) {
                                double target = 0.0;
                                if (has_phi) {
                                    if (i == k) target += dphi[j];
                                    if (i == j) target += dphi[k];
                                }
                                rep.residual =
                                    std::max(rep.residual, std::fabs(L[i](j, k) - target));
                            }
                    if (claim.kind == CollKind::SPC) {
                        // phi_{;jk} = phi_{,jk} - G^m_jk phi_{,m}
                        auto G = chris.eval(s.x);
                        for (int j = 0; j < n; ++j)
                            for (int k = 0; k < n; ++k) {
                                double v = claim.phi.diff_coord(j).diff_coord(k).eval(s.x);
                                for (int mm = 0; mm < n; ++mm) v -= G[mm](j, k) * dphi[mm];
                                rep.phi_residual = std::max(rep.phi_residual, std::fabs(v));
                            }
                    }
                    break;
                }
            }
            if (claim.gradient) {
                Eigen::MatrixXd g = m.eval(s.x);
                for (int i = 0; i < n; ++i) {
                    double lowered = 0.0;
                    for (int j = 0; j < n; ++j) lowered += g(i, j) * claim.vec.eta[j].eval(s.x);
                    double dF = claim.gradient_function.diff_coord(i).eval(s.x);
                    rep.gradient_residual =
                        std::max(rep.gradient_residual, std::fabs(lowered - dF));
                }
            }
            ++rep.evaluated;
        } catch (const EvalError& e) {
            ++rep.skipped;
            if (rep.note.empty()) rep.note = std::string("skipped point: ") + e.what();
        }
    }
    rep.pass = rep.evaluated > 0 && rep.residual <= tol && rep.gradient_residual <= tol &&
               rep.phi_residual <= tol;
    return rep;
}

// ---------------------------------------------------------------------------
// catalogs
// ---------------------------------------------------------------------------

Metric make_flat_metric(int n, const std::vector<int>& signature) {
    if (static_cast<int>(signature.size()) != n)
        throw std::invalid_argument("signature length must match dimension");
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    CoordinateChart chart(names);
    std::vector<std::vector<Expr>> comps(n, std::vector<Expr>(n));
    for (int i = 0; i < n; ++i) comps[i][i] = Expr::integer(signature[i]);
    return Metric(chart, comps, signature);
}

CollineationBasis flat_projective_catalog(int n, const std::vector<int>& signature) {
    if (n < 2) throw std::invalid_argument("flat catalog needs dimension >= 2");
    Metric m = make_flat_metric(n, signature);
    CoordinateChart chart = m.chart();
    CollineationBasis out;
    out.provenance = "catalog";

    auto mono = [n](int i) {
        std::vector<int> a(n, 0);
        a[i] = 1;
        return a;
    };

    // gradient translations
    for (int I = 0; I < n; ++I) {
        CollineationClaim c;
        c.name = "S" + std::to_string(I + 1);
        std::vector<Expr> eta(n);
        eta[I] = Expr::integer(1);
        c.vec = SymmetryVector(chart, Expr(), eta);
        c.kind = CollKind::KV;
        c.gradient = true;
        c.gradient_function = Expr::integer(signature[I]) * Expr::coord(I);
        c.exact_eta.assign(n, {});
        c.exact_eta[I][std::vector<int>(n, 0)] = 1;
        out.claims.push_back(std::move(c));
    }
    // signature-adjusted rotations/boosts: x_I d_J - x_J d_I with lowered x
    for (int I = 0; I < n; ++I) {
        for (int J = I + 1; J < n; ++J) {
            CollineationClaim c;
            c.name = "X" + std::to_string(I + 1) + std::to_string(J + 1);
            std::vector<Expr> eta(n);
            eta[J] = Expr::integer(signature[I]) * Expr::coord(I);
            eta[I] = -(Expr::integer(signature[J]) * Expr::coord(J));
            c.vec = SymmetryVector(chart, Expr(), eta);
            c.kind = CollKind::KV;
            c.exact_eta.assign(n, {});
            c.exact_eta[J][mono(I)] = signature[I];
            c.exact_eta[I][mono(J)] = -signature[J];
            out.claims.push_back(std::move(c));
        }
    }
    // dilation
    {
        CollineationClaim c;
        c.name = "H";
        std::vector<Expr> eta(n);
        Expr fn;
        c.exact_eta.assign(n, {});
        for (int i = 0; i < n; ++i) {
            eta[i] = Expr::coord(i);
            fn = fn + Expr::number(Rational(signature[i], 2)) * Expr::pow_int(Expr::coord(i), 2);
            c.exact_eta[i][mono(i)] = 1;
        }
        c.vec = SymmetryVector(chart, Expr(), eta);
        c.kind = CollKind::HV;
        c.psi = 1.0;
        c.gradient = true;
        c.gradient_function = fn;
        out.claims.push_back(std::move(c));
    }
    // origin-fixing linear fields
    for (int I = 0; I < n; ++I) {
        for (int J = 0; J < n; ++J) {
            CollineationClaim c;
            c.name = "A" + std::to_string(I + 1) + std::to_string(J + 1);
            std::vector<Expr> eta(n);
            eta[I] = Expr::coord(J);
            c.vec = SymmetryVector(chart, Expr(), eta);
            c.kind = CollKind::AC;
            c.exact_eta.assign(n, {});
            c.exact_eta[I][mono(J)] = 1;
            if (I == J) {
                c.gradient = true;
                c.gradient_function =
                    Expr::number(Rational(signature[I], 2)) * Expr::pow_int(Expr::coord(I), 2);
            }
            out.claims.push_back(std::move(c));
        }
    }
    // special projective quadratics, phi = lowered x_I
    for (int I = 0; I < n; ++I) {
        CollineationClaim c;
        c.name = "P" + std::to_string(I + 1);
        std::vector<Expr> eta(n);
        c.exact_eta.assign(n, {});
        for (int i = 0; i < n; ++i) {
            eta[i] = Expr::integer(signature[I]) * Expr::coord(I) * Expr::coord(i);
            std::vector<int> a(n, 0);
            a[I] += 1;
            a[i] += 1;
            c.exact_eta[i][a] = signature[I];
        }
        c.vec = SymmetryVector(chart, Expr(), eta);
        c.kind = CollKind::SPC;
        c.phi = Expr::integer(signature[I]) * Expr::coord(I);
        out.claims.push_back(std::move(c));
    }
    return out;
}

Metric make_sphere_metric(int K) {
    if (K != 1 && K != -1) throw std::invalid_argument("K must be +1 or -1");
    CoordinateChart chart({"phi", "theta"});
    Expr phi = Expr::coord(0);
    Expr sinn = (K == 1) ? Expr::sin(phi) : Expr::sinh(phi);
    chart.excluded.push_back(sinn);
    std::vector<std::vector<Expr>> comps(2, std::vector<Expr>(2));
    comps[0][0] = Expr::integer(1);
    comps[1][1] = sinn * sinn;
    return Metric(chart, comps, {1, 1});
}

CollineationBasis sphere_killing_catalog(int K) {
    Metric m = make_sphere_metric(K);
    CoordinateChart chart = m.chart();
    Expr phi = Expr::coord(0), theta = Expr::coord(1);
    Expr sinn = (K == 1) ? Expr::sin(phi) : Expr::sinh(phi);
    Expr cosn = (K == 1) ? Expr::cos(phi) : Expr::cosh(phi);
    Expr cot = cosn / sinn;

    CollineationBasis out;
    out.provenance = "catalog";
    auto add = [&](const std::string& name, Expr ephi, Expr etheta) {
        CollineationClaim c;
        c.name = name;
        c.vec = SymmetryVector(chart, Expr(), {ephi, etheta});
        c.kind = CollKind::KV;
        out.claims.push_back(std::move(c));
    };
    add("Y1", Expr::sin(theta), Expr::cos(theta) * cot);
    add("Y2", Expr::cos(theta), -(Expr::sin(theta) * cot));
    add("Y3", Expr(), Expr::integer(1));
    return out;
}

Metric make_bianchi_metric(bool with_scalar_field) {
    std::vector<std::string> names = {"lambda", "beta1", "beta2"};
    std::vector<int> diag = {12, -3, -3};
    std::vector<int> sig = {1, -1, -1};
    if (with_scalar_field) {
        names.push_back("phi");
        diag.push_back(-2);
        sig.push_back(-1);
    }
    CoordinateChart chart(names);
    const int n = chart.dim();
    Expr conf = Expr::exp(Expr::integer(3) * Expr::coord(0));
    std::vector<std::vector<Expr>> comps(n, std::vector<Expr>(n));
    for (int i = 0; i < n; ++i) comps[i][i] = conf * Expr::integer(diag[i]);
    return Metric(chart, comps, sig);
}

CollineationBasis bianchi_symmetry_catalog(bool with_scalar_field) {
    Metric m = make_bianchi_metric(with_scalar_field);
    CoordinateChart chart = m.chart();
    const int n = chart.dim();
    CollineationBasis out;
    out.provenance = "catalog";

    auto vec = [&](std::initializer_list<std::pair<int, Expr>> comps) {
        std::vector<Expr> eta(n);
        for (const auto& [i, e] : comps) eta[i] = e;
        return eta;
    };
    auto add_kv = [&](const std::string& name, std::vector<Expr> eta) {
        CollineationClaim c;
        c.name = name;
        c.vec = SymmetryVector(chart, Expr(), std::move(eta));
        c.kind = CollKind::KV;
        out.claims.push_back(std::move(c));
    };

    Expr b1 = Expr::coord(1), b2 = Expr::coord(2);
    add_kv("Y1", vec({{1, Expr::integer(1)}}));
    add_kv("Y2", vec({{2, Expr::integer(1)}}));
    if (with_scalar_field) add_kv("Y3", vec({{3, Expr::integer(1)}}));
    add_kv("Y4", vec({{1, b2}, {2, -b1}}));
    if (with_scalar_field) {
        Expr phi = Expr::coord(3);
        Expr mh = Expr::number(Rational(-3, 2));
        add_kv("Y5", vec({{1, phi}, {3, mh * b1}}));
        add_kv("Y6", vec({{2, phi}, {3, mh * b2}}));
    }

    CollineationClaim h;
    h.name = "H";
    h.vec = SymmetryVector(chart, Expr(), vec({{0, Expr::number(Rational(2, 3))}}));
    h.kind = CollKind::HV;
    h.psi = 1.0;
    h.gradient = true;
    h.gradient_function =
        Expr::number(Rational(8, 3)) * Expr::exp(Expr::integer(3) * Expr::coord(0));
    out.claims.push_back(std::move(h));
    return out;
}

Metric make_flat_polar_metric() {
    CoordinateChart chart({"r", "theta", "z"});
    chart.excluded.push_back(Expr::coord(0));
    std::vector<std::vector<Expr>> comps(3, std::vector<Expr>(3));
    comps[0][0] = Expr::integer(1);
    comps[1][1] = Expr::pow_int(Expr::coord(0), 2);
    comps[2][2] = Expr::integer(1);
    return Metric(chart, comps, {1, 1, 1});
}

// ---------------------------------------------------------------------------
// exact span comparison
// ---------------------------------------------------------------------------

bool claims_span_subset(const std::vector<CollineationClaim>& sub,
                        const std::vector<CollineationClaim>& super) {
    std::map<std::pair<int, std::vector<int>>, int> columns;
    auto index_claims = [&](const std::vector<CollineationClaim>& cs) {
        for (const auto& c : cs) {
            if (c.exact_eta.empty())
                throw std::invalid_argument("span comparison needs exact coefficients");
            for (std::size_t i = 0; i < c.exact_eta.size(); ++i)
                for (const auto& [alpha, v] : c.exact_eta[i]) {
                    (void)v;
                    columns.emplace(std::make_pair(static_cast<int>(i), alpha),
                                    static_cast<int>(columns.size()));
                }
        }
    };
    index_claims(sub);
    index_claims(super);
    const int cols = static_cast<int>(columns.size());
    auto to_row = [&](const CollineationClaim& c) {
        RatRow r(cols, Rational(0));
        for (std::size_t i = 0; i < c.exact_eta.size(); ++i)
            for (const auto& [alpha, v] : c.exact_eta[i])
                r[columns.at({static_cast<int>(i), alpha})] = v;
        return r;
    };
    RatMatrix A;
    for (const auto& c : super) A.push_back(to_row(c));
    std::vector<int> pivots = rref(A);
    for (const auto& c : sub) {
        RatRow v = to_row(c);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            Rational f = v[pivots[r]];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j) v[j] -= f * A[r][j];
        }
        for (const auto& x : v)
            if (x != 0) return false;
    }
    return true;
}

}  // namespace geonoether
