#include "geonoether/symmetry.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace geonoether {

double LieConditionReport::max_residual() const {
    return std::max(std::max(res_force, res_mixed), std::max(res_connection, res_xi_hessian));
}

double NoetherConditionReport::max_residual() const {
    return std::max(std::max(res_xi_spatial, res_metric), std::max(res_energy, res_momentum));
}

namespace {

struct VectorDerivatives {
    int n;
    std::vector<Expr> eta, eta_t, eta_tt;
    std::vector<std::vector<Expr>> eta_j, eta_tj;
    std::vector<std::vector<std::vector<Expr>>> eta_jk;
    Expr xi, xi_t, xi_tt;
    std::vector<Expr> xi_j, xi_tj;
    std::vector<std::vector<Expr>> xi_jk;

    explicit VectorDerivatives(const SymmetryVector& X) : n(X.dim()) {
        eta = X.eta;
        eta_t.resize(n);
        eta_tt.resize(n);
        eta_j.assign(n, std::vector<Expr>(n));
        eta_tj.assign(n, std::vector<Expr>(n));
        eta_jk.assign(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
        for (int i = 0; i < n; ++i) {
            eta_t[i] = X.eta[i].diff_time();
            eta_tt[i] = eta_t[i].diff_time();
            for (int j = 0; j < n; ++j) {
                eta_j[i][j] = X.eta[i].diff_coord(j);
                eta_tj[i][j] = eta_t[i].diff_coord(j);
                for (int k = j; k < n; ++k) {
                    Expr d = eta_j[i][j].diff_coord(k);
                    eta_jk[i][j][k] = d;
                    eta_jk[i][k][j] = d;
                }
            }
        }
        xi = X.xi;
        xi_t = X.xi.diff_time();
        xi_tt = xi_t.diff_time();
        xi_j.resize(n);
        xi_tj.resize(n);
        xi_jk.assign(n, std::vector<Expr>(n));
        for (int j = 0; j < n; ++j) {
            xi_j[j] = X.xi.diff_coord(j);
            xi_tj[j] = xi_t.diff_coord(j);
            for (int k = j; k < n; ++k) {
                Expr d = xi_j[j].diff_coord(k);
                xi_jk[j][k] = d;
                xi_jk[k][j] = d;
            }
        }
    }
};

double eval_at(const Expr& e, const Sample& s) { return e.eval(s.x, s.t); }

}  // namespace

LieConditionReport lie_conditions(const SymmetryVector& X, const Metric& m,
                                  const ChristoffelField& chris,
                                  const std::vector<Expr>& force,
                                  const std::vector<Sample>& samples, double tol) {
    const int n = m.dim();
    if (X.dim() != n || static_cast<int>(force.size()) != n)
        throw std::invalid_argument("dimension mismatch in lie_conditions");
    for (const Expr& f : force)
        if (f.uses_time())
            throw std::invalid_argument("lie_conditions expects a time-independent force");

    LieConditionReport rep;
    rep.tol = tol;

    // p = -F brings the equation of motion to  xdd + G xd xd + p = 0
    std::vector<Expr> p(n);
    std::vector<std::vector<Expr>> dp(n, std::vector<Expr>(n));
    for (int i = 0; i < n; ++i) {
        p[i] = -force[i];
        for (int j = 0; j < n; ++j) dp[i][j] = p[i].diff_coord(j);
    }
    VectorDerivatives D(X);

    for (const Sample& s : samples) {
        try {
            Eigen::VectorXd pv(n), eta(n), eta_t(n), eta_tt(n);
            Eigen::MatrixXd dpv(n, n), deta(n, n), deta_t(n, n);
            for (int i = 0; i < n; ++i) {
                pv(i) = eval_at(p[i], s);
                eta(i) = eval_at(D.eta[i], s);
                eta_t(i) = eval_at(D.eta_t[i], s);
                eta_tt(i) = eval_at(D.eta_tt[i], s);
                for (int j = 0; j < n; ++j) {
                    dpv(i, j) = eval_at(dp[i][j], s);
                    deta(i, j) = eval_at(D.eta_j[i][j], s);
                    deta_t(i, j) = eval_at(D.eta_tj[i][j], s);
                }
            }
            double xi_t = eval_at(D.xi_t, s), xi_tt = eval_at(D.xi_tt, s);
            Eigen::VectorXd xi_j(n), xi_tj(n);
            Eigen::MatrixXd xi_jk(n, n);
            for (int j = 0; j < n; ++j) {
                xi_j(j) = eval_at(D.xi_j[j], s);
                xi_tj(j) = eval_at(D.xi_tj[j], s);
                for (int k = 0; k < n; ++k) xi_jk(j, k) = eval_at(D.xi_jk[j][k], s);
            }
            auto G = chris.eval(s.x);
            auto dG = chris.eval_derivative(s.x);

            // force block: L_eta p + 2 xi_t p + eta_tt
            Eigen::VectorXd blockA(n);
            for (int i = 0; i < n; ++i) {
                double acc = 2.0 * xi_t * pv(i) + eta_tt(i);
                for (int j = 0; j < n; ++j) acc += eta(j) * dpv(i, j) - pv(j) * deta(i, j);
                blockA(i) = acc;
                rep.res_force = std::max(rep.res_force, std::fabs(acc));
            }

            // mixed block: (xi_k p^k) d^i_j + 2 xi_j p^i + 2(eta^i_tj + G^i_jk eta^k_t) - xi_tt d^i_j
            double xi_dot_p = xi_j.dot(pv);
            Eigen::MatrixXd blockB(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double acc = 2.0 * xi_j(j) * pv(i) + 2.0 * deta_t(i, j);
                    if (i == j) acc += xi_dot_p - xi_tt;
                    for (int k = 0; k < n; ++k) acc += 2.0 * G[i](j, k) * eta_t(k);
                    blockB(i, j) = acc;
                    rep.res_mixed = std::max(rep.res_mixed, std::fabs(acc));
                }

            // connection block: L_eta G - (xi_tj d^i_k + xi_tk d^i_j)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        double acc = eval_at(D.eta_jk[i][j][k], s);
                        for (int mm = 0; mm < n; ++mm) {
                            acc += eta(mm) * dG[mm][i](j, k);
                            acc -= deta(i, mm) * G[mm](j, k);
                            acc += deta(mm, j) * G[i](mm, k);
                            acc += deta(mm, k) * G[i](j, mm);
                        }
                        if (i == k) acc -= xi_tj(j);
                        if (i == j) acc -= xi_tj(k);
                        rep.res_connection = std::max(rep.res_connection, std::fabs(acc));
                    }

            // xi block: symmetrized second covariant derivative of xi
            Eigen::MatrixXd xi_cov(n, n);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double acc = xi_jk(j, k);
                    for (int mm = 0; mm < n; ++mm) acc -= G[mm](j, k) * xi_j(mm);
                    xi_cov(j, k) = acc;
                }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int d = 0; d < n; ++d) {
                            double acc = 0;
                            if (i == d) acc += xi_cov(j, k);
                            if (i == j) acc += xi_cov(k, d);
                            if (i == k) acc += xi_cov(d, j);
                            rep.res_xi_hessian = std::max(rep.res_xi_hessian, std::fabs(acc) / 3.0);
                        }

            // lowered-index route for the first two blocks
            Eigen::MatrixXd g = m.eval(s.x);
            Eigen::MatrixXd gi = m.eval_inverse(s.x);
            auto dg = m.eval_dg(s.x);
            Eigen::VectorXd p_low = g * pv;
            Eigen::MatrixXd Lg(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double acc = 0;
                    for (int k = 0; k < n; ++k)
                        acc += eta(k) * dg[k](i, j) + g(k, j) * deta(k, i) + g(i, k) * deta(k, j);
                    Lg(i, j) = acc;
                }
            Eigen::MatrixXd Lginv = -gi * Lg * gi;
            Eigen::VectorXd Lp_low(n);
            for (int j = 0; j < n; ++j) {
                double acc = 0;
                for (int k = 0; k < n; ++k) {
                    double dk_plow = 0;
                    for (int l = 0; l < n; ++l)
                        dk_plow += dg[k](j, l) * pv(l) + g(j, l) * dpv(l, k);
                    acc += eta(k) * dk_plow + p_low(k) * deta(k, j);
                }
                Lp_low(j) = acc;
            }
            for (int i = 0; i < n; ++i) {
                double acc = eta_tt(i) + 2.0 * xi_t * pv(i);
                for (int j = 0; j < n; ++j) acc += Lginv(i, j) * p_low(j) + gi(i, j) * Lp_low(j);
                rep.alt_force = std::max(rep.alt_force, std::fabs(acc));
                rep.route_gap_force = std::max(rep.route_gap_force, std::fabs(acc - blockA(i)));
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double acc = 2.0 * deta_t(i, j) + xi_j(j) * pv(i);
                    if (i == j) acc += 2.0 * xi_dot_p - xi_tt;
                    for (int k = 0; k < n; ++k) acc += 2.0 * G[i](j, k) * eta_t(k);
                    rep.alt_mixed = std::max(rep.alt_mixed, std::fabs(acc));
                    rep.route_gap_mixed =
                        std::max(rep.route_gap_mixed, std::fabs(acc - blockB(i, j)));
                }

            ++rep.evaluated;
        } catch (const EvalError&) {
            ++rep.skipped;
        }
    }
    rep.pass = rep.evaluated > 0 && rep.max_residual() <= tol;
    return rep;
}

NoetherConditionReport noether_conditions(const SymmetryVector& X, const Metric& m,
                                          const Expr& V, const Expr& gauge,
                                          const std::vector<Sample>& samples, double tol) {
    const int n = m.dim();
    if (X.dim() != n) throw std::invalid_argument("dimension mismatch in noether_conditions");
    NoetherConditionReport rep;
    rep.tol = tol;

    VectorDerivatives D(X);
    std::vector<Expr> dV(n), df(n);
    for (int k = 0; k < n; ++k) {
        dV[k] = V.diff_coord(k);
        df[k] = gauge.diff_coord(k);
    }
    Expr f_t = gauge.diff_time();

    for (const Sample& s : samples) {
        try {
            double xi_t = eval_at(D.xi_t, s);
            for (int j = 0; j < n; ++j)
                rep.res_xi_spatial = std::max(rep.res_xi_spatial, std::fabs(eval_at(D.xi_j[j], s)));

            Eigen::MatrixXd g = m.eval(s.x);
            auto dg = m.eval_dg(s.x);
            Eigen::VectorXd eta(n), eta_t(n);
            Eigen::MatrixXd deta(n, n);
            for (int i = 0; i < n; ++i) {
                eta(i) = eval_at(D.eta[i], s);
                eta_t(i) = eval_at(D.eta_t[i], s);
                for (int j = 0; j < n; ++j) deta(i, j) = eval_at(D.eta_j[i][j], s);
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double acc = -xi_t * g(i, j);
                    for (int k = 0; k < n; ++k)
                        acc += eta(k) * dg[k](i, j) + g(k, j) * deta(k, i) + g(i, k) * deta(k, j);
                    rep.res_metric = std::max(rep.res_metric, std::fabs(acc));
                }
            double e2 = V.eval(s.x, s.t) * xi_t + eval_at(f_t, s);
            for (int k = 0; k < n; ++k) e2 += eval_at(dV[k], s) * eta(k);
            rep.res_energy = std::max(rep.res_energy, std::fabs(e2));
            for (int i = 0; i < n; ++i) {
                double acc = -eval_at(df[i], s);
                for (int j = 0; j < n; ++j) acc += g(i, j) * eta_t(j);
                rep.res_momentum = std::max(rep.res_momentum, std::fabs(acc));
            }
            ++rep.evaluated;
        } catch (const EvalError&) {
            ++rep.skipped;
        }
    }
    rep.pass = rep.evaluated > 0 && rep.max_residual() <= tol;
    return rep;
}

// ---------------------------------------------------------------------------
// time profiles
// ---------------------------------------------------------------------------

double TimeProfile::T(double t) const {
    if (m > 0) {
        double s = std::sqrt(m);
        return c1 * std::exp(s * t) + c2 * std::exp(-s * t);
    }
    if (m < 0) {
        double w = std::sqrt(-m);
        return c1 * std::cos(w * t) + c2 * std::sin(w * t);
    }
    return c1 + c2 * t;
}

double TimeProfile::dT(double t) const {
    if (m > 0) {
        double s = std::sqrt(m);
        return s * (c1 * std::exp(s * t) - c2 * std::exp(-s * t));
    }
    if (m < 0) {
        double w = std::sqrt(-m);
        return w * (-c1 * std::sin(w * t) + c2 * std::cos(w * t));
    }
    return c2;
}

double TimeProfile::intT(double t) const {
    if (m > 0) {
        double s = std::sqrt(m);
        return (c1 / s) * std::exp(s * t) - (c2 / s) * std::exp(-s * t);
    }
    if (m < 0) {
        double w = std::sqrt(-m);
        return (c1 / w) * std::sin(w * t) - (c2 / w) * std::cos(w * t);
    }
    return c1 * t + 0.5 * c2 * t * t;
}

Expr TimeProfile::T_expr() const {
    Expr t = Expr::time_var();
    if (m > 0) {
        double s = std::sqrt(m);
        return Expr::number(c1) * Expr::exp(Expr::number(s) * t) +
               Expr::number(c2) * Expr::exp(Expr::number(-s) * t);
    }
    if (m < 0) {
        double w = std::sqrt(-m);
        return Expr::number(c1) * Expr::cos(Expr::number(w) * t) +
               Expr::number(c2) * Expr::sin(Expr::number(w) * t);
    }
    return Expr::number(c1) + Expr::number(c2) * t;
}

Expr TimeProfile::dT_expr() const {
    Expr t = Expr::time_var();
    if (m > 0) {
        double s = std::sqrt(m);
        return Expr::number(s * c1) * Expr::exp(Expr::number(s) * t) -
               Expr::number(s * c2) * Expr::exp(Expr::number(-s) * t);
    }
    if (m < 0) {
        double w = std::sqrt(-m);
        return Expr::number(-w * c1) * Expr::sin(Expr::number(w) * t) +
               Expr::number(w * c2) * Expr::cos(Expr::number(w) * t);
    }
    return Expr::number(c2);
}

Expr TimeProfile::intT_expr() const {
    Expr t = Expr::time_var();
    if (m > 0) {
        double s = std::sqrt(m);
        return Expr::number(c1 / s) * Expr::exp(Expr::number(s) * t) -
               Expr::number(c2 / s) * Expr::exp(Expr::number(-s) * t);
    }
    if (m < 0) {
        double w = std::sqrt(-m);
        return Expr::number(c1 / w) * Expr::sin(Expr::number(w) * t) -
               Expr::number(c2 / w) * Expr::cos(Expr::number(w) * t);
    }
    return Expr::number(c1) * t + Expr::number(0.5 * c2) * t * t;
}

// ---------------------------------------------------------------------------
// finders
// ---------------------------------------------------------------------------

namespace {

// snap a floating coefficient to a small rational when very close
std::optional<Rational> snap_rational(double v, double tol = 1e-9, long long max_den = 48) {
    for (long long q = 1; q <= max_den; ++q) {
        double pq = v * static_cast<double>(q);
        double r = std::round(pq);
        if (std::fabs(pq - r) <= tol * static_cast<double>(q) && std::fabs(r) < 1e15)
            return Rational(static_cast<long long>(r), q);
    }
    return std::nullopt;
}

std::string fmt_coeff(double v) {
    if (auto r = snap_rational(v)) {
        if (denominator(*r) == 1) return numerator(*r).str();
        return numerator(*r).str() + "/" + denominator(*r).str();
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Expr coeff_expr(double v) {
    if (auto r = snap_rational(v)) return Expr::number(*r);
    return Expr::number(v);
}

}  // namespace

FinderResult find_noether_case1(const CollineationBasis& basis, const Metric& m, const Expr& V,
                                const std::vector<Sample>& samples, const SampleBox& box,
                                const FinderOptions& opts) {
    FinderResult out;
    const int n = m.dim();
    const int k = static_cast<int>(basis.claims.size());
    if (k == 0) return out;
    const int cols = k + 1;
    if (static_cast<int>(samples.size()) < 3 * cols)
        out.warnings.push_back("sample count below 3x(basis size + 1); results may be unreliable");

    std::vector<Expr> dV(n);
    for (int i = 0; i < n; ++i) dV[i] = V.diff_coord(i);

    auto column_value = [&](int a, const std::vector<double>& x) {
        const CollineationClaim& c = basis.claims[a];
        double acc = 0;
        for (int i = 0; i < n; ++i) acc += c.vec.eta[i].eval(x) * dV[i].eval(x);
        double psi = (c.kind == CollKind::HV) ? c.psi : 0.0;
        if (psi != 0.0) acc += 2.0 * psi * V.eval(x);
        return acc;
    };

    auto fill_matrix = [&](const std::vector<Sample>& pts, Eigen::MatrixXd& A) {
        A.resize(static_cast<int>(pts.size()), cols);
        for (int r = 0; r < static_cast<int>(pts.size()); ++r) {
            for (int a = 0; a < k; ++a) A(r, a) = column_value(a, pts[r].x);
            A(r, k) = 1.0;
        }
    };

    Eigen::MatrixXd A;
    fill_matrix(samples, A);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    double threshold = opts.rank_rel_threshold * std::max(smax, 1.0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold / 10 && sv(i) < threshold * 10)
            out.warnings.push_back(
                "rank decision ambiguity: singular value " + std::to_string(sv(i)) +
                " within 10x of threshold; interpretations rank=" + std::to_string(rank) +
                " or rank=" + std::to_string(rank + (sv(i) <= threshold ? 1 : 0)));

    std::vector<Sample> fresh =
        halton_samples(box, static_cast<int>(samples.size()), opts.fresh_seed, &m.chart(), 0.1);
    Eigen::MatrixXd Afresh;
    fill_matrix(fresh, Afresh);
    double col_scale = std::max(1.0, Afresh.cwiseAbs().maxCoeff());

    for (int c = rank; c < cols; ++c) {
        Eigen::VectorXd v = svd.matrixV().col(c);
        // canonical scaling: first significant entry equal to one
        int lead = -1;
        for (int i = 0; i < cols; ++i)
            if (std::fabs(v(i)) > 1e-7) { lead = i; break; }
        if (lead < 0) continue;
        v /= v(lead);
        for (int i = 0; i < cols; ++i)
            if (auto r = snap_rational(v(i), 1e-7)) v(i) = to_double(*r);

        double res = (Afresh * v).cwiseAbs().maxCoeff();
        if (res > opts.verify_tol * col_scale) {
            out.warnings.push_back("candidate discarded: fresh-sample residual " +
                                   std::to_string(res));
            continue;
        }

        NoetherSymmetry s;
        s.ncase = NoetherCase::I;
        s.p = v(k);
        std::vector<Expr> Y(n);
        double psi = 0;
        std::ostringstream name;
        bool first = true;
        for (int a = 0; a < k; ++a) {
            if (std::fabs(v(a)) < 1e-12) continue;
            const CollineationClaim& cl = basis.claims[a];
            for (int i = 0; i < n; ++i) Y[i] = Y[i] + coeff_expr(v(a)) * cl.vec.eta[i];
            if (cl.kind == CollKind::HV) psi += v(a) * cl.psi;
            if (!first) name << (v(a) >= 0 ? " + " : " - ");
            else if (v(a) < 0) name << "-";
            double mag = std::fabs(v(a));
            if (std::fabs(mag - 1.0) > 1e-12) name << fmt_coeff(mag) << "*";
            name << cl.name;
            first = false;
        }
        s.psi = psi;
        s.space_part = Y;
        Expr xi;
        if (std::fabs(psi) > 1e-12) {
            xi = coeff_expr(2 * psi) * Expr::time_var();
            std::ostringstream full;
            full << fmt_coeff(2 * psi) << "t*dt + " << name.str();
            s.name = full.str();
        } else {
            s.name = name.str();
        }
        s.vec = SymmetryVector(m.chart(), xi, Y);
        s.gauge = coeff_expr(s.p) * Expr::time_var();
        s.coeffs.assign(v.data(), v.data() + cols);
        out.symmetries.push_back(std::move(s));
    }
    return out;
}

FinderResult find_noether_case2(const CollineationClaim& gradient_element, const Metric& m,
                                const Expr& V, const std::vector<Sample>& samples,
                                const FinderOptions& opts) {
    FinderResult out;
    const int n = m.dim();
    if (!gradient_element.gradient) {
        out.warnings.push_back(gradient_element.name + " is not a gradient element");
        return out;
    }
    double psi = (gradient_element.kind == CollKind::HV) ? gradient_element.psi : 0.0;
    const Expr& hfun = gradient_element.gradient_function;

    std::vector<Expr> dV(n);
    for (int i = 0; i < n; ++i) dV[i] = V.diff_coord(i);

    const int rows = static_cast<int>(samples.size());
    Eigen::MatrixXd A(rows, 2);
    Eigen::VectorXd b(rows);
    for (int r = 0; r < rows; ++r) {
        const auto& x = samples[r].x;
        A(r, 0) = hfun.eval(x);
        A(r, 1) = 1.0;
        double lv = 0;
        for (int i = 0; i < n; ++i) lv += gradient_element.vec.eta[i].eval(x) * dV[i].eval(x);
        b(r) = -(lv + 2.0 * psi * V.eval(x));
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd mp = svd.solve(b);
    double scale = std::max(1.0, std::max(A.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()));
    double res = (A * mp - b).cwiseAbs().maxCoeff();
    if (res > opts.verify_tol * scale) return out;  // inconsistent: no Case II symmetry
    const auto& sv2 = svd.singularValues();
    if (sv2.size() == 2 && sv2(1) < opts.rank_rel_threshold * 10 * std::max(sv2(0), 1.0))
        out.warnings.push_back("near-singular (m, p) system; constants may be underdetermined");

    double mval = mp(0), pval = mp(1);
    if (auto r = snap_rational(mval, 1e-8, 64)) mval = to_double(*r);
    if (auto r = snap_rational(pval, 1e-8, 64)) pval = to_double(*r);
    if (std::fabs(mval) < 1e-12) mval = 0.0;

    for (int branch = 0; branch < 2; ++branch) {
        TimeProfile tp;
        tp.m = mval;
        tp.c1 = branch == 0 ? 1.0 : 0.0;
        tp.c2 = branch == 0 ? 0.0 : 1.0;
        NoetherSymmetry s;
        s.ncase = NoetherCase::II;
        s.psi = psi;
        s.p = pval;
        s.m = mval;
        s.profile = tp;
        s.hfun = hfun;
        s.space_part = gradient_element.vec.eta;
        Expr T = tp.T_expr();
        std::vector<Expr> eta(n);
        for (int i = 0; i < n; ++i) eta[i] = T * gradient_element.vec.eta[i];
        Expr xi;
        if (psi != 0.0) xi = coeff_expr(2 * psi) * tp.intT_expr();
        s.vec = SymmetryVector(m.chart(), xi, eta);
        s.gauge = tp.dT_expr() * hfun + coeff_expr(pval) * tp.intT_expr();
        std::ostringstream name;
        name << "caseII[" << gradient_element.name << ", m=" << fmt_coeff(mval)
             << ", T=" << (branch == 0 ? "T1" : "T2") << "]";
        s.name = name.str();
        out.symmetries.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// integrals
// ---------------------------------------------------------------------------

NoetherIntegral::NoetherIntegral(std::string name, const NoetherSymmetry& s, const Metric& m,
                                 const Expr& V)
    : name_(std::move(name)),
      ncase_(s.ncase),
      psi_(s.psi),
      p_(s.p),
      profile_(s.profile),
      metric_(m),
      V_(V),
      space_part_(s.space_part),
      hfun_(s.hfun) {}

double NoetherIntegral::hamiltonian(const std::vector<double>& x,
                                    const std::vector<double>& v) const {
    const int n = metric_.dim();
    Eigen::MatrixXd g = metric_.eval(x);
    double kin = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kin += g(i, j) * v[i] * v[j];
    return 0.5 * kin + V_.eval(x);
}

double NoetherIntegral::operator()(double t, const std::vector<double>& x,
                                   const std::vector<double>& v) const {
    const int n = metric_.dim();
    Eigen::MatrixXd g = metric_.eval(x);
    double E = hamiltonian(x, v);
    double lowered = 0;
    for (int i = 0; i < n; ++i) {
        double yi = space_part_[i].eval(x);
        for (int j = 0; j < n; ++j) lowered += g(i, j) * yi * v[j];
    }
    if (ncase_ == NoetherCase::I) return 2.0 * psi_ * t * E - lowered + p_ * t;
    double it = profile_.intT(t);
    return 2.0 * psi_ * it * E - lowered * profile_.T(t) + profile_.dT(t) * hfun_.eval(x) +
           p_ * it;
}

NoetherIntegral build_noether_integral(const NoetherSymmetry& s, const Metric& m, const Expr& V) {
    return NoetherIntegral("I[" + s.name + "]", s, m, V);
}

std::vector<Expr> force_from_potential(const Metric& m, const Expr& V) {
    const int n = m.dim();
    if (!m.has_symbolic_inverse())
        throw std::invalid_argument("force_from_potential needs a symbolic metric inverse");
    std::vector<Expr> F(n);
    for (int i = 0; i < n; ++i) {
        Expr acc;
        for (int j = 0; j < n; ++j) acc = acc + m.ginv(i, j) * V.diff_coord(j);
        F[i] = -acc;
    }
    return F;
}

}  // namespace geonoether
