#include "geonoether/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace geonoether {

namespace {

// determinant of an r x r matrix of expressions by cofactor expansion
Expr expr_det(const std::vector<Expr>& a, int r) {
    if (r == 1) return a[0];
    Expr acc;
    for (int c = 0; c < r; ++c) {
        std::vector<Expr> minor;
        minor.reserve((r - 1) * (r - 1));
        for (int i = 1; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (j != c) minor.push_back(a[i * r + j]);
        Expr term = a[c] * expr_det(minor, r - 1);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

Metric::Metric(CoordinateChart chart, std::vector<std::vector<Expr>> components,
               std::vector<int> signature)
    : chart_(std::move(chart)), signature_(std::move(signature)) {
    const int n = chart_.dim();
    if (static_cast<int>(components.size()) != n)
        throw std::invalid_argument("metric component rows do not match chart dimension");
    comp_.resize(n * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(components[i].size()) != n)
            throw std::invalid_argument("metric component columns do not match chart dimension");
        for (int j = 0; j < n; ++j) comp_[i * n + j] = components[i][j];
    }
    dcomp_.resize(n * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                dcomp_[(i * n + j) * n + k] = comp_[i * n + j].diff_coord(k);
    if (n <= 4) {
        det_ = expr_det(comp_, n);
        inv_.resize(n * n);
        if (n == 1) {
            inv_[0] = Expr::integer(1) / comp_[0];
        } else {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    std::vector<Expr> minor;
                    minor.reserve((n - 1) * (n - 1));
                    for (int r = 0; r < n; ++r) {
                        if (r == j) continue;  // adjugate: transpose of cofactors
                        for (int c = 0; c < n; ++c)
                            if (c != i) minor.push_back(comp_[r * n + c]);
                    }
                    Expr cof = expr_det(minor, n - 1);
                    if ((i + j) % 2 == 1) cof = -cof;
                    inv_[i * n + j] = cof / det_;
                }
            }
        }
    }
}

Eigen::MatrixXd Metric::eval(const std::vector<double>& x) const {
    const int n = dim();
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = comp_[i * n + j].eval(x);
    return g;
}

Eigen::MatrixXd Metric::eval_inverse(const std::vector<double>& x) const {
    const int n = dim();
    if (has_symbolic_inverse()) {
        Eigen::MatrixXd gi(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gi(i, j) = inv_[i * n + j].eval(x);
        return gi;
    }
    Eigen::MatrixXd g = eval(x);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (!lu.isInvertible()) throw EvalError("metric is singular at the requested point");
    return lu.inverse();
}

std::vector<Eigen::MatrixXd> Metric::eval_dg(const std::vector<double>& x) const {
    const int n = dim();
    std::vector<Eigen::MatrixXd> dg(n, Eigen::MatrixXd(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dg[k](i, j) = dcomp_[(i * n + j) * n + k].eval(x);
    return dg;
}

ChristoffelField::ChristoffelField(const Metric& m) : metric_(m) {
    const int n = m.dim();
    if (!m.has_symbolic_inverse()) return;  // numeric fallback path
    gamma_.resize(n * n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = j; k < n; ++k) {
                Expr acc;
                for (int l = 0; l < n; ++l) {
                    Expr sum = m.dg(l, j, k) + m.dg(l, k, j) - m.dg(j, k, l);
                    acc = acc + m.ginv(i, l) * sum;
                }
                Expr half = Expr::number(Rational(1, 2)) * acc;
                gamma_[(i * n + j) * n + k] = half;
                gamma_[(i * n + k) * n + j] = half;
            }
        }
    }
    dgamma_.resize(n * n * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int mm = 0; mm < n; ++mm)
                    dgamma_[((i * n + j) * n + k) * n + mm] =
                        gamma_[(i * n + j) * n + k].diff_coord(mm);
}

const Expr& ChristoffelField::gamma(int i, int j, int k) const {
    const int n = metric_.dim();
    if (gamma_.empty()) throw std::logic_error("no symbolic connection for this metric");
    return gamma_[(i * n + j) * n + k];
}

std::vector<Eigen::MatrixXd> ChristoffelField::eval_numeric(const std::vector<double>& x) const {
    const int n = metric_.dim();
    Eigen::MatrixXd gi = metric_.eval_inverse(x);
    auto dg = metric_.eval_dg(x);
    std::vector<Eigen::MatrixXd> G(n, Eigen::MatrixXd::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double acc = 0;
                for (int l = 0; l < n; ++l)
                    acc += gi(i, l) * (dg[k](l, j) + dg[j](l, k) - dg[l](j, k));
                G[i](j, k) = 0.5 * acc;
            }
    return G;
}

std::vector<Eigen::MatrixXd> ChristoffelField::eval(const std::vector<double>& x) const {
    const int n = metric_.dim();
    if (gamma_.empty()) return eval_numeric(x);
    std::vector<Eigen::MatrixXd> G(n, Eigen::MatrixXd(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) G[i](j, k) = gamma_[(i * n + j) * n + k].eval(x);
    return G;
}

std::vector<std::vector<Eigen::MatrixXd>> ChristoffelField::eval_derivative(
    const std::vector<double>& x) const {
    const int n = metric_.dim();
    std::vector<std::vector<Eigen::MatrixXd>> dG(n,
                                                 std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd(n, n)));
    if (!dgamma_.empty()) {
        for (int mm = 0; mm < n; ++mm)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        dG[mm][i](j, k) = dgamma_[((i * n + j) * n + k) * n + mm].eval(x);
        return dG;
    }
    // numeric assembly from exact component derivatives:
    //   dG = (1/2)[d(ginv) S + ginv dS],  d(ginv) = -ginv dg ginv
    Eigen::MatrixXd gi = metric_.eval_inverse(x);
    auto dg = metric_.eval_dg(x);
    std::vector<Eigen::MatrixXd> dgi(n);
    for (int mm = 0; mm < n; ++mm) dgi[mm] = -gi * dg[mm] * gi;
    // second derivatives of the components
    std::vector<std::vector<Eigen::MatrixXd>> ddg(n, std::vector<Eigen::MatrixXd>(n));
    for (int k = 0; k < n; ++k)
        for (int mm = 0; mm < n; ++mm) {
            ddg[k][mm].resize(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    ddg[k][mm](i, j) = metric_.dg(i, j, k).diff_coord(mm).eval(x);
        }
    for (int mm = 0; mm < n; ++mm)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double acc = 0;
                    for (int l = 0; l < n; ++l) {
                        double S = dg[k](l, j) + dg[j](l, k) - dg[l](j, k);
                        double dS = ddg[k][mm](l, j) + ddg[j][mm](l, k) - ddg[l][mm](j, k);
                        acc += dgi[mm](i, l) * S + gi(i, l) * dS;
                    }
                    dG[mm][i](j, k) = 0.5 * acc;
                }
    return dG;
}

ChristoffelField christoffel(const Metric& m) { return ChristoffelField(m); }

SymmetryVector::SymmetryVector(CoordinateChart c, Expr xi_part, std::vector<Expr> eta_part)
    : chart(std::move(c)), xi(std::move(xi_part)), eta(std::move(eta_part)) {
    if (static_cast<int>(eta.size()) != chart.dim())
        throw std::invalid_argument("symmetry vector component count does not match chart");
}

Eigen::MatrixXd lie_derivative_metric(const SymmetryVector& X, const Metric& m,
                                      const std::vector<double>& x, double t) {
    const int n = m.dim();
    Eigen::VectorXd eta(n);
    Eigen::MatrixXd deta(n, n);  // deta(k, i) = eta^k_{,i}
    for (int k = 0; k < n; ++k) {
        eta(k) = X.eta[k].eval(x, t);
        for (int i = 0; i < n; ++i) deta(k, i) = X.eta[k].diff_coord(i).eval(x, t);
    }
    Eigen::MatrixXd g = m.eval(x);
    auto dg = m.eval_dg(x);
    Eigen::MatrixXd L(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0;
            for (int k = 0; k < n; ++k)
                acc += eta(k) * dg[k](i, j) + g(k, j) * deta(k, i) + g(i, k) * deta(k, j);
            L(i, j) = acc;
        }
    return L;
}

std::vector<Eigen::MatrixXd> lie_derivative_connection(const SymmetryVector& X,
                                                       const ChristoffelField& c,
                                                       const std::vector<double>& x, double t) {
    const int n = X.dim();
    Eigen::VectorXd eta(n);
    Eigen::MatrixXd deta(n, n);
    std::vector<Eigen::MatrixXd> ddeta(n, Eigen::MatrixXd(n, n));  // ddeta[i](j,k) = eta^i_{,jk}
    for (int i = 0; i < n; ++i) {
        eta(i) = X.eta[i].eval(x, t);
        for (int j = 0; j < n; ++j) {
            Expr d1 = X.eta[i].diff_coord(j);
            deta(i, j) = d1.eval(x, t);
            for (int k = j; k < n; ++k) {
                double v = d1.diff_coord(k).eval(x, t);
                ddeta[i](j, k) = v;
                ddeta[i](k, j) = v;
            }
        }
    }
    auto G = c.eval(x);
    auto dG = c.eval_derivative(x);
    std::vector<Eigen::MatrixXd> L(n, Eigen::MatrixXd(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double acc = ddeta[i](j, k);
                for (int mm = 0; mm < n; ++mm) {
                    acc += eta(mm) * dG[mm][i](j, k);
                    acc -= deta(i, mm) * G[mm](j, k);
                    acc += deta(mm, j) * G[i](mm, k);
                    acc += deta(mm, k) * G[i](j, mm);
                }
                L[i](j, k) = acc;
            }
    return L;
}

double metric_compatibility_residual(const Metric& m, const ChristoffelField& c,
                                     const std::vector<double>& x) {
    const int n = m.dim();
    Eigen::MatrixXd g = m.eval(x);
    auto dg = m.eval_dg(x);
    auto G = c.eval(x);
    double worst = 0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = dg[k](i, j);
                for (int l = 0; l < n; ++l)
                    acc -= G[l](k, i) * g(l, j) + G[l](k, j) * g(i, l);
                worst = std::max(worst, std::fabs(acc));
            }
    return worst;
}

}  // namespace geonoether
