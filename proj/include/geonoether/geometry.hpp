#pragma once

#include <Eigen/Dense>

#include <vector>

#include "geonoether/expr.hpp"
#include "geonoether/halton.hpp"

namespace geonoether {

// Symmetric metric with symbolic components. The symbolic inverse is built by
// adjugate/determinant for dim <= 4 (every built-in space); larger metrics
// fall back to per-point numeric inversion.
class Metric {
public:
    Metric() = default;
    Metric(CoordinateChart chart, std::vector<std::vector<Expr>> components,
           std::vector<int> signature);

    int dim() const { return chart_.dim(); }
    const CoordinateChart& chart() const { return chart_; }
    const std::vector<int>& signature() const { return signature_; }

    const Expr& g(int i, int j) const { return comp_[i * dim() + j]; }
    const Expr& dg(int i, int j, int k) const { return dcomp_[(i * dim() + j) * dim() + k]; }
    bool has_symbolic_inverse() const { return !inv_.empty(); }
    const Expr& ginv(int i, int j) const { return inv_[i * dim() + j]; }

    Eigen::MatrixXd eval(const std::vector<double>& x) const;
    Eigen::MatrixXd eval_inverse(const std::vector<double>& x) const;
    // dg[k](i,j) = g_ij,k
    std::vector<Eigen::MatrixXd> eval_dg(const std::vector<double>& x) const;

private:
    CoordinateChart chart_;
    std::vector<int> signature_;
    std::vector<Expr> comp_;   // n*n
    std::vector<Expr> dcomp_;  // n*n*n
    std::vector<Expr> inv_;    // n*n, empty when dim > 4
    Expr det_;
};

// Levi-Civita connection coefficients of a metric, with their first
// derivatives (needed by Lie derivatives of the connection).
class ChristoffelField {
public:
    ChristoffelField() = default;
    explicit ChristoffelField(const Metric& m);

    const Metric& metric() const { return metric_; }
    bool symbolic() const { return !gamma_.empty(); }
    const Expr& gamma(int i, int j, int k) const;

    // G[i](j,k)
    std::vector<Eigen::MatrixXd> eval(const std::vector<double>& x) const;
    // dG[i](j,k) for fixed m: layout [m][i](j,k)
    std::vector<std::vector<Eigen::MatrixXd>> eval_derivative(const std::vector<double>& x) const;

private:
    Metric metric_;
    std::vector<Expr> gamma_;   // n^3, i*(n*n)+j*n+k
    std::vector<Expr> dgamma_;  // n^4, (i*(n*n)+j*n+k)*n+m
    std::vector<Eigen::MatrixXd> eval_numeric(const std::vector<double>& x) const;
};

ChristoffelField christoffel(const Metric& m);

// Candidate point-symmetry generator xi(t,x) d_t + eta^i(t,x) d_i.
struct SymmetryVector {
    CoordinateChart chart;
    Expr xi;
    std::vector<Expr> eta;

    SymmetryVector() = default;
    SymmetryVector(CoordinateChart c, Expr xi_part, std::vector<Expr> eta_part);
    int dim() const { return chart.dim(); }
};

// (L_eta g)_ij at (t, x); time enters only as a parameter.
Eigen::MatrixXd lie_derivative_metric(const SymmetryVector& X, const Metric& m,
                                      const std::vector<double>& x, double t);

// (L_eta Gamma)^i_jk at (t, x); layout [i](j,k).
std::vector<Eigen::MatrixXd> lie_derivative_connection(const SymmetryVector& X,
                                                       const ChristoffelField& c,
                                                       const std::vector<double>& x, double t);

// Covariant derivative residual  g_ij,k - G^l_ki g_lj - G^l_kj g_il  (max abs).
double metric_compatibility_residual(const Metric& m, const ChristoffelField& c,
                                     const std::vector<double>& x);

}  // namespace geonoether
