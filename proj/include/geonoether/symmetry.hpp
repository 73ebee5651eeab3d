#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geonoether/collineation.hpp"

namespace geonoether {

// Residual blocks of the point-symmetry conditions for
//   xdd^i + G^i_jk xd^j xd^k = F^i(x).
// Internally the blocks are evaluated on p = -F, the form in which the
// equations of motion read xdd + G xd xd + p = 0.
struct LieConditionReport {
    double res_force = 0.0;        // force block
    double res_mixed = 0.0;        // mixed t/x block
    double res_connection = 0.0;   // connection block
    double res_xi_hessian = 0.0;   // xi second-covariant-derivative block
    // same first two blocks assembled through the lowered-index route
    double alt_force = 0.0;
    double alt_mixed = 0.0;
    double route_gap_force = 0.0;  // |direct - lowered| agreement
    double route_gap_mixed = 0.0;
    int evaluated = 0;
    int skipped = 0;
    double tol = 0.0;
    bool pass = false;

    double max_residual() const;
};

LieConditionReport lie_conditions(const SymmetryVector& X, const Metric& m,
                                  const ChristoffelField& chris,
                                  const std::vector<Expr>& force,
                                  const std::vector<Sample>& samples, double tol);

// Residuals of the Noether point-symmetry conditions for the natural
// Lagrangian with potential V and gauge function f. xi must depend on t
// only; its spatial gradient is reported as its own residual block.
struct NoetherConditionReport {
    double res_xi_spatial = 0.0;
    double res_metric = 0.0;    // L_eta g - xi_t g
    double res_energy = 0.0;    // V_k eta^k + V xi_t + f_t
    double res_momentum = 0.0;  // g_ij eta^j_t - f_i
    int evaluated = 0;
    int skipped = 0;
    double tol = 0.0;
    bool pass = false;

    double max_residual() const;
};

NoetherConditionReport noether_conditions(const SymmetryVector& X, const Metric& m,
                                          const Expr& V, const Expr& gauge,
                                          const std::vector<Sample>& samples, double tol);

enum class NoetherCase { I, II };

// Closed form of T with T'' = m T.
struct TimeProfile {
    double m = 0.0;
    double c1 = 1.0, c2 = 0.0;

    double T(double t) const;
    double dT(double t) const;
    double intT(double t) const;  // antiderivative with zero constant
    Expr T_expr() const;
    Expr dT_expr() const;
    Expr intT_expr() const;
};

struct NoetherSymmetry {
    std::string name;
    NoetherCase ncase = NoetherCase::I;
    SymmetryVector vec;   // full generator xi(t) d_t + eta^i(t,x) d_i
    double psi = 0.0;
    double p = 0.0;
    double m = 0.0;               // Case II constant
    TimeProfile profile;          // Case II
    Expr gauge;                   // f(t,x)
    Expr hfun;                    // Case II generating function H(x)
    std::vector<Expr> space_part; // Case I: Y^i(x); Case II: H^{,i}(x)
    std::vector<double> coeffs;   // Case I: basis coefficients followed by p
};

struct FinderResult {
    std::vector<NoetherSymmetry> symmetries;
    std::vector<std::string> warnings;
};

struct FinderOptions {
    double rank_rel_threshold = 1e-9;  // relative to the largest singular value
    double verify_tol = 1e-8;
    unsigned fresh_seed = 1234;        // disjoint sample set for re-verification
};

// Case I: coefficient vectors (c_a, p) with
//   sum_a c_a (L_{Y_a} V + 2 psi_a V) + p = 0
// at every sample, via the nullspace of the sample-evaluation matrix. Mixed
// KV+HV combinations carry the shared factor psi from the HV coefficient.
FinderResult find_noether_case1(const CollineationBasis& basis, const Metric& m, const Expr& V,
                                const std::vector<Sample>& samples, const SampleBox& box,
                                const FinderOptions& opts = {});

// Case II: for one gradient element (vector, psi, generating function),
// solve L_H V + 2 psi V + m H + p = 0 for the constants (m, p); when
// consistent, both branches of T are returned as separate symmetries.
FinderResult find_noether_case2(const CollineationClaim& gradient_element, const Metric& m,
                                const Expr& V, const std::vector<Sample>& samples,
                                const FinderOptions& opts = {});

// First integral of a Noether symmetry, evaluated along states:
//   Case I :  I = 2 psi t E - g_ij Y^i xd^j + p t
//   Case II:  I = 2 psi (int T) E - g_ij H^{,i} xd^j T + T' H + p (int T)
// with E = (1/2) g_ij xd^i xd^j + V. Signs follow the construction above;
// the physics convention may differ by an overall sign.
class NoetherIntegral {
public:
    NoetherIntegral() = default;
    NoetherIntegral(std::string name, const NoetherSymmetry& s, const Metric& m, const Expr& V);

    const std::string& name() const { return name_; }
    double operator()(double t, const std::vector<double>& x, const std::vector<double>& v) const;
    double hamiltonian(const std::vector<double>& x, const std::vector<double>& v) const;

private:
    std::string name_;
    NoetherCase ncase_ = NoetherCase::I;
    double psi_ = 0, p_ = 0;
    TimeProfile profile_;
    Metric metric_;
    Expr V_;
    std::vector<Expr> space_part_;
    Expr hfun_;
};

NoetherIntegral build_noether_integral(const NoetherSymmetry& s, const Metric& m, const Expr& V);

// Force components F^i = -g^{ij} V_{,j} as expressions (symbolic inverse).
std::vector<Expr> force_from_potential(const Metric& m, const Expr& V);

}  // namespace geonoether
