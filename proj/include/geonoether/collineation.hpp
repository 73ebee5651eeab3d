#pragma once

#include <map>
#include <string>
#include <vector>

#include "geonoether/geometry.hpp"

namespace geonoether {

enum class CollKind { KV, HV, CKV, AC, PC, SPC };

std::string coll_kind_name(CollKind k);

// Exact polynomial in the chart coordinates: multi-index -> coefficient.
using PolyMap = std::map<std::vector<int>, Rational>;

struct CollineationClaim {
    std::string name;
    SymmetryVector vec;  // time-independent components
    CollKind kind = CollKind::KV;
    double psi = 0.0;    // HV factor
    Expr psi_expr;       // CKV conformal factor
    Expr phi;            // PC/SPC projection function
    bool gradient = false;
    Expr gradient_function;
    // exact component coefficients when the vector is polynomial (solver and
    // flat-catalog claims carry these; curved-space catalogs leave it empty)
    std::vector<PolyMap> exact_eta;
};

struct VerifyReport {
    double residual = 0.0;           // defining equation
    double gradient_residual = 0.0;  // lowered vector vs d(gradient function)
    double phi_residual = 0.0;       // SPC: second covariant derivative of phi
    int evaluated = 0;
    int skipped = 0;
    bool pass = false;
    std::string note;
};

VerifyReport verify_collineation(const CollineationClaim& claim, const Metric& m,
                                 const std::vector<Sample>& samples, double tol);

struct CollineationBasis {
    std::vector<CollineationClaim> claims;
    std::string provenance;  // "catalog" or "solver"
    std::vector<std::string> warnings;
};

// Flat-space projective algebra over the chart (x1..xn) with metric
// diag(signature): translations, signature-adjusted rotations/boosts, the
// dilation, the linear fields fixing the origin, and the special projective
// quadratics with linear projection function.
CollineationBasis flat_projective_catalog(int n, const std::vector<int>& signature);

// Exact determining-equation solver for constant metrics. Polynomial ansatz
// of total degree <= max_degree with rational unknowns; the defining equation
// becomes an exact linear system whose nullspace is returned in reduced
// row-echelon form under graded-lexicographic monomial order.
//
// Basis normalization (the affine algebra contains the isometries, so the
// raw solution spaces overlap): KV returns the full solution space; HV the
// unique echelon representative with nonzero homothetic factor (scaled to
// psi = 1); AC the solutions vanishing at the origin; SPC the pure-quadratic
// representatives paired with a nonzero linear projection function.
CollineationBasis solve_determining_equations(const Metric& m, CollKind kind, int max_degree);

// The three rotational isometries of the K = +1 / K = -1 surface in the
// (phi, theta) chart.
CollineationBasis sphere_killing_catalog(int K);

// Minisuperspace isometries: six non-gradient Killing fields plus the
// gradient homothety (2/3) d_lambda with function (8/3) e^{3 lambda}. The
// reduced (no scalar field) variant keeps the three that survive in 3d.
CollineationBasis bianchi_symmetry_catalog(bool with_scalar_field);

Metric make_flat_metric(int n, const std::vector<int>& signature);
Metric make_sphere_metric(int K);
Metric make_bianchi_metric(bool with_scalar_field);
Metric make_flat_polar_metric();  // (r, theta, z), ds^2 = dr^2 + r^2 dtheta^2 + dz^2

// Exact span comparison over the polynomial ansatz; claims must carry
// exact_eta. True when every vector of `sub` lies in the span of `super`.
bool claims_span_subset(const std::vector<CollineationClaim>& sub,
                        const std::vector<CollineationClaim>& super);

}  // namespace geonoether
