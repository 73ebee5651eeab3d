#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geonoether/symmetry.hpp"

namespace geonoether {

// Equations of motion  xdd^i = -G^i_jk xd^j xd^k + F^i(x).
struct EquationsOfMotion {
    Metric metric;
    ChristoffelField chris;
    std::vector<Expr> force;
    std::optional<Expr> potential;  // set when the force derives from a potential
    double locus_margin = 1e-2;     // integration halts this close to the excluded locus

    static EquationsOfMotion from_potential(const Metric& m, const Expr& V);
    static EquationsOfMotion from_force(const Metric& m, std::vector<Expr> F);

    int dim() const { return metric.dim(); }
    // state = (x, v), derivative = (v, a)
    void rhs(const double* state, double* deriv) const;
    double energy(const std::vector<double>& x, const std::vector<double>& v) const;
};

enum class IntegratorMethod { RK4, RK45 };

struct IntegrateOptions {
    IntegratorMethod method = IntegratorMethod::RK4;
    double step = 1e-3;  // RK4 fixed step
    double tol = 1e-10;  // RK45 absolute and relative tolerance
    double t0 = 0.0;
};

struct Trajectory {
    int dim = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> states;  // rows of size 2*dim
    std::string method;
    bool halted_on_locus = false;
    std::string diagnostic;

    std::vector<double> position(int row) const;
    std::vector<double> velocity(int row) const;
};

Trajectory integrate(const EquationsOfMotion& e, const std::vector<double>& x0,
                     const std::vector<double>& v0, double t1, const IntegrateOptions& opts);

struct DriftReport {
    struct Series {
        std::string name;
        double initial = 0.0;
        double abs_drift = 0.0;
        double rel_drift = 0.0;  // normalized by max(1, |initial|)
    };
    std::vector<Series> series;

    const Series& by_name(const std::string& name) const;
};

// Evaluates the Hamiltonian and each integral along the trajectory.
DriftReport conservation_drift(const EquationsOfMotion& e, const Trajectory& tr,
                               const std::vector<NoetherIntegral>& integrals);

// CSV with header  t, x1..xn, v1..vn, E, I_1..I_k  at 17 significant digits.
void write_trajectory_csv(std::ostream& os, const EquationsOfMotion& e, const Trajectory& tr,
                          const std::vector<NoetherIntegral>& integrals);

}  // namespace geonoether
