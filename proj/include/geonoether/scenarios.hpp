#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geonoether/dynamics.hpp"

namespace geonoether {

struct ExpectedSymmetry {
    enum class Check { Lie, Noether };

    std::string name;
    std::string provenance;  // catalog row, e.g. "bianchi-II:zero"
    Check check = Check::Noether;
    SymmetryVector vec;
    Expr gauge;  // Noether gauge function f(t,x)
    bool negative_control = false;
    // finder-agreement data for Case I entries: coefficients over the
    // scenario catalog followed by the constant p
    std::optional<std::vector<double>> case1_coeffs;
    bool is_case2 = false;
    double case2_m = 0.0;
};

struct Scenario {
    std::string name;
    Metric metric;
    ChristoffelField chris;
    Expr potential;            // zero expression when force-defined
    bool has_potential = true;
    std::vector<Expr> force;   // right-hand side of the equations of motion
    CollineationBasis catalog;
    std::vector<ExpectedSymmetry> expected;
    SampleBox box;
    double margin = 0.1;
    int default_samples = 200;
    unsigned seed = 0;
    // simulation defaults
    std::vector<double> x0, v0;
    double t_end = 10.0;
    IntegrateOptions sim;

    EquationsOfMotion equations() const;
    std::vector<Sample> samples(int count, unsigned seed_override) const;
};

// --- sphere ------------------------------------------------------------------

Scenario sphere_scenario(int K, const Expr& V);
// integrable-potential rows 1..7 with the outer function set to the identity
Scenario sphere_family_scenario(int K, int row, double a = 1, double b = 2, double c = 1);

// --- Newtonian families ------------------------------------------------------

struct NewtonianParams {
    double d = 1.0;
    double m = 1.0;
    double c1 = 1.0;
};

// ids: lieA1..lieA5, lieB1..lieB3, ermakov, noetherA1..noetherA3,
//      noetherB1..noetherB4
Scenario newtonian_scenario(const std::string& family, const NewtonianParams& params = {});

// --- Bianchi class A ---------------------------------------------------------

enum class BianchiType { I, II, VI0, VII0, VIII, IX };
enum class BianchiPotential { Vacuum, Zero, Constant, Arbitrary, Exponential };

struct BianchiModel {
    BianchiType type = BianchiType::I;
    std::array<int, 3> structure{0, 0, 0};
    Expr rstar;  // over the 3d chart (lambda, beta1, beta2); shared with 4d
    BianchiPotential family = BianchiPotential::Vacuum;
    double V0 = 1.0;
    double d = 2.0;  // exponential slope
};

std::string bianchi_type_name(BianchiType t);
std::string bianchi_potential_name(BianchiPotential p);
std::array<int, 3> bianchi_structure(BianchiType t);
// spatial curvature scalar for the structure triple, as an expression over
// the given chart (needs coordinates lambda, beta1, beta2 at indices 0..2)
Expr bianchi_rstar(const std::array<int, 3>& structure);

BianchiModel make_bianchi_model(BianchiType type, BianchiPotential family, double V0 = 1.0,
                                double d = 2.0);
Scenario bianchi_scenario(const BianchiModel& model);

// V(phi) = V0 exp(-d phi); rejects d = 0
Expr exponential_potential(double d, double V0, const CoordinateChart& chart, int phi_index);

// --- registry ----------------------------------------------------------------

// spec strings:  sphere:K=1:row=3 | sphere:K=-1:V=<expr> | bianchi:IX:constant
//              | bianchi:I:exponential:d=2 | newtonian:ermakov:m=4 | ...
Scenario make_scenario(const std::string& spec);
std::vector<std::string> scenario_examples();

}  // namespace geonoether
