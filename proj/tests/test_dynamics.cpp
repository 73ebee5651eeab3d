#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "geonoether/scenarios.hpp"

using namespace geonoether;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("free particle and harmonic oscillator hit their closed forms") {
    Metric m = make_flat_metric(1, {1});
    auto free = EquationsOfMotion::from_potential(m, Expr());
    IntegrateOptions o;
    o.step = 1e-3;
    auto tr = integrate(free, {0.0}, {1.0}, 1.0, o);
    CHECK(std::fabs(tr.states.back()[0] - 1.0) <= 1e-12);

    Expr V = Expr::number(Rational(1, 2)) * Expr::pow_int(Expr::coord(0), 2);
    auto osc = EquationsOfMotion::from_potential(m, V);
    auto tr2 = integrate(osc, {1.0}, {0.0}, 2 * kPi, o);
    CHECK(std::fabs(tr2.states.back()[0] - 1.0) <= 1e-9);
}

TEST_CASE("surface equations of motion match the closed-form right-hand side") {
    Metric m = make_sphere_metric(1);
    Expr V = parse_expression("cos(theta)*sin(phi)", m.chart());
    auto e = EquationsOfMotion::from_potential(m, V);
    SampleBox box{{0.3, -1.0}, {1.2, 1.0}};
    for (const auto& s : halton_samples(box, 100, 0, &m.chart(), 0.1)) {
        double phi = s.x[0], th = s.x[1];
        double vphi = 0.4 * s.t - 0.3, vth = 0.9 - 0.5 * s.t;
        double state[4] = {phi, th, vphi, vth};
        double deriv[4];
        e.rhs(state, deriv);
        double sn = std::sin(phi), cn = std::cos(phi);
        double dVphi = std::cos(th) * cn, dVth = -std::sin(th) * sn;
        double acc_phi = sn * cn * vth * vth - dVphi;
        double acc_th = -2 * (cn / sn) * vth * vphi - dVth / (sn * sn);
        CHECK(std::fabs(deriv[2] - acc_phi) <= 1e-10 * (1 + std::fabs(acc_phi)));
        CHECK(std::fabs(deriv[3] - acc_th) <= 1e-10 * (1 + std::fabs(acc_th)));
    }
}

TEST_CASE("minisuperspace equations match the reduced Lagrangian system") {
    // zero scalar potential so the closed-form list is exact for every type
    for (BianchiType type : {BianchiType::I, BianchiType::II, BianchiType::IX}) {
        Scenario s = bianchi_scenario(make_bianchi_model(type, BianchiPotential::Zero));
        auto e = s.equations();
        Expr rstar = bianchi_rstar(bianchi_structure(type));
        for (const auto& smp : s.samples(100, 2)) {
            const auto& x = smp.x;
            std::vector<double> v = {0.3 * smp.t - 0.2, 0.1, -0.25, 0.4 * smp.t};
            std::vector<double> state = x;
            state.insert(state.end(), v.begin(), v.end());
            std::vector<double> deriv(8);
            e.rhs(state.data(), deriv.data());
            double rs = rstar.eval(x);
            double drs_dl = rstar.diff_coord(0).eval(x);
            double drs_b1 = rstar.diff_coord(1).eval(x);
            double drs_b2 = rstar.diff_coord(2).eval(x);
            // lambda: ldd + (3/2) ld^2 + (3/8)(b1d^2 + b2d^2) + (1/4) pd^2
            //         - (1/12) e^{-3l} d_l (e^{3l} R*) = 0   (zero potential)
            double lam_dd = -1.5 * v[0] * v[0] - 0.375 * (v[1] * v[1] + v[2] * v[2]) -
                            0.25 * v[3] * v[3] + (3 * rs + drs_dl) / 12.0;
            double b1_dd = -3 * v[0] * v[1] - drs_b1 / 3.0;
            double b2_dd = -3 * v[0] * v[2] - drs_b2 / 3.0;
            double phi_dd = -3 * v[3] * v[0];
            CHECK(std::fabs(deriv[4] - lam_dd) <= 1e-10 * (1 + std::fabs(lam_dd)));
            CHECK(std::fabs(deriv[5] - b1_dd) <= 1e-10 * (1 + std::fabs(b1_dd)));
            CHECK(std::fabs(deriv[6] - b2_dd) <= 1e-10 * (1 + std::fabs(b2_dd)));
            CHECK(std::fabs(deriv[7] - phi_dd) <= 1e-10 * (1 + std::fabs(phi_dd)));
        }
    }
}

TEST_CASE("minisuperspace potential terms carry the Lagrangian-derived factors") {
    // with V(phi) nonzero the scalar equation gains V'/2 and the expansion
    // equation V/4
    Scenario s = bianchi_scenario(make_bianchi_model(BianchiType::I, BianchiPotential::Exponential,
                                                     1.0, 2.0));
    auto e = s.equations();
    Expr V = exponential_potential(2.0, 1.0, s.metric.chart(), 3);
    for (const auto& smp : s.samples(50, 4)) {
        const auto& x = smp.x;
        std::vector<double> state = x;
        std::vector<double> v = {0.1, 0.05, -0.02, 0.3};
        state.insert(state.end(), v.begin(), v.end());
        std::vector<double> deriv(8);
        e.rhs(state.data(), deriv.data());
        double vval = V.eval(x), dv = V.diff_coord(3).eval(x);
        double lam_dd = -1.5 * v[0] * v[0] - 0.375 * (v[1] * v[1] + v[2] * v[2]) -
                        0.25 * v[3] * v[3] + 0.25 * vval;
        double phi_dd = -3 * v[3] * v[0] - 0.5 * dv;
        CHECK(std::fabs(deriv[4] - lam_dd) <= 1e-10 * (1 + std::fabs(lam_dd)));
        CHECK(std::fabs(deriv[7] - phi_dd) <= 1e-10 * (1 + std::fabs(phi_dd)));
    }
}

TEST_CASE("energy drift shrinks like the fourth power of the step") {
    Scenario s = make_scenario("sphere:K=1:row=1");
    auto e = s.equations();
    IntegrateOptions o;
    o.step = 1e-3;
    auto tr1 = integrate(e, s.x0, s.v0, 20.0, o);
    auto d1 = conservation_drift(e, tr1, {});
    CHECK(d1.series[0].rel_drift <= 1e-7);
    o.step = 5e-4;
    auto tr2 = integrate(e, s.x0, s.v0, 20.0, o);
    auto d2 = conservation_drift(e, tr2, {});
    double ratio = d1.series[0].abs_drift / d2.series[0].abs_drift;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
}

TEST_CASE("adapted integral is conserved, the mismatched one drifts") {
    Scenario s = make_scenario("sphere:K=1:row=1");  // V = cos(theta) sin(phi)
    auto e = s.equations();
    auto samples = s.samples(200, 0);
    auto found = find_noether_case1(s.catalog, s.metric, s.potential, samples, s.box);
    REQUIRE(found.symmetries.size() == 1);
    std::vector<NoetherIntegral> integrals;
    integrals.push_back(build_noether_integral(found.symmetries[0], s.metric, s.potential));
    // deliberately wrong integral: the axial current of a different potential
    NoetherSymmetry wrong;
    wrong.ncase = NoetherCase::I;
    wrong.name = "axial";
    wrong.space_part = s.catalog.claims[2].vec.eta;  // the d_theta generator
    wrong.vec = SymmetryVector(s.metric.chart(), Expr(), wrong.space_part);
    integrals.push_back(build_noether_integral(wrong, s.metric, s.potential));

    IntegrateOptions o;
    o.step = 1e-3;
    auto tr = integrate(e, s.x0, s.v0, 20.0, o);
    auto dr = conservation_drift(e, tr, integrals);
    CHECK(dr.series[0].rel_drift <= 1e-7);  // energy
    CHECK(dr.series[1].rel_drift <= 1e-7);  // adapted current
    CHECK(dr.series[2].rel_drift >= 1e-3);  // mismatched current
}

TEST_CASE("autonomous trajectories depend only on elapsed time") {
    Scenario s = make_scenario("sphere:K=1:row=3");
    auto e = s.equations();
    IntegrateOptions a;
    a.step = 1e-3;
    IntegrateOptions b = a;
    b.t0 = 5.0;
    auto tr1 = integrate(e, s.x0, s.v0, 3.0, a);
    auto tr2 = integrate(e, s.x0, s.v0, 8.0, b);
    REQUIRE(tr1.states.size() == tr2.states.size());
    for (std::size_t k = 0; k < tr1.states.size(); k += 500)
        for (int i = 0; i < 4; ++i)
            CHECK(std::fabs(tr1.states[k][i] - tr2.states[k][i]) <=
                  1e-12 * (1 + std::fabs(tr1.states[k][i])));
}

TEST_CASE("integration halts with a diagnostic near the degenerate locus") {
    Metric m = make_sphere_metric(1);
    auto e = EquationsOfMotion::from_potential(m, Expr());
    e.locus_margin = 0.05;
    IntegrateOptions o;
    o.step = 1e-3;
    // aim straight at the pole
    auto tr = integrate(e, {0.5, 0.0}, {-1.0, 0.0}, 5.0, o);
    CHECK(tr.halted_on_locus);
    CHECK_FALSE(tr.diagnostic.empty());
    CHECK(tr.times.back() < 5.0);
    // starting on the locus is rejected outright
    CHECK_THROWS_AS(integrate(e, {0.01, 0.0}, {1.0, 0.0}, 1.0, o), std::invalid_argument);
}

TEST_CASE("adaptive integrator reaches the requested accuracy") {
    Metric m = make_flat_metric(1, {1});
    Expr V = Expr::number(Rational(1, 2)) * Expr::pow_int(Expr::coord(0), 2);
    auto e = EquationsOfMotion::from_potential(m, V);
    IntegrateOptions o;
    o.method = IntegratorMethod::RK45;
    o.tol = 1e-10;
    auto tr = integrate(e, {1.0}, {0.0}, 2 * kPi, o);
    CHECK(std::fabs(tr.states.back()[0] - 1.0) <= 1e-6);
    auto dr = conservation_drift(e, tr, {});
    CHECK(dr.series[0].rel_drift <= 1e-7);
}

TEST_CASE("trajectory CSV layout and determinism") {
    Scenario s = make_scenario("sphere:K=1:row=3");
    auto e = s.equations();
    IntegrateOptions o;
    o.step = 1e-2;
    auto tr = integrate(e, s.x0, s.v0, 0.1, o);
    std::ostringstream a, b;
    write_trajectory_csv(a, e, tr, {});
    write_trajectory_csv(b, e, tr, {});
    CHECK(a.str() == b.str());
    std::string header = a.str().substr(0, a.str().find('\n'));
    CHECK(header == "t, x1, x2, v1, v2, E");
    // 17 significant digits survive a round trip
    CHECK(a.str().find("0.01") != std::string::npos);
}

TEST_CASE("found integrals drift no worse than a hundred times the energy") {
    for (const char* spec :
         {"sphere:K=1:row=1", "sphere:K=1:row=3", "bianchi:I:zero", "newtonian:noetherB1"}) {
        Scenario s = make_scenario(spec);
        auto e = s.equations();
        auto samples = s.samples(200, 0);
        std::vector<NoetherIntegral> integrals;
        auto r1 = find_noether_case1(s.catalog, s.metric, s.potential, samples, s.box);
        for (const auto& sym : r1.symmetries)
            integrals.push_back(build_noether_integral(sym, s.metric, s.potential));
        for (const auto& c : s.catalog.claims) {
            if (!c.gradient) continue;
            auto r2 = find_noether_case2(c, s.metric, s.potential, samples);
            for (const auto& sym : r2.symmetries)
                integrals.push_back(build_noether_integral(sym, s.metric, s.potential));
        }
        REQUIRE_FALSE(integrals.empty());
        auto tr = integrate(e, s.x0, s.v0, std::min(s.t_end, 10.0), s.sim);
        auto dr = conservation_drift(e, tr, integrals);
        double floor = std::max(dr.series[0].rel_drift, 1e-14);
        for (std::size_t k = 1; k < dr.series.size(); ++k) {
            INFO(spec << " " << dr.series[k].name);
            CHECK(dr.series[k].rel_drift <= 100.0 * floor);
        }
    }
}
