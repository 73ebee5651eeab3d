#include "geonoether/scenarios.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace geonoether {

namespace {

Expr num(double v) { return Expr::number(v); }
Expr rat(long long p, long long q) { return Expr::number(Rational(p, q)); }

struct Part {
    std::string name;
    double c;
};

const CollineationClaim& claim_by_name(const CollineationBasis& cat, const std::string& name) {
    for (const auto& c : cat.claims)
        if (c.name == name) return c;
    throw std::out_of_range("no catalog claim named " + name);
}

// eta = sum of catalog claims; psi accumulates HV coefficients; coeffs are
// laid out over the catalog order with the Noether constant p appended
std::vector<Expr> combo_eta(const CollineationBasis& cat, const std::vector<Part>& parts,
                            double* psi_out, std::vector<double>* coeffs_out, double p = 0.0) {
    const int n = cat.claims.empty() ? 0 : cat.claims.front().vec.dim();
    std::vector<Expr> eta(n);
    double psi = 0.0;
    std::vector<double> coeffs(cat.claims.size() + 1, 0.0);
    for (const Part& part : parts) {
        const CollineationClaim& c = claim_by_name(cat, part.name);
        for (int i = 0; i < n; ++i)
            eta[i] = eta[i] + num(part.c) * c.vec.eta[i];
        if (c.kind == CollKind::HV) psi += part.c * c.psi;
        for (std::size_t a = 0; a < cat.claims.size(); ++a)
            if (cat.claims[a].name == part.name) coeffs[a] += part.c;
    }
    coeffs.back() = p;
    if (psi_out) *psi_out = psi;
    if (coeffs_out) *coeffs_out = coeffs;
    return eta;
}

ExpectedSymmetry time_translation(const CoordinateChart& chart, const std::string& provenance) {
    ExpectedSymmetry e;
    e.name = "d_t";
    e.provenance = provenance;
    e.check = ExpectedSymmetry::Check::Noether;
    e.vec = SymmetryVector(chart, Expr::integer(1), std::vector<Expr>(chart.dim()));
    return e;
}

// Case I entry: X = 2 psi t d_t + Y, gauge p t
ExpectedSymmetry case1_entry(const CollineationBasis& cat, const CoordinateChart& chart,
                             const std::string& name, const std::vector<Part>& parts, double p,
                             const std::string& provenance) {
    ExpectedSymmetry e;
    e.name = name;
    e.provenance = provenance;
    e.check = ExpectedSymmetry::Check::Noether;
    double psi = 0;
    std::vector<double> coeffs;
    std::vector<Expr> eta = combo_eta(cat, parts, &psi, &coeffs, p);
    Expr xi;
    if (psi != 0.0) xi = num(2 * psi) * Expr::time_var();
    e.vec = SymmetryVector(chart, xi, eta);
    e.gauge = num(p) * Expr::time_var();
    e.case1_coeffs = coeffs;
    return e;
}

// Lie entry: X = c t d_t + (combo)
ExpectedSymmetry lie_entry(const CollineationBasis& cat, const CoordinateChart& chart,
                           const std::string& name, double t_coeff, const std::vector<Part>& parts,
                           const std::string& provenance) {
    ExpectedSymmetry e;
    e.name = name;
    e.provenance = provenance;
    e.check = ExpectedSymmetry::Check::Lie;
    std::vector<Expr> eta = combo_eta(cat, parts, nullptr, nullptr);
    Expr xi;
    if (t_coeff != 0.0) xi = num(t_coeff) * Expr::time_var();
    e.vec = SymmetryVector(chart, xi, eta);
    return e;
}

ExpectedSymmetry lie_time_entry(const CoordinateChart& chart, const std::string& name,
                                const Expr& xi, const std::string& provenance) {
    ExpectedSymmetry e;
    e.name = name;
    e.provenance = provenance;
    e.check = ExpectedSymmetry::Check::Lie;
    e.vec = SymmetryVector(chart, xi, std::vector<Expr>(chart.dim()));
    return e;
}

}  // namespace

EquationsOfMotion Scenario::equations() const {
    if (has_potential) return EquationsOfMotion::from_potential(metric, potential);
    return EquationsOfMotion::from_force(metric, force);
}

std::vector<Sample> Scenario::samples(int count, unsigned seed_override) const {
    return halton_samples(box, count, seed_override, &metric.chart(), margin);
}

// ---------------------------------------------------------------------------
// sphere
// ---------------------------------------------------------------------------

Scenario sphere_scenario(int K, const Expr& V) {
    Scenario s;
    s.name = "sphere:K=" + std::to_string(K);
    s.metric = make_sphere_metric(K);
    s.chris = ChristoffelField(s.metric);
    s.potential = V;
    s.has_potential = true;
    s.force = force_from_potential(s.metric, V);
    s.catalog = sphere_killing_catalog(K);
    s.box = SampleBox{{0.3, -1.0}, {1.2, 1.0}, 0.0, 2.0};
    s.x0 = {1.1, 0.4};
    s.v0 = {0.25, 0.35};
    s.t_end = 20.0;
    s.expected.push_back(time_translation(s.metric.chart(), s.name));
    return s;
}

Scenario sphere_family_scenario(int K, int row, double a, double b, double c) {
    Metric m = make_sphere_metric(K);
    const CoordinateChart& chart = m.chart();
    Expr phi = Expr::coord(0), theta = Expr::coord(1);
    Expr sinn = (K == 1) ? Expr::sin(phi) : Expr::sinh(phi);
    Expr cosn = (K == 1) ? Expr::cos(phi) : Expr::cosh(phi);
    Expr kc = Expr::integer(K);

    Expr V;
    std::vector<Part> parts;
    switch (row) {
        case 1:
            V = Expr::cos(theta) * sinn;
            parts = {{"Y1", 1}};
            break;
        case 2:
            V = Expr::sin(theta) * sinn;
            parts = {{"Y2", 1}};
            break;
        case 3:
            V = phi;
            parts = {{"Y3", 1}};
            break;
        case 4: {
            Expr tn = Expr::tan(theta);
            V = (Expr::integer(1) + tn * tn) /
                (sinn * sinn * Expr::pow_int(num(a) - num(b) * tn, 2));
            parts = {{"Y1", a}, {"Y2", b}};
            break;
        }
        case 5:
            V = num(a) * Expr::cos(theta) * sinn - kc * num(b) * cosn;
            parts = {{"Y1", a}, {"Y3", b}};
            break;
        case 6:
            // with this argument the annihilating combination carries -b on
            // Y3 (the theta -> theta - pi/2 image of row 5 flips Y2)
            V = num(a) * Expr::sin(theta) * sinn - kc * num(b) * cosn;
            parts = {{"Y2", a}, {"Y3", -b}};
            break;
        case 7:
            V = (num(a) * Expr::cos(theta) - num(b) * Expr::sin(theta)) * sinn -
                kc * num(c) * cosn;
            parts = {{"Y1", a}, {"Y2", b}, {"Y3", c}};
            break;
        default:
            throw std::invalid_argument("sphere family row must be 1..7");
    }
    Scenario s = sphere_scenario(K, V);
    std::ostringstream nm;
    nm << "sphere:K=" << K << ":row=" << row;
    s.name = nm.str();
    std::string prov = "sphere-potentials:" + std::to_string(row);
    if (row == 4) s.box = SampleBox{{0.35, -0.6}, {1.2, 0.3}, 0.0, 2.0};
    std::ostringstream gen;
    bool first = true;
    for (auto& pt : parts) {
        if (!first) gen << " + ";
        if (pt.c != 1) gen << pt.c << "*";
        gen << pt.name;
        first = false;
    }
    ExpectedSymmetry e = case1_entry(s.catalog, chart, gen.str(), parts, 0.0, prov);
    s.expected.push_back(std::move(e));
    return s;
}

// ---------------------------------------------------------------------------
// Newtonian families
// ---------------------------------------------------------------------------

namespace {

CoordinateChart flat3_chart(bool exclude_origin_axes) {
    CoordinateChart chart({"x1", "x2", "x3"});
    if (exclude_origin_axes)
        for (int i = 0; i < 3; ++i) chart.excluded.push_back(Expr::coord(i));
    return chart;
}

Metric flat3_metric(bool exclude_origin_axes) {
    CoordinateChart chart = flat3_chart(exclude_origin_axes);
    std::vector<std::vector<Expr>> comps(3, std::vector<Expr>(3));
    for (int i = 0; i < 3; ++i) comps[i][i] = Expr::integer(1);
    return Metric(chart, comps, {1, 1, 1});
}

CollineationBasis flat3_homothetic_catalog() {
    CollineationBasis full = flat_projective_catalog(3, {1, 1, 1});
    CollineationBasis out;
    out.provenance = "catalog";
    for (auto& c : full.claims)
        if (c.kind == CollKind::KV || c.kind == CollKind::HV) out.claims.push_back(c);
    return out;
}

CollineationBasis polar_homothetic_catalog(const Metric& m) {
    const CoordinateChart& chart = m.chart();
    CollineationBasis out;
    out.provenance = "catalog";
    CollineationClaim rot;
    rot.name = "dtheta";
    rot.vec = SymmetryVector(chart, Expr(), {Expr(), Expr::integer(1), Expr()});
    rot.kind = CollKind::KV;
    out.claims.push_back(rot);
    CollineationClaim dz;
    dz.name = "dz";
    dz.vec = SymmetryVector(chart, Expr(), {Expr(), Expr(), Expr::integer(1)});
    dz.kind = CollKind::KV;
    dz.gradient = true;
    dz.gradient_function = Expr::coord(2);
    out.claims.push_back(dz);
    CollineationClaim h;
    h.name = "H";
    h.vec = SymmetryVector(chart, Expr(), {Expr::coord(0), Expr(), Expr::coord(2)});
    h.kind = CollKind::HV;
    h.psi = 1.0;
    h.gradient = true;
    h.gradient_function = rat(1, 2) * (Expr::pow_int(Expr::coord(0), 2) +
                                       Expr::pow_int(Expr::coord(2), 2));
    out.claims.push_back(h);
    return out;
}

ExpectedSymmetry lie_custom(const CoordinateChart& chart, const std::string& name, Expr xi,
                            std::vector<Expr> eta, const std::string& provenance) {
    ExpectedSymmetry e;
    e.name = name;
    e.provenance = provenance;
    e.check = ExpectedSymmetry::Check::Lie;
    e.vec = SymmetryVector(chart, std::move(xi), std::move(eta));
    return e;
}

ExpectedSymmetry noether_custom(const CoordinateChart& chart, const std::string& name, Expr xi,
                                std::vector<Expr> eta, Expr gauge,
                                const std::string& provenance) {
    ExpectedSymmetry e;
    e.name = name;
    e.provenance = provenance;
    e.check = ExpectedSymmetry::Check::Noether;
    e.vec = SymmetryVector(chart, std::move(xi), std::move(eta));
    e.gauge = std::move(gauge);
    return e;
}

}  // namespace

Scenario newtonian_scenario(const std::string& family, const NewtonianParams& prm) {
    Scenario s;
    s.name = "newtonian:" + family;
    s.box = SampleBox{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}, 0.0, 1.0};
    s.x0 = {0.8, 0.9, 1.0};
    s.v0 = {0.1, -0.2, 0.15};
    s.t_end = 2.0;
    const double d = prm.d, mconst = prm.m, c1 = prm.c1;
    const std::string prov = "newtonian:" + family;

    auto cart = [&](bool singular_axes) {
        s.metric = flat3_metric(singular_axes);
        s.chris = ChristoffelField(s.metric);
        s.catalog = flat3_homothetic_catalog();
        if (singular_axes) s.box = SampleBox{{0.5, 0.5, 0.5}, {1.5, 1.5, 1.5}, 0.0, 1.0};
    };
    auto X = [](int i) { return Expr::coord(i); };
    Expr tv = Expr::time_var();

    if (family == "lieA1") {
        // force -e^{-d x1} (1,1,1); symmetry (d/2) t d_t + d_1
        cart(false);
        Expr f = -Expr::exp(num(-d) * X(0));
        s.has_potential = false;
        s.force = {f, f, f};
        s.expected.push_back(lie_custom(s.metric.chart(), "(d/2)t*dt + d1", num(d / 2) * tv,
                                        {Expr::integer(1), Expr(), Expr()}, prov));
    } else if (family == "lieA2") {
        // polar chart; force -e^{-d theta} (1,1,1); symmetry (d/2) t d_t + d_theta
        s.metric = make_flat_polar_metric();
        s.chris = ChristoffelField(s.metric);
        s.catalog = polar_homothetic_catalog(s.metric);
        s.box = SampleBox{{0.5, -1.0, -1.0}, {1.5, 1.0, 1.0}, 0.0, 1.0};
        s.x0 = {1.0, 0.3, 0.2};
        s.v0 = {0.1, 0.2, -0.1};
        Expr f = -Expr::exp(num(-d) * X(1));
        s.has_potential = false;
        s.force = {f, f, f};
        s.expected.push_back(lie_custom(s.metric.chart(), "(d/2)t*dt + dtheta", num(d / 2) * tv,
                                        {Expr(), Expr::integer(1), Expr()}, prov));
    } else if (family == "lieA3") {
        // force -x1^{1-d} (1,1,1); symmetry (d/2) t d_t + x^i d_i
        cart(true);
        Expr f = -Expr::pow_int(X(0), 1 - static_cast<long long>(d));
        s.has_potential = false;
        s.force = {f, f, f};
        s.expected.push_back(lie_custom(s.metric.chart(), "(d/2)t*dt + H", num(d / 2) * tv,
                                        {X(0), X(1), X(2)}, prov));
    } else if (family == "lieA4") {
        // force (-x1^{1-d} f(x2,x3), 0, 0); symmetry (d/2) t d_t + x1 d_1
        cart(true);
        Expr f = -Expr::pow_int(X(0), 1 - static_cast<long long>(d)) *
                 (Expr::integer(1) + X(1) * X(2));
        s.has_potential = false;
        s.force = {f, Expr(), Expr()};
        s.expected.push_back(lie_custom(s.metric.chart(), "(d/2)t*dt + x1*d1", num(d / 2) * tv,
                                        {X(0), Expr(), Expr()}, prov));
    } else if (family == "lieA5") {
        // force -((x1/x2), 1, x3); symmetry x2 d_1
        cart(true);
        s.has_potential = false;
        s.force = {-(X(0) / X(1)), Expr::integer(-1), -X(2)};
        s.expected.push_back(
            lie_custom(s.metric.chart(), "x2*d1", Expr(), {X(1), Expr(), Expr()}, prov));
    } else if (family == "lieB1") {
        // force -(x2^2, 1, x2 + x3); symmetry t d_1
        cart(false);
        s.has_potential = false;
        s.force = {-Expr::pow_int(X(1), 2), Expr::integer(-1), -(X(1) + X(2))};
        s.expected.push_back(
            lie_custom(s.metric.chart(), "t*d1", Expr(), {tv, Expr(), Expr()}, prov));
    } else if (family == "lieB2") {
        // force -(x_i^-3); symmetry t^2 d_t + t x^i d_i
        cart(true);
        s.has_potential = false;
        s.force = {-Expr::pow_int(X(0), -3), -Expr::pow_int(X(1), -3), -Expr::pow_int(X(2), -3)};
        s.expected.push_back(lie_custom(s.metric.chart(), "t^2*dt + t*H", tv * tv,
                                        {tv * X(0), tv * X(1), tv * X(2)}, prov));
    } else if (family == "lieB3") {
        // force (m x_i - 1); symmetries e^{+-t sqrt m} d_1
        cart(false);
        double sq = std::sqrt(mconst);
        s.has_potential = false;
        s.force = {num(mconst) * X(0) - Expr::integer(1), num(mconst) * X(1) - Expr::integer(1),
                   num(mconst) * X(2) - Expr::integer(1)};
        for (int sign = -1; sign <= 1; sign += 2) {
            Expr ef = Expr::exp(num(sign * sq) * tv);
            std::string nm = sign > 0 ? "exp(+t sqrt m)*d1" : "exp(-t sqrt m)*d1";
            s.expected.push_back(lie_custom(s.metric.chart(), nm, Expr(), {ef, Expr(), Expr()}, prov));
        }
    } else if (family == "ermakov") {
        // force (m/4) x_i - x_i^{-3}; symmetries (1/sqrt m) e^{+-t sqrt m} d_t
        // + e^{+-t sqrt m} (x^i/2) d_i  (radial field normalized against the
        // squared-radius coordinate)
        cart(true);
        double sq = std::sqrt(mconst);
        s.has_potential = false;
        for (int i = 0; i < 3; ++i)
            s.force.push_back(num(mconst / 4) * X(i) - Expr::pow_int(X(i), -3));
        for (int sign = -1; sign <= 1; sign += 2) {
            Expr ef = Expr::exp(num(sign * sq) * tv);
            std::string nm = sign > 0 ? "(1/sqrt m)e^{+}dt + e^{+}R*dR"
                                      : "(1/sqrt m)e^{-}dt + e^{-}R*dR";
            s.expected.push_back(lie_custom(
                s.metric.chart(), nm, num(sign / sq) * ef,
                {ef * rat(1, 2) * X(0), ef * rat(1, 2) * X(1), ef * rat(1, 2) * X(2)}, prov));
        }
    } else if (family == "noetherA1") {
        // V = c1 x1 + x2^2 + x3 (d = 0 row); Noether d_1 with gauge -c1 t
        cart(false);
        s.potential = num(c1) * X(0) + Expr::pow_int(X(1), 2) + X(2);
        s.force = force_from_potential(s.metric, s.potential);
        s.expected.push_back(time_translation(s.metric.chart(), prov));
        s.expected.push_back(noether_custom(s.metric.chart(), "d1", Expr(),
                                            {Expr::integer(1), Expr(), Expr()},
                                            num(-c1) * tv, prov));
    } else if (family == "noetherA1x") {
        // exponential column of the same family; d = 2 is excluded
        if (d == 2.0) throw std::invalid_argument("family noetherA1x requires d != 2");
        cart(false);
        s.potential = Expr::exp(num(-d) * X(0)) * (Expr::integer(1) + Expr::pow_int(X(1), 2));
        s.force = force_from_potential(s.metric, s.potential);
        s.expected.push_back(time_translation(s.metric.chart(), prov));
    } else if (family == "noetherA2") {
        // polar: V = c1 theta + r^2; Noether d_theta with gauge -c1 t
        s.metric = make_flat_polar_metric();
        s.chris = ChristoffelField(s.metric);
        s.catalog = polar_homothetic_catalog(s.metric);
        s.box = SampleBox{{0.5, -1.0, -1.0}, {1.5, 1.0, 1.0}, 0.0, 1.0};
        s.x0 = {1.0, 0.3, 0.2};
        s.v0 = {0.1, 0.2, -0.1};
        s.potential = num(c1) * X(1) + Expr::pow_int(X(0), 2);
        s.force = force_from_potential(s.metric, s.potential);
        s.expected.push_back(time_translation(s.metric.chart(), prov));
        s.expected.push_back(noether_custom(s.metric.chart(), "dtheta", Expr(),
                                            {Expr(), Expr::integer(1), Expr()},
                                            num(-c1) * tv, prov));
    } else if (family == "noetherA3") {
        // V = 1/r^2; Noether 2t d_t + x^i d_i with zero gauge
        cart(true);
        Expr r2 = Expr::pow_int(X(0), 2) + Expr::pow_int(X(1), 2) + Expr::pow_int(X(2), 2);
        s.potential = Expr::integer(1) / r2;
        s.force = force_from_potential(s.metric, s.potential);
        s.expected.push_back(time_translation(s.metric.chart(), prov));
        s.expected.push_back(noether_custom(s.metric.chart(), "2t*dt + H", num(2) * tv,
                                            {X(0), X(1), X(2)}, Expr(), prov));
    } else if (family == "noetherB1") {
        // V = c1 x1 + x2^2; Noether t d_1 with gauge x1 - c1 t^2/2
        cart(false);
        s.potential = num(c1) * X(0) + Expr::pow_int(X(1), 2);
        s.force = force_from_potential(s.metric, s.potential);
        s.expected.push_back(time_translation(s.metric.chart(), prov));
        ExpectedSymmetry e = noether_custom(s.metric.chart(), "t*d1", Expr(),
                                            {tv, Expr(), Expr()},
                                            X(0) - num(c1 / 2) * tv * tv, prov);
        e.is_case2 = true;
        e.case2_m = 0.0;
        s.expected.push_back(std::move(e));
    } else if (family == "noetherB2") {
        // V = x1^{-2}; Noether t^2 d_t + t x^i d_i with gauge r^2/2
        cart(true);
        s.potential = Expr::pow_int(X(0), -2);
        s.force = force_from_potential(s.metric, s.potential);
        s.expected.push_back(time_translation(s.metric.chart(), prov));
        Expr r2 = Expr::pow_int(X(0), 2) + Expr::pow_int(X(1), 2) + Expr::pow_int(X(2), 2);
        ExpectedSymmetry e = noether_custom(s.metric.chart(), "t^2*dt + t*H", tv * tv,
                                            {tv * X(0), tv * X(1), tv * X(2)},
                                            rat(1, 2) * r2, prov);
        e.is_case2 = true;
        e.case2_m = 0.0;
        s.expected.push_back(std::move(e));
    } else if (family == "noetherB3") {
        // V = -(m/2) x1^2 + c1 x1 + x2^2; Noether e^{+-t sqrt m} d_1
        cart(false);
        double sq = std::sqrt(mconst);
        s.potential = num(-mconst / 2) * Expr::pow_int(X(0), 2) + num(c1) * X(0) +
                      Expr::pow_int(X(1), 2);
        s.force = force_from_potential(s.metric, s.potential);
        s.expected.push_back(time_translation(s.metric.chart(), prov));
        for (int sign = -1; sign <= 1; sign += 2) {
            Expr ef = Expr::exp(num(sign * sq) * tv);
            std::string nm = sign > 0 ? "exp(+t sqrt m)*d1" : "exp(-t sqrt m)*d1";
            Expr gauge = num(sign * sq) * ef * X(0) - num(c1 * sign / sq) * ef;
            ExpectedSymmetry e = noether_custom(s.metric.chart(), nm, Expr(),
                                                {ef, Expr(), Expr()}, gauge, prov);
            e.is_case2 = true;
            e.case2_m = mconst;
            s.expected.push_back(std::move(e));
        }
    } else if (family == "noetherB4") {
        // V = -(m/8) r^2 + x1^{-2}; Noether (2/sqrt m) e^{+-t sqrt m} d_t +
        // e^{+-t sqrt m} x^i d_i
        cart(true);
        double sq = std::sqrt(mconst);
        Expr r2 = Expr::pow_int(X(0), 2) + Expr::pow_int(X(1), 2) + Expr::pow_int(X(2), 2);
        s.potential = num(-mconst / 8) * r2 + Expr::pow_int(X(0), -2);
        s.force = force_from_potential(s.metric, s.potential);
        s.expected.push_back(time_translation(s.metric.chart(), prov));
        for (int sign = -1; sign <= 1; sign += 2) {
            Expr ef = Expr::exp(num(sign * sq) * tv);
            std::string nm = sign > 0 ? "(2/sqrt m)e^{+}dt + e^{+}H" : "(2/sqrt m)e^{-}dt + e^{-}H";
            Expr gauge = num(sign * sq) * ef * (rat(1, 2) * r2);
            ExpectedSymmetry e = noether_custom(s.metric.chart(), nm,
                                                num(2.0 * sign / sq) * ef,
                                                {ef * X(0), ef * X(1), ef * X(2)}, gauge, prov);
            e.is_case2 = true;
            e.case2_m = mconst;
            s.expected.push_back(std::move(e));
        }
    } else {
        throw std::invalid_argument("unknown newtonian family: " + family);
    }
    if (!s.has_potential) s.potential = Expr();
    return s;
}

// ---------------------------------------------------------------------------
// Bianchi class A
// ---------------------------------------------------------------------------

std::string bianchi_type_name(BianchiType t) {
    switch (t) {
        case BianchiType::I: return "I";
        case BianchiType::II: return "II";
        case BianchiType::VI0: return "VI0";
        case BianchiType::VII0: return "VII0";
        case BianchiType::VIII: return "VIII";
        case BianchiType::IX: return "IX";
    }
    return "?";
}

std::string bianchi_potential_name(BianchiPotential p) {
    switch (p) {
        case BianchiPotential::Vacuum: return "vacuum";
        case BianchiPotential::Zero: return "zero";
        case BianchiPotential::Constant: return "constant";
        case BianchiPotential::Arbitrary: return "arbitrary";
        case BianchiPotential::Exponential: return "exponential";
    }
    return "?";
}

std::array<int, 3> bianchi_structure(BianchiType t) {
    switch (t) {
        case BianchiType::I: return {0, 0, 0};
        case BianchiType::II: return {1, 0, 0};
        case BianchiType::VI0: return {1, -1, 0};
        case BianchiType::VII0: return {1, 1, 0};
        case BianchiType::VIII: return {1, 1, -1};
        case BianchiType::IX: return {1, 1, 1};
    }
    return {0, 0, 0};
}

Expr bianchi_rstar(const std::array<int, 3>& N) {
    Expr lam = Expr::coord(0), b1 = Expr::coord(1), b2 = Expr::coord(2);
    Expr s3 = Expr::sqrt(Expr::integer(3));
    Expr A = num(N[1]) * Expr::exp(s3 * b2) - num(N[2]) * Expr::exp(-(s3 * b2));
    Expr bracket = num(N[0] * N[0]) * Expr::exp(Expr::integer(4) * b1) +
                   Expr::exp(Expr::integer(-2) * b1) * A * A -
                   num(2.0 * N[0]) * Expr::exp(b1) * A;
    Expr r = rat(-1, 2) * Expr::exp(Expr::integer(-2) * lam) * bracket;
    double prod = static_cast<double>(N[0]) * N[1] * N[2];
    if (prod != 0.0) r = r + num(0.5 * prod * (1.0 + prod));
    return r;
}

BianchiModel make_bianchi_model(BianchiType type, BianchiPotential family, double V0, double d) {
    BianchiModel m;
    m.type = type;
    m.structure = bianchi_structure(type);
    m.rstar = bianchi_rstar(m.structure);
    m.family = family;
    m.V0 = V0;
    m.d = d;
    if (family == BianchiPotential::Exponential && d == 0.0)
        throw std::invalid_argument("exponential potential requires d != 0");
    if ((type == BianchiType::VIII || type == BianchiType::IX) &&
        family == BianchiPotential::Exponential)
        throw std::invalid_argument("no exponential-potential row for Bianchi VIII/IX");
    return m;
}

Expr exponential_potential(double d, double V0, const CoordinateChart& chart, int phi_index) {
    if (d == 0.0) throw std::invalid_argument("exponential potential requires d != 0");
    if (phi_index < 0 || phi_index >= chart.dim())
        throw std::invalid_argument("phi index outside chart");
    return num(V0) * Expr::exp(num(-d) * Expr::coord(phi_index));
}

namespace {

void bianchi_expected(Scenario& s, const BianchiModel& model) {
    const CoordinateChart& chart = s.metric.chart();
    const CollineationBasis& cat = s.catalog;
    const std::string prov =
        "bianchi-" + bianchi_type_name(model.type) + ":" + bianchi_potential_name(model.family);
    const bool scalar = model.family != BianchiPotential::Vacuum;
    const double d = model.d;
    Expr tv = Expr::time_var();
    Expr hfun = rat(8, 3) * Expr::exp(Expr::integer(3) * Expr::coord(0));

    auto noe = [&](const std::string& name, const std::vector<Part>& parts, double p = 0.0) {
        s.expected.push_back(case1_entry(cat, chart, name, parts, p, prov));
    };
    auto lie = [&](const std::string& name, double tc, const std::vector<Part>& parts) {
        s.expected.push_back(lie_entry(cat, chart, name, tc, parts, prov));
    };
    auto add_dt = [&] {
        s.expected.push_back(time_translation(chart, prov));
        ExpectedSymmetry lt = lie_time_entry(chart, "d_t (lie)", Expr::integer(1), prov);
        s.expected.push_back(std::move(lt));
    };
    // Case II pair: X = 2 psi intT d_t + T H^i, T = e^{+-Ct}, gauge T' H
    auto case2_pair = [&](double C) {
        const CollineationClaim& H = claim_by_name(cat, "H");
        for (int sign = -1; sign <= 1; sign += 2) {
            Expr ef = Expr::exp(num(sign * C) * tv);
            std::vector<Expr> eta(chart.dim());
            for (int i = 0; i < chart.dim(); ++i) eta[i] = ef * H.vec.eta[i];
            Expr xi = num(2.0 * sign / C) * ef;
            Expr gauge = num(sign * C) * ef * hfun;
            std::string nm = sign > 0 ? "(2/C)e^{+Ct}dt + e^{+Ct}H" : "-(2/C)e^{-Ct}dt + e^{-Ct}H";
            ExpectedSymmetry e = noether_custom(chart, nm, xi, eta, gauge, prov);
            e.is_case2 = true;
            e.case2_m = C * C;
            s.expected.push_back(std::move(e));
            ExpectedSymmetry el = lie_custom(chart, nm + " (lie)", xi, eta, prov);
            s.expected.push_back(std::move(el));
        }
    };
    // Case II pair with T = 1 and T = t
    auto case2_poly = [&] {
        const CollineationClaim& H = claim_by_name(cat, "H");
        std::vector<Expr> etaH = H.vec.eta;
        noe("2t*dt + H", {{"H", 1}});
        std::vector<Expr> eta_t(chart.dim());
        for (int i = 0; i < chart.dim(); ++i) eta_t[i] = tv * etaH[i];
        ExpectedSymmetry e =
            noether_custom(chart, "t^2*dt + t*H", tv * tv, eta_t, hfun, prov);
        e.is_case2 = true;
        e.case2_m = 0.0;
        s.expected.push_back(std::move(e));
        lie("H (lie)", 0, {{"H", 1}});
        ExpectedSymmetry el = lie_custom(chart, "t^2*dt + t*H (lie)", tv * tv, eta_t, prov);
        s.expected.push_back(std::move(el));
    };
    auto neg_noe = [&](const std::string& name, const std::vector<Part>& parts) {
        ExpectedSymmetry e = case1_entry(cat, chart, name + " [control]", parts, 0.0, prov);
        e.negative_control = true;
        e.case1_coeffs.reset();
        s.expected.push_back(std::move(e));
    };

    add_dt();
    const double r3 = std::sqrt(3.0);
    switch (model.type) {
        case BianchiType::I:
            switch (model.family) {
                case BianchiPotential::Vacuum:
                case BianchiPotential::Zero:
                    noe("Y1", {{"Y1", 1}});
                    noe("Y2", {{"Y2", 1}});
                    noe("Y4", {{"Y4", 1}});
                    if (scalar) {
                        noe("Y3", {{"Y3", 1}});
                        noe("Y5", {{"Y5", 1}});
                        noe("Y6", {{"Y6", 1}});
                    }
                    case2_poly();
                    lie("t*dt (lie)", 1, {});
                    lie("Y1 (lie)", 0, {{"Y1", 1}});
                    break;
                case BianchiPotential::Constant: {
                    noe("Y1", {{"Y1", 1}});
                    noe("Y2", {{"Y2", 1}});
                    noe("Y3", {{"Y3", 1}});
                    noe("Y4", {{"Y4", 1}});
                    noe("Y5", {{"Y5", 1}});
                    noe("Y6", {{"Y6", 1}});
                    case2_pair(std::sqrt(1.5 * model.V0));
                    lie("H (lie)", 0, {{"H", 1}});
                    neg_noe("2t*dt + H", {{"H", 1}});
                    break;
                }
                case BianchiPotential::Arbitrary:
                    noe("Y1", {{"Y1", 1}});
                    noe("Y2", {{"Y2", 1}});
                    noe("Y4", {{"Y4", 1}});
                    lie("H (lie)", 0, {{"H", 1}});
                    neg_noe("Y3", {{"Y3", 1}});
                    break;
                case BianchiPotential::Exponential:
                    noe("Y1", {{"Y1", 1}});
                    noe("Y2", {{"Y2", 1}});
                    noe("Y4", {{"Y4", 1}});
                    noe("2t*dt + H + (4/d)Y3", {{"H", 1}, {"Y3", 4.0 / d}});
                    lie("H (lie)", 0, {{"H", 1}});
                    lie("t*dt + (2/d)Y3 (lie)", 1, {{"Y3", 2.0 / d}});
                    neg_noe("Y3", {{"Y3", 1}});
                    break;
            }
            break;
        case BianchiType::II:
            switch (model.family) {
                case BianchiPotential::Vacuum:
                case BianchiPotential::Zero:
                    noe("Y2", {{"Y2", 1}});
                    if (scalar) {
                        noe("Y3", {{"Y3", 1}});
                        noe("Y6", {{"Y6", 1}});
                    }
                    noe("6t*dt + 3H - 2Y1", {{"H", 3}, {"Y1", -2}});
                    lie("(2/3)t*dt + H (lie)", 2.0 / 3, {{"H", 1}});
                    lie("2t*dt - Y1 (lie)", 2, {{"Y1", -1}});
                    break;
                case BianchiPotential::Constant:
                    noe("Y2", {{"Y2", 1}});
                    noe("Y3", {{"Y3", 1}});
                    noe("Y6", {{"Y6", 1}});
                    lie("3H + Y1 (lie)", 0, {{"H", 3}, {"Y1", 1}});
                    break;
                case BianchiPotential::Arbitrary:
                    noe("Y2", {{"Y2", 1}});
                    lie("3H + Y1 (lie)", 0, {{"H", 3}, {"Y1", 1}});
                    break;
                case BianchiPotential::Exponential:
                    noe("Y2", {{"Y2", 1}});
                    noe("2t*dt + H - (2/3)Y1 + (4/d)Y3",
                        {{"H", 1}, {"Y1", -2.0 / 3}, {"Y3", 4.0 / d}});
                    lie("3H + Y1 (lie)", 0, {{"H", 3}, {"Y1", 1}});
                    lie("2t*dt - Y1 + (4/d)Y3 (lie)", 2, {{"Y1", -1}, {"Y3", 4.0 / d}});
                    break;
            }
            neg_noe("Y1", {{"Y1", 1}});
            break;
        case BianchiType::VI0:
        case BianchiType::VII0:
            switch (model.family) {
                case BianchiPotential::Vacuum:
                case BianchiPotential::Zero:
                    if (scalar) noe("Y3", {{"Y3", 1}});
                    noe("6t*dt + 3H - 2Y1 - 2sqrt3 Y2",
                        {{"H", 3}, {"Y1", -2}, {"Y2", -2 * r3}});
                    lie("3H + Y1 + sqrt3 Y2 (lie)", 0, {{"H", 3}, {"Y1", 1}, {"Y2", r3}});
                    lie("2t*dt - Y1 - sqrt3 Y2 (lie)", 2, {{"Y1", -1}, {"Y2", -r3}});
                    break;
                case BianchiPotential::Constant:
                    noe("Y3", {{"Y3", 1}});
                    lie("3H + Y1 + sqrt3 Y2 (lie)", 0, {{"H", 3}, {"Y1", 1}, {"Y2", r3}});
                    break;
                case BianchiPotential::Arbitrary:
                    lie("3H + Y1 + sqrt3 Y2 (lie)", 0, {{"H", 3}, {"Y1", 1}, {"Y2", r3}});
                    break;
                case BianchiPotential::Exponential:
                    noe("6t*dt + 3H - 2Y1 - 2sqrt3 Y2 + (12/d)Y3",
                        {{"H", 3}, {"Y1", -2}, {"Y2", -2 * r3}, {"Y3", 12.0 / d}});
                    lie("3H + Y1 + sqrt3 Y2 (lie)", 0, {{"H", 3}, {"Y1", 1}, {"Y2", r3}});
                    lie("2t*dt - Y1 - sqrt3 Y2 + (4/d)Y3 (lie)", 2,
                        {{"Y1", -1}, {"Y2", -r3}, {"Y3", 4.0 / d}});
                    break;
            }
            neg_noe("Y1", {{"Y1", 1}});
            break;
        case BianchiType::VIII:
        case BianchiType::IX:
            if (scalar && model.family != BianchiPotential::Arbitrary) noe("Y3", {{"Y3", 1}});
            if (model.type == BianchiType::VIII &&
                (model.family == BianchiPotential::Vacuum ||
                 model.family == BianchiPotential::Zero)) {
                lie("(2/3)t*dt + H (lie)", 2.0 / 3, {{"H", 1}});
            }
            if (model.type == BianchiType::IX &&
                (model.family == BianchiPotential::Vacuum ||
                 model.family == BianchiPotential::Zero)) {
                // the constant curvature term removes the dilation-type symmetry
                ExpectedSymmetry e =
                    lie_entry(cat, chart, "(2/3)t*dt + H [control]", 2.0 / 3, {{"H", 1}}, prov);
                e.negative_control = true;
                s.expected.push_back(std::move(e));
            }
            neg_noe("Y1", {{"Y1", 1}});
            break;
    }
}

}  // namespace

Scenario bianchi_scenario(const BianchiModel& model) {
    Scenario s;
    const bool scalar = model.family != BianchiPotential::Vacuum;
    s.name = "bianchi:" + bianchi_type_name(model.type) + ":" +
             bianchi_potential_name(model.family);
    s.metric = make_bianchi_metric(scalar);
    s.chris = ChristoffelField(s.metric);
    s.catalog = bianchi_symmetry_catalog(scalar);
    const CoordinateChart& chart = s.metric.chart();

    Expr V;
    switch (model.family) {
        case BianchiPotential::Vacuum:
        case BianchiPotential::Zero:
            V = Expr();
            break;
        case BianchiPotential::Constant:
            V = num(model.V0);
            break;
        case BianchiPotential::Arbitrary:
            V = Expr::pow_int(Expr::coord(3), 2) + Expr::pow_int(Expr::coord(3), 3);
            break;
        case BianchiPotential::Exponential:
            V = exponential_potential(model.d, model.V0, chart, 3);
            break;
    }
    Expr U = -(Expr::exp(Expr::integer(3) * Expr::coord(0)) * (V + model.rstar));
    s.potential = U;
    s.has_potential = true;
    s.force = force_from_potential(s.metric, U);

    if (scalar) {
        s.box = SampleBox{{-0.4, -0.8, -0.8, -0.8}, {0.4, 0.8, 0.8, 0.8}, 0.0, 2.0};
        s.x0 = {0.0, 0.1, -0.05, 0.2};
        s.v0 = {0.05, 0.04, 0.03, 0.02};
    } else {
        s.box = SampleBox{{-0.4, -0.8, -0.8}, {0.4, 0.8, 0.8}, 0.0, 2.0};
        s.x0 = {0.0, 0.1, -0.05};
        s.v0 = {0.05, 0.04, 0.03};
    }
    s.t_end = 5.0;
    s.sim.method = IntegratorMethod::RK45;
    s.sim.tol = 1e-10;
    bianchi_expected(s, model);
    return s;
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::map<std::string, std::string> keyvals(const std::vector<std::string>& parts,
                                           std::size_t from) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = from; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        if (eq == std::string::npos)
            kv[parts[i]] = "";
        else
            kv[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
    }
    return kv;
}

}  // namespace

Scenario make_scenario(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty scenario spec");
    const std::string& kind = parts[0];
    if (kind == "sphere") {
        auto kv = keyvals(parts, 1);
        int K = kv.count("K") ? std::stoi(kv["K"]) : 1;
        if (kv.count("row"))
            return sphere_family_scenario(K, std::stoi(kv["row"]),
                                          kv.count("a") ? std::stod(kv["a"]) : 1,
                                          kv.count("b") ? std::stod(kv["b"]) : 2,
                                          kv.count("c") ? std::stod(kv["c"]) : 1);
        Metric m = make_sphere_metric(K);
        Expr V;
        if (kv.count("V") && !kv["V"].empty()) V = parse_expression(kv["V"], m.chart());
        return sphere_scenario(K, V);
    }
    if (kind == "bianchi") {
        if (parts.size() < 3) throw std::invalid_argument("bianchi spec: bianchi:<type>:<family>");
        BianchiType type;
        const std::string& t = parts[1];
        if (t == "I") type = BianchiType::I;
        else if (t == "II") type = BianchiType::II;
        else if (t == "VI0" || t == "VI") type = BianchiType::VI0;
        else if (t == "VII0" || t == "VII") type = BianchiType::VII0;
        else if (t == "VIII") type = BianchiType::VIII;
        else if (t == "IX") type = BianchiType::IX;
        else throw std::invalid_argument("unknown Bianchi type: " + t);
        BianchiPotential fam;
        const std::string& f = parts[2];
        if (f == "vacuum") fam = BianchiPotential::Vacuum;
        else if (f == "zero") fam = BianchiPotential::Zero;
        else if (f == "constant") fam = BianchiPotential::Constant;
        else if (f == "arbitrary") fam = BianchiPotential::Arbitrary;
        else if (f == "exponential") fam = BianchiPotential::Exponential;
        else throw std::invalid_argument("unknown Bianchi potential family: " + f);
        auto kv = keyvals(parts, 3);
        double V0 = kv.count("V0") ? std::stod(kv["V0"]) : 1.0;
        double d = kv.count("d") ? std::stod(kv["d"]) : 2.0;
        return bianchi_scenario(make_bianchi_model(type, fam, V0, d));
    }
    if (kind == "newtonian") {
        if (parts.size() < 2) throw std::invalid_argument("newtonian spec: newtonian:<family>");
        auto kv = keyvals(parts, 2);
        NewtonianParams prm;
        if (kv.count("d")) prm.d = std::stod(kv["d"]);
        if (kv.count("m")) prm.m = std::stod(kv["m"]);
        if (kv.count("c1")) prm.c1 = std::stod(kv["c1"]);
        return newtonian_scenario(parts[1], prm);
    }
    throw std::invalid_argument("unknown scenario kind: " + kind);
}

std::vector<std::string> scenario_examples() {
    return {
        "sphere:K=1:row=1",      "sphere:K=1:row=4",     "sphere:K=-1:row=3",
        "sphere:K=1:V=cos(theta)*sin(phi)",
        "bianchi:I:vacuum",      "bianchi:I:constant",   "bianchi:II:zero",
        "bianchi:VI0:exponential", "bianchi:IX:arbitrary",
        "newtonian:ermakov:m=4", "newtonian:lieB3:m=1",  "newtonian:noetherB1:c1=1",
    };
}

}  // namespace geonoether
