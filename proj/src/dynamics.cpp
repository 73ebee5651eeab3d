#include "geonoether/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace geonoether {

EquationsOfMotion EquationsOfMotion::from_potential(const Metric& m, const Expr& V) {
    EquationsOfMotion e;
    e.metric = m;
    e.chris = ChristoffelField(m);
    e.force = force_from_potential(m, V);
    e.potential = V;
    return e;
}

EquationsOfMotion EquationsOfMotion::from_force(const Metric& m, std::vector<Expr> F) {
    if (static_cast<int>(F.size()) != m.dim())
        throw std::invalid_argument("force component count does not match metric dimension");
    EquationsOfMotion e;
    e.metric = m;
    e.chris = ChristoffelField(m);
    e.force = std::move(F);
    return e;
}

void EquationsOfMotion::rhs(const double* state, double* deriv) const {
    const int n = dim();
    std::vector<double> x(state, state + n);
    auto G = chris.eval(x);
    for (int i = 0; i < n; ++i) deriv[i] = state[n + i];
    for (int i = 0; i < n; ++i) {
        double acc = force[i].eval(x.data(), n, nullptr);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) acc -= G[i](j, k) * state[n + j] * state[n + k];
        deriv[n + i] = acc;
    }
}

double EquationsOfMotion::energy(const std::vector<double>& x,
                                 const std::vector<double>& v) const {
    Eigen::MatrixXd g = metric.eval(x);
    double kin = 0;
    const int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kin += g(i, j) * v[i] * v[j];
    double pot = potential ? potential->eval(x) : 0.0;
    return 0.5 * kin + pot;
}

std::vector<double> Trajectory::position(int row) const {
    return {states[row].begin(), states[row].begin() + dim};
}

std::vector<double> Trajectory::velocity(int row) const {
    return {states[row].begin() + dim, states[row].end()};
}

namespace {

bool near_locus(const EquationsOfMotion& e, const double* state) {
    std::vector<double> x(state, state + e.dim());
    return !off_excluded_locus(e.metric.chart(), x, e.locus_margin);
}

void rk4_step(const EquationsOfMotion& e, const std::vector<double>& y, double h,
              std::vector<double>& out) {
    const std::size_t d = y.size();
    std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
    e.rhs(y.data(), k1.data());
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    e.rhs(tmp.data(), k2.data());
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    e.rhs(tmp.data(), k3.data());
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * k3[i];
    e.rhs(tmp.data(), k4.data());
    out.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

// classic Fehlberg 4(5) embedded pair
struct Rkf45Result {
    std::vector<double> y5;
    double error;  // scaled max error estimate
};

Rkf45Result rkf45_step(const EquationsOfMotion& e, const std::vector<double>& y, double h,
                       double atol, double rtol) {
    static const double a2 = 1.0 / 4, a3 = 3.0 / 8, a4 = 12.0 / 13, a6 = 1.0 / 2;
    (void)a2; (void)a3; (void)a4; (void)a6;
    static const double b21 = 1.0 / 4;
    static const double b31 = 3.0 / 32, b32 = 9.0 / 32;
    static const double b41 = 1932.0 / 2197, b42 = -7200.0 / 2197, b43 = 7296.0 / 2197;
    static const double b51 = 439.0 / 216, b52 = -8.0, b53 = 3680.0 / 513, b54 = -845.0 / 4104;
    static const double b61 = -8.0 / 27, b62 = 2.0, b63 = -3544.0 / 2565, b64 = 1859.0 / 4104,
                        b65 = -11.0 / 40;
    static const double c1 = 25.0 / 216, c3 = 1408.0 / 2565, c4 = 2197.0 / 4104, c5 = -1.0 / 5;
    static const double d1 = 16.0 / 135, d3 = 6656.0 / 12825, d4 = 28561.0 / 56430,
                        d5 = -9.0 / 50, d6 = 2.0 / 55;

    const std::size_t d = y.size();
    std::vector<double> k1(d), k2(d), k3(d), k4(d), k5(d), k6(d), tmp(d);
    e.rhs(y.data(), k1.data());
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * b21 * k1[i];
    e.rhs(tmp.data(), k2.data());
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * (b31 * k1[i] + b32 * k2[i]);
    e.rhs(tmp.data(), k3.data());
    for (std::size_t i = 0; i < d; ++i)
        tmp[i] = y[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
    e.rhs(tmp.data(), k4.data());
    for (std::size_t i = 0; i < d; ++i)
        tmp[i] = y[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
    e.rhs(tmp.data(), k5.data());
    for (std::size_t i = 0; i < d; ++i)
        tmp[i] = y[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] + b64 * k4[i] + b65 * k5[i]);
    e.rhs(tmp.data(), k6.data());

    Rkf45Result res;
    res.y5.resize(d);
    double err = 0;
    for (std::size_t i = 0; i < d; ++i) {
        double y4 = y[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c5 * k5[i]);
        double y5 = y[i] + h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
        res.y5[i] = y5;
        double scale = atol + rtol * std::max(std::fabs(y[i]), std::fabs(y5));
        err = std::max(err, std::fabs(y5 - y4) / scale);
    }
    res.error = err;
    return res;
}

}  // namespace

Trajectory integrate(const EquationsOfMotion& e, const std::vector<double>& x0,
                     const std::vector<double>& v0, double t1, const IntegrateOptions& opts) {
    const int n = e.dim();
    if (static_cast<int>(x0.size()) != n || static_cast<int>(v0.size()) != n)
        throw std::invalid_argument("initial state dimension mismatch");
    Trajectory tr;
    tr.dim = n;
    std::vector<double> y(2 * n);
    for (int i = 0; i < n; ++i) {
        y[i] = x0[i];
        y[n + i] = v0[i];
    }
    if (near_locus(e, y.data()))
        throw std::invalid_argument("initial state lies on or near the excluded locus");
    double t = opts.t0;
    tr.times.push_back(t);
    tr.states.push_back(y);

    auto halt = [&](const char* why) {
        tr.halted_on_locus = true;
        tr.diagnostic = why;
    };

    if (opts.method == IntegratorMethod::RK4) {
        tr.method = "rk4";
        const double h = opts.step;
        if (h <= 0) throw std::invalid_argument("step must be positive");
        const long long steps = static_cast<long long>(std::ceil((t1 - opts.t0) / h - 1e-12));
        std::vector<double> next;
        for (long long k = 0; k < steps; ++k) {
            double hk = std::min(h, t1 - t);
            try {
                rk4_step(e, y, hk, next);
            } catch (const EvalError& err) {
                halt((std::string("integration stopped: ") + err.what()).c_str());
                break;
            }
            if (near_locus(e, next.data())) {
                halt("integration stopped near the excluded locus");
                break;
            }
            y = next;
            t += hk;
            tr.times.push_back(t);
            tr.states.push_back(y);
        }
        return tr;
    }

    tr.method = "rk45";
    double h = std::min(1e-2, t1 - opts.t0);
    const double hmin = 1e-14;
    while (t < t1 - 1e-14) {
        h = std::min(h, t1 - t);
        Rkf45Result step;
        try {
            step = rkf45_step(e, y, h, opts.tol, opts.tol);
        } catch (const EvalError& err) {
            halt((std::string("integration stopped: ") + err.what()).c_str());
            break;
        }
        if (step.error <= 1.0) {
            if (near_locus(e, step.y5.data())) {
                halt("integration stopped near the excluded locus");
                break;
            }
            t += h;
            y = step.y5;
            tr.times.push_back(t);
            tr.states.push_back(y);
        }
        double factor = 0.9 * std::pow(std::max(step.error, 1e-12), -0.2);
        h *= std::min(5.0, std::max(0.2, factor));
        if (h < hmin) {
            halt("adaptive step underflow");
            break;
        }
    }
    return tr;
}

const DriftReport::Series& DriftReport::by_name(const std::string& name) const {
    for (const auto& s : series)
        if (s.name == name) return s;
    throw std::out_of_range("no drift series named " + name);
}

DriftReport conservation_drift(const EquationsOfMotion& e, const Trajectory& tr,
                               const std::vector<NoetherIntegral>& integrals) {
    DriftReport rep;
    rep.series.resize(integrals.size() + 1);
    rep.series[0].name = "E";
    for (std::size_t k = 0; k < integrals.size(); ++k) rep.series[k + 1].name = integrals[k].name();

    for (std::size_t row = 0; row < tr.states.size(); ++row) {
        std::vector<double> x = tr.position(static_cast<int>(row));
        std::vector<double> v = tr.velocity(static_cast<int>(row));
        double t = tr.times[row];
        for (std::size_t s = 0; s < rep.series.size(); ++s) {
            double val = (s == 0) ? e.energy(x, v) : integrals[s - 1](t, x, v);
            auto& ser = rep.series[s];
            if (row == 0) {
                ser.initial = val;
            } else {
                ser.abs_drift = std::max(ser.abs_drift, std::fabs(val - ser.initial));
            }
        }
    }
    for (auto& s : rep.series) s.rel_drift = s.abs_drift / std::max(1.0, std::fabs(s.initial));
    return rep;
}

void write_trajectory_csv(std::ostream& os, const EquationsOfMotion& e, const Trajectory& tr,
                          const std::vector<NoetherIntegral>& integrals) {
    const int n = tr.dim;
    os << "t";
    for (int i = 1; i <= n; ++i) os << ", x" << i;
    for (int i = 1; i <= n; ++i) os << ", v" << i;
    os << ", E";
    for (std::size_t k = 1; k <= integrals.size(); ++k) os << ", I_" << k;
    os << "\n";
    char buf[40];
    auto put = [&](double v, bool lead_comma) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        if (lead_comma) os << ", ";
        os << buf;
    };
    for (std::size_t row = 0; row < tr.states.size(); ++row) {
        std::vector<double> x = tr.position(static_cast<int>(row));
        std::vector<double> v = tr.velocity(static_cast<int>(row));
        put(tr.times[row], false);
        for (int i = 0; i < n; ++i) put(x[i], true);
        for (int i = 0; i < n; ++i) put(v[i], true);
        put(e.energy(x, v), true);
        for (const auto& I : integrals) put(I(tr.times[row], x, v), true);
        os << "\n";
    }
}

}  // namespace geonoether
