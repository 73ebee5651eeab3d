#include "geonoether/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geonoether/report.hpp"

namespace geonoether {

namespace {

using nlohmann::json;

unsigned env_seed() {
    const char* s = std::getenv("GEONOETHER_SEED");
    if (!s) return 0;
    return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace

FileScenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("scenario file parse error at byte " +
                                    std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1)
        throw std::invalid_argument("scenario file needs schema_version 1");
    const json& jm = doc.at("metric");
    std::vector<std::string> names = jm.at("coordinates").get<std::vector<std::string>>();
    CoordinateChart chart(names);
    const int n = chart.dim();
    if (jm.contains("excluded"))
        for (const auto& ex : jm["excluded"])
            chart.excluded.push_back(parse_expression(ex.get<std::string>(), chart));
    std::vector<std::vector<Expr>> comps(n, std::vector<Expr>(n));
    const json& jc = jm.at("components");
    if (static_cast<int>(jc.size()) != n)
        throw std::invalid_argument("metric component rows do not match dimension");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            comps[i][j] = parse_expression(jc.at(i).at(j).get<std::string>(), chart);
    std::vector<int> sig(n, 1);
    if (jm.contains("signature")) sig = jm["signature"].get<std::vector<int>>();

    FileScenario fs;
    Scenario& s = fs.scenario;
    s.name = doc.value("name", path);
    s.metric = Metric(chart, comps, sig);
    s.chris = ChristoffelField(s.metric);

    if (doc.contains("potential")) {
        s.potential = parse_expression(doc["potential"].get<std::string>(), chart);
        s.has_potential = true;
        s.force = force_from_potential(s.metric, s.potential);
    } else if (doc.contains("force")) {
        s.has_potential = false;
        for (const auto& f : doc["force"])
            s.force.push_back(parse_expression(f.get<std::string>(), chart));
        if (static_cast<int>(s.force.size()) != n)
            throw std::invalid_argument("force component count does not match dimension");
    } else {
        s.has_potential = true;
        s.force = force_from_potential(s.metric, s.potential);
    }

    s.box.lo.assign(n, -1.0);
    s.box.hi.assign(n, 1.0);
    if (doc.contains("check")) {
        const json& ck = doc["check"];
        if (ck.contains("box")) {
            s.box.lo = ck["box"].at("lo").get<std::vector<double>>();
            s.box.hi = ck["box"].at("hi").get<std::vector<double>>();
        }
        if (ck.contains("time")) {
            s.box.t_lo = ck["time"].at(0).get<double>();
            s.box.t_hi = ck["time"].at(1).get<double>();
        }
        s.default_samples = ck.value("samples", 200);
        s.seed = ck.value("seed", 0u);
        s.margin = ck.value("margin", 0.1);
    }
    s.x0.assign(n, 0.0);
    s.v0.assign(n, 0.0);
    if (doc.contains("simulate")) {
        const json& sm = doc["simulate"];
        if (sm.contains("x0")) s.x0 = sm["x0"].get<std::vector<double>>();
        if (sm.contains("v0")) s.v0 = sm["v0"].get<std::vector<double>>();
        if (sm.contains("t_span")) {
            s.sim.t0 = sm["t_span"].at(0).get<double>();
            s.t_end = sm["t_span"].at(1).get<double>();
        }
        if (sm.value("method", "rk4") == std::string("rk45"))
            s.sim.method = IntegratorMethod::RK45;
        s.sim.step = sm.value("step", 1e-3);
        s.sim.tol = sm.value("tol", 1e-10);
    }

    if (doc.contains("vectors")) {
        for (auto it = doc["vectors"].begin(); it != doc["vectors"].end(); ++it) {
            const json& jv = it.value();
            Expr xi;
            if (jv.contains("xi")) xi = parse_expression(jv["xi"].get<std::string>(), chart);
            std::vector<Expr> eta;
            for (const auto& comp : jv.at("eta"))
                eta.push_back(parse_expression(comp.get<std::string>(), chart));
            if (static_cast<int>(eta.size()) != n)
                throw std::invalid_argument("vector '" + it.key() + "' has wrong dimension");
            fs.vectors.emplace(it.key(), SymmetryVector(chart, xi, eta));
            if (jv.contains("gauge"))
                fs.gauges.emplace(it.key(),
                                  parse_expression(jv["gauge"].get<std::string>(), chart));
        }
    }
    return fs;
}

namespace {

struct ScenarioRequest {
    std::string spec;
    std::string file;
    bool has() const { return !spec.empty() || !file.empty(); }
    FileScenario load() const {
        if (!file.empty()) return load_scenario_file(file);
        FileScenario fs;
        fs.scenario = make_scenario(spec);
        return fs;
    }
};

Metric space_metric(const std::string& space) {
    if (space.rfind("flat:", 0) == 0) {
        std::string rest = space.substr(5);
        auto colon = rest.find(':');
        int n = std::stoi(rest.substr(0, colon));
        std::vector<int> sig(n, 1);
        if (colon != std::string::npos) {
            std::string sg = rest.substr(colon + 1);
            if (static_cast<int>(sg.size()) != n)
                throw std::invalid_argument("signature length must match dimension");
            for (int i = 0; i < n; ++i) sig[i] = sg[i] == '-' ? -1 : 1;
        }
        return make_flat_metric(n, sig);
    }
    if (space == "sphere:K=1") return make_sphere_metric(1);
    if (space == "sphere:K=-1") return make_sphere_metric(-1);
    if (space == "bianchi") return make_bianchi_metric(true);
    if (space == "bianchi:3d") return make_bianchi_metric(false);
    throw std::invalid_argument("unknown space: " + space);
}

CollineationBasis space_catalog(const std::string& space) {
    if (space.rfind("flat:", 0) == 0) {
        Metric m = space_metric(space);
        std::vector<int> sig = m.signature();
        return flat_projective_catalog(m.dim(), sig);
    }
    if (space == "sphere:K=1") return sphere_killing_catalog(1);
    if (space == "sphere:K=-1") return sphere_killing_catalog(-1);
    if (space == "bianchi") return bianchi_symmetry_catalog(true);
    if (space == "bianchi:3d") return bianchi_symmetry_catalog(false);
    throw std::invalid_argument("unknown space: " + space);
}

SampleBox default_box(const Metric& m) {
    SampleBox box;
    box.lo.assign(m.dim(), -1.0);
    box.hi.assign(m.dim(), 1.0);
    if (!m.chart().excluded.empty()) {
        // keep clear of coordinate singularities in the builtin charts
        box.lo[0] = 0.3;
        box.hi[0] = 1.2;
    }
    return box;
}

void print_claims(std::ostream& out, const CollineationBasis& basis,
                  const CoordinateChart& chart) {
    out << "| name | kind | components | gradient function | projection |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& c : basis.claims) {
        out << "| " << c.name << " | " << coll_kind_name(c.kind);
        if (c.kind == CollKind::HV) out << "(psi=" << c.psi << ")";
        out << " | (";
        for (int i = 0; i < c.vec.dim(); ++i) {
            if (i) out << ", ";
            out << c.vec.eta[i].str(chart);
        }
        out << ") | " << (c.gradient ? c.gradient_function.str(chart) : std::string("-"));
        out << " | "
            << (c.kind == CollKind::SPC || c.kind == CollKind::PC ? c.phi.str(chart)
                                                                  : std::string("-"));
        out << " |\n";
    }
    for (const auto& w : basis.warnings) out << "warning: " << w << "\n";
}

int cmd_report(std::ostream& out, const std::string& table, const std::string& out_file,
               unsigned seed) {
    ReportResult r;
    if (table == "flat") r = report_flat(seed);
    else if (table == "sphere") r = report_sphere(seed);
    else if (table == "bianchi") r = report_bianchi(seed);
    else if (table == "newtonian") r = report_newtonian(seed);
    else throw std::invalid_argument("unknown report table: " + table);
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        f << r.markdown;
        out << (r.all_pass ? "pass" : "FAIL") << " -> " << out_file << "\n";
    } else {
        out << r.markdown;
    }
    return r.all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"geometric point-symmetry toolkit"};
    app.require_subcommand(1);
    unsigned seed = env_seed();

    // --- catalog -------------------------------------------------------------
    auto* cat = app.add_subcommand("catalog", "print a collineation basis table");
    std::string cat_space = "flat:3:+++";
    cat->add_option("--space", cat_space, "flat:<n>[:<signs>] | sphere:K=±1 | bianchi[:3d]");

    // --- solve-killing ---------------------------------------------------------
    auto* slv = app.add_subcommand("solve-killing",
                                   "exact determining-equation solver for constant metrics");
    int slv_dim = 3;
    std::string slv_sig, slv_kind = "KV", slv_metric_file;
    int slv_degree = 2;
    slv->add_option("--dim", slv_dim, "dimension");
    slv->add_option("--signature", slv_sig, "signs, e.g. ++- (defaults to all +)");
    slv->add_option("--kind", slv_kind, "KV | HV | AC | SPC");
    slv->add_option("--degree", slv_degree, "polynomial ansatz degree");
    slv->add_option("--metric", slv_metric_file, "JSON scenario file supplying the metric");

    // --- verify-collineation ----------------------------------------------------
    auto* ver = app.add_subcommand("verify-collineation", "check catalog claims numerically");
    std::string ver_space = "flat:3:+++", ver_claim;
    int ver_samples = 100;
    double ver_tol = 1e-10;
    ver->add_option("--space", ver_space, "space name (see catalog)");
    ver->add_option("--claim", ver_claim, "single claim name (default: all)");
    ver->add_option("--samples", ver_samples, "sample count");
    ver->add_option("--tol", ver_tol, "tolerance");
    ver->add_option("--seed", seed, "sample seed");

    // --- shared scenario options -------------------------------------------------
    auto add_scenario_opts = [&](CLI::App* sub, ScenarioRequest& req) {
        sub->add_option("--scenario", req.spec, "registry spec, e.g. sphere:K=1:row=1");
        sub->add_option("--scenario-file", req.file, "JSON scenario file");
    };

    // --- lie-check / noether-check -----------------------------------------------
    auto* lie = app.add_subcommand("lie-check", "point-symmetry conditions for candidates");
    ScenarioRequest lie_req;
    std::string lie_vector, lie_xi;
    std::vector<std::string> lie_eta;
    int lie_samples = 0;
    double lie_tol = 1e-8;
    add_scenario_opts(lie, lie_req);
    lie->add_option("--vector", lie_vector, "named vector from the scenario file");
    lie->add_option("--xi", lie_xi, "time component expression");
    lie->add_option("--eta", lie_eta, "spatial component expressions")->delimiter(',');
    lie->add_option("--samples", lie_samples, "sample count (default: scenario)");
    lie->add_option("--tol", lie_tol, "tolerance");
    lie->add_option("--seed", seed, "sample seed");

    auto* noe = app.add_subcommand("noether-check", "Noether conditions for candidates");
    ScenarioRequest noe_req;
    std::string noe_vector, noe_xi, noe_gauge;
    std::vector<std::string> noe_eta;
    int noe_samples = 0;
    double noe_tol = 1e-8;
    add_scenario_opts(noe, noe_req);
    noe->add_option("--vector", noe_vector, "named vector from the scenario file");
    noe->add_option("--xi", noe_xi, "time component expression");
    noe->add_option("--eta", noe_eta, "spatial component expressions")->delimiter(',');
    noe->add_option("--gauge", noe_gauge, "gauge function expression");
    noe->add_option("--samples", noe_samples, "sample count (default: scenario)");
    noe->add_option("--tol", noe_tol, "tolerance");
    noe->add_option("--seed", seed, "sample seed");

    // --- noether-find ---------------------------------------------------------
    auto* fnd = app.add_subcommand("noether-find",
                                   "discover Noether symmetries from the homothetic catalog");
    ScenarioRequest fnd_req;
    std::string fnd_potential;
    int fnd_samples = 0;
    add_scenario_opts(fnd, fnd_req);
    fnd->add_option("--potential", fnd_potential, "override potential expression");
    fnd->add_option("--samples", fnd_samples, "sample count (default: scenario)");
    fnd->add_option("--seed", seed, "sample seed");

    // --- simulate / conserve-check ----------------------------------------------
    auto* sim = app.add_subcommand("simulate", "integrate the equations of motion to CSV");
    ScenarioRequest sim_req;
    std::vector<double> sim_x0, sim_v0;
    double sim_t1 = 0;
    std::string sim_method, sim_out;
    double sim_step = 0, sim_tol = 0;
    add_scenario_opts(sim, sim_req);
    sim->add_option("--x0", sim_x0, "initial position")->delimiter(',');
    sim->add_option("--v0", sim_v0, "initial velocity")->delimiter(',');
    sim->add_option("--t1", sim_t1, "end time");
    sim->add_option("--method", sim_method, "rk4 | rk45");
    sim->add_option("--step", sim_step, "rk4 step");
    sim->add_option("--tol", sim_tol, "rk45 tolerance");
    sim->add_option("--out", sim_out, "CSV output path (default: stdout)");
    sim->add_option("--seed", seed, "seed (recorded in outputs)");

    auto* con = app.add_subcommand("conserve-check",
                                   "integrate and test conservation of found integrals");
    ScenarioRequest con_req;
    double con_t1 = 0, con_drift = 1e-7;
    int con_samples = 0;
    add_scenario_opts(con, con_req);
    con->add_option("--t1", con_t1, "end time");
    con->add_option("--max-drift", con_drift, "relative drift bound");
    con->add_option("--samples", con_samples, "finder sample count");
    con->add_option("--seed", seed, "sample seed");

    // --- report -----------------------------------------------------------------
    auto* rep = app.add_subcommand("report", "markdown summary per catalog table");
    std::string rep_table = "flat", rep_out;
    rep->add_option("--table", rep_table, "flat | sphere | bianchi | newtonian");
    rep->add_option("--out", rep_out, "write markdown to file");
    rep->add_option("--seed", seed, "sample seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cat->parsed()) {
            Metric m = space_metric(cat_space);
            out << "# catalog: " << cat_space << "\n\nseed: " << seed << "\n\n";
            print_claims(out, space_catalog(cat_space), m.chart());
            return 0;
        }
        if (slv->parsed()) {
            Metric m = slv_metric_file.empty()
                           ? make_flat_metric(slv_dim,
                                              [&] {
                                                  std::vector<int> sig(slv_dim, 1);
                                                  for (int i = 0;
                                                       i < std::min<int>(slv_dim, slv_sig.size());
                                                       ++i)
                                                      sig[i] = slv_sig[i] == '-' ? -1 : 1;
                                                  return sig;
                                              }())
                           : load_scenario_file(slv_metric_file).scenario.metric;
            CollKind kind;
            if (slv_kind == "KV") kind = CollKind::KV;
            else if (slv_kind == "HV") kind = CollKind::HV;
            else if (slv_kind == "AC") kind = CollKind::AC;
            else if (slv_kind == "SPC") kind = CollKind::SPC;
            else throw std::invalid_argument("kind must be KV, HV, AC or SPC");
            auto basis = solve_determining_equations(m, kind, slv_degree);
            out << "# exact " << slv_kind << " basis (dimension " << basis.claims.size()
                << ")\n\nseed: " << seed << "\n\n";
            print_claims(out, basis, m.chart());
            return 0;
        }
        if (ver->parsed()) {
            Metric m = space_metric(ver_space);
            auto basis = space_catalog(ver_space);
            SampleBox box = default_box(m);
            auto samples = halton_samples(box, ver_samples, seed, &m.chart(), 0.1);
            bool all = true;
            out << "| claim | kind | residual | gradient | status |\n|---|---|---|---|---|\n";
            for (const auto& c : basis.claims) {
                if (!ver_claim.empty() && c.name != ver_claim) continue;
                auto r = verify_collineation(c, m, samples, ver_tol);
                all = all && r.pass;
                out << "| " << c.name << " | " << coll_kind_name(c.kind) << " | "
                    << fmt(r.residual) << " | " << fmt(r.gradient_residual) << " | "
                    << (r.pass ? "pass" : "FAIL") << " |\n";
            }
            return all ? 0 : 1;
        }
        if (lie->parsed() || noe->parsed()) {
            bool is_lie = lie->parsed();
            ScenarioRequest& req = is_lie ? lie_req : noe_req;
            if (!req.has()) throw std::invalid_argument("need --scenario or --scenario-file");
            FileScenario fs = req.load();
            Scenario& s = fs.scenario;
            int count = (is_lie ? lie_samples : noe_samples);
            if (count <= 0) count = s.default_samples;
            auto samples = s.samples(count, seed);
            double tol = is_lie ? lie_tol : noe_tol;
            out << "# " << (is_lie ? "lie-check" : "noether-check") << ": " << s.name
                << "\n\nseed: " << seed << "  samples: " << samples.size() << "  tol: " << tol
                << "\n\n";
            bool all = true;
            auto run_one = [&](const std::string& name, const SymmetryVector& vec,
                               const Expr& gauge, bool control) {
                if (is_lie) {
                    auto r = lie_conditions(vec, s.metric, s.chris, s.force, samples, tol);
                    bool ok = control ? (!r.pass && r.max_residual() >= 1e-2) : r.pass;
                    all = all && ok;
                    out << "| " << name << " | force " << fmt(r.res_force) << " | mixed "
                        << fmt(r.res_mixed) << " | connection " << fmt(r.res_connection)
                        << " | xi " << fmt(r.res_xi_hessian) << " | "
                        << (ok ? "pass" : "FAIL") << " |\n";
                } else {
                    auto r = noether_conditions(vec, s.metric, s.potential, gauge, samples, tol);
                    bool ok = control ? (!r.pass && r.max_residual() >= 1e-2) : r.pass;
                    all = all && ok;
                    out << "| " << name << " | xi_k " << fmt(r.res_xi_spatial) << " | metric "
                        << fmt(r.res_metric) << " | energy " << fmt(r.res_energy)
                        << " | momentum " << fmt(r.res_momentum) << " | "
                        << (ok ? "pass" : "FAIL") << " |\n";
                }
            };
            const std::string& vec_name = is_lie ? lie_vector : noe_vector;
            const std::string& xi_text = is_lie ? lie_xi : noe_xi;
            const std::vector<std::string>& eta_text = is_lie ? lie_eta : noe_eta;
            if (!vec_name.empty()) {
                auto it = fs.vectors.find(vec_name);
                if (it == fs.vectors.end())
                    throw std::invalid_argument("no vector named " + vec_name);
                Expr gauge;
                auto g = fs.gauges.find(vec_name);
                if (g != fs.gauges.end()) gauge = g->second;
                run_one(vec_name, it->second, gauge, false);
            } else if (!eta_text.empty()) {
                std::vector<Expr> eta;
                for (const auto& etext : eta_text)
                    eta.push_back(parse_expression(etext, s.metric.chart()));
                Expr xi;
                if (!xi_text.empty()) xi = parse_expression(xi_text, s.metric.chart());
                Expr gauge;
                if (!is_lie && !noe_gauge.empty())
                    gauge = parse_expression(noe_gauge, s.metric.chart());
                run_one("candidate", SymmetryVector(s.metric.chart(), xi, eta), gauge, false);
            } else {
                for (const auto& e : s.expected) {
                    if (is_lie && e.check != ExpectedSymmetry::Check::Lie) continue;
                    if (!is_lie && e.check != ExpectedSymmetry::Check::Noether) continue;
                    run_one(e.name + (e.negative_control ? " [control]" : ""), e.vec, e.gauge,
                            e.negative_control);
                }
            }
            return all ? 0 : 1;
        }
        if (fnd->parsed()) {
            if (!fnd_req.has()) throw std::invalid_argument("need --scenario or --scenario-file");
            FileScenario fs = fnd_req.load();
            Scenario& s = fs.scenario;
            if (!fnd_potential.empty()) {
                s.potential = parse_expression(fnd_potential, s.metric.chart());
                s.has_potential = true;
                s.force = force_from_potential(s.metric, s.potential);
            }
            if (s.catalog.claims.empty())
                throw std::invalid_argument("scenario has no homothetic catalog to search");
            int count = fnd_samples > 0 ? fnd_samples : s.default_samples;
            auto samples = s.samples(count, seed);
            out << "# noether-find: " << s.name << "\n\nseed: " << seed
                << "  potential: " << s.potential.str(s.metric.chart()) << "\n\n";
            auto res = find_noether_case1(s.catalog, s.metric, s.potential, samples, s.box);
            out << "Case I generators (" << res.symmetries.size() << "):\n";
            for (const auto& sym : res.symmetries) {
                out << "  X = " << sym.name << "   psi = " << sym.psi << ", p = " << sym.p
                    << "\n";
                NoetherIntegral I = build_noether_integral(sym, s.metric, s.potential);
                out << "    integral " << I.name() << " = ";
                if (sym.psi != 0.0) out << 2 * sym.psi << "*t*E ";
                out << "- g_ij Y^i v^j";
                if (sym.p != 0.0) out << " + " << sym.p << "*t";
                out << "\n";
            }
            for (const auto& w : res.warnings) out << "  warning: " << w << "\n";
            int case2_count = 0;
            for (const auto& c : s.catalog.claims) {
                if (!c.gradient) continue;
                auto r2 = find_noether_case2(c, s.metric, s.potential, samples);
                if (!r2.symmetries.empty()) {
                    out << "Case II from " << c.name << ": m = " << r2.symmetries[0].m
                        << ", p = " << r2.symmetries[0].p << " (two time branches)\n";
                    case2_count += static_cast<int>(r2.symmetries.size());
                }
            }
            if (case2_count == 0) out << "Case II: none\n";
            return 0;
        }
        if (sim->parsed() || con->parsed()) {
            bool conserve = con->parsed();
            ScenarioRequest& req = conserve ? con_req : sim_req;
            if (!req.has()) throw std::invalid_argument("need --scenario or --scenario-file");
            FileScenario fs = req.load();
            Scenario& s = fs.scenario;
            std::vector<double> x0 = s.x0, v0 = s.v0;
            double t1 = s.t_end;
            IntegrateOptions opts = s.sim;
            if (!conserve) {
                if (!sim_x0.empty()) x0 = sim_x0;
                if (!sim_v0.empty()) v0 = sim_v0;
                if (sim_t1 > 0) t1 = sim_t1;
                if (!sim_method.empty())
                    opts.method = sim_method == "rk45" ? IntegratorMethod::RK45
                                                       : IntegratorMethod::RK4;
                if (sim_step > 0) opts.step = sim_step;
                if (sim_tol > 0) opts.tol = sim_tol;
            } else if (con_t1 > 0) {
                t1 = con_t1;
            }
            EquationsOfMotion eom = s.equations();
            std::vector<NoetherIntegral> integrals;
            if (s.has_potential && !s.catalog.claims.empty()) {
                int count = (conserve && con_samples > 0) ? con_samples : s.default_samples;
                auto samples = s.samples(count, seed);
                auto res = find_noether_case1(s.catalog, s.metric, s.potential, samples, s.box);
                for (const auto& sym : res.symmetries)
                    integrals.push_back(build_noether_integral(sym, s.metric, s.potential));
                for (const auto& c : s.catalog.claims) {
                    if (!c.gradient) continue;
                    auto r2 = find_noether_case2(c, s.metric, s.potential, samples);
                    for (const auto& sym : r2.symmetries)
                        integrals.push_back(build_noether_integral(sym, s.metric, s.potential));
                }
            }
            Trajectory tr = integrate(eom, x0, v0, t1, opts);
            if (!conserve) {
                if (!sim_out.empty()) {
                    std::ofstream f(sim_out);
                    write_trajectory_csv(f, eom, tr, integrals);
                    out << "wrote " << tr.states.size() << " rows -> " << sim_out << "\n";
                } else {
                    write_trajectory_csv(out, eom, tr, integrals);
                }
                if (tr.halted_on_locus) {
                    err << "note: " << tr.diagnostic << "\n";
                    return 1;
                }
                return 0;
            }
            DriftReport dr = conservation_drift(eom, tr, integrals);
            out << "# conserve-check: " << s.name << "\n\nseed: " << seed << "  method: "
                << tr.method << "  rows: " << tr.states.size() << "\n\n";
            out << "| series | initial | abs drift | rel drift | status |\n|---|---|---|---|---|\n";
            bool all = true;
            for (const auto& ser : dr.series) {
                bool ok = ser.rel_drift <= con_drift;
                all = all && ok;
                out << "| " << ser.name << " | " << fmt(ser.initial) << " | "
                    << fmt(ser.abs_drift) << " | " << fmt(ser.rel_drift) << " | "
                    << (ok ? "pass" : "FAIL") << " |\n";
            }
            if (tr.halted_on_locus) out << "\nnote: " << tr.diagnostic << "\n";
            return all && !tr.halted_on_locus ? 0 : 1;
        }
        if (rep->parsed()) return cmd_report(out, rep_table, rep_out, seed);
    } catch (const ParseError& e) {
        err << "expression error at position " << e.position << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace geonoether
