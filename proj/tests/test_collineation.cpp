#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geonoether/collineation.hpp"

using namespace geonoether;

namespace {

std::vector<Sample> flat_samples(int n, int count = 100, unsigned seed = 0) {
    SampleBox box{std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)};
    return halton_samples(box, count, seed);
}

}  // namespace

TEST_CASE("verify: translations are exact isometries, the dilation is not") {
    Metric m = make_flat_metric(3, {1, 1, 1});
    auto cat = flat_projective_catalog(3, {1, 1, 1});
    auto samples = flat_samples(3);
    auto s1 = verify_collineation(cat.claims[0], m, samples, 1e-12);
    CHECK(s1.pass);
    CHECK(s1.residual == 0.0);

    // dilation claimed as an isometry fails with residual 2|g|
    CollineationClaim fake;
    for (const auto& c : cat.claims)
        if (c.name == "H") fake = c;
    fake.kind = CollKind::KV;
    fake.gradient = false;
    auto rep = verify_collineation(fake, m, samples, 1e-10);
    CHECK_FALSE(rep.pass);
    CHECK(rep.residual == doctest::Approx(2.0));
}

TEST_CASE("verify: minisuperspace rotation generator") {
    Metric m = make_bianchi_metric(true);
    auto cat = bianchi_symmetry_catalog(true);
    SampleBox box{{-0.4, -0.8, -0.8, -0.8}, {0.4, 0.8, 0.8, 0.8}};
    auto samples = halton_samples(box, 100, 0);
    for (const auto& c : cat.claims) {
        auto rep = verify_collineation(c, m, samples, 1e-10);
        INFO(c.name);
        CHECK(rep.pass);
    }
    // gradient data of the dilation: g_ij H^j equals d[(8/3) e^{3 lambda}]
    const CollineationClaim* h = nullptr;
    for (const auto& c : cat.claims)
        if (c.name == "H") h = &c;
    REQUIRE(h != nullptr);
    CHECK(h->gradient);
    auto rep = verify_collineation(*h, m, samples, 1e-10);
    CHECK(rep.gradient_residual <= 1e-10);
}

TEST_CASE("flat catalog counts for dimensions 2 and 3") {
    auto count_kinds = [](const CollineationBasis& b) {
        int kv = 0, hv = 0, ac = 0, spc = 0;
        for (const auto& c : b.claims) {
            if (c.kind == CollKind::KV) ++kv;
            if (c.kind == CollKind::HV) ++hv;
            if (c.kind == CollKind::AC) ++ac;
            if (c.kind == CollKind::SPC) ++spc;
        }
        return std::array<int, 4>{kv, hv, ac, spc};
    };
    auto c2 = count_kinds(flat_projective_catalog(2, {1, 1}));
    CHECK(c2 == std::array<int, 4>{3, 1, 4, 2});
    auto c3 = count_kinds(flat_projective_catalog(3, {1, 1, 1}));
    CHECK(c3 == std::array<int, 4>{6, 1, 9, 3});
}

TEST_CASE("Lorentzian plane replaces the rotation by a boost") {
    auto cat = flat_projective_catalog(2, {1, -1});
    const CollineationClaim* x12 = nullptr;
    for (const auto& c : cat.claims)
        if (c.name == "X12") x12 = &c;
    REQUIRE(x12 != nullptr);
    // components (x2, x1) up to overall sign: eta^1 proportional to x2 with
    // the same sign as eta^2 proportional to x1
    double e1 = x12->vec.eta[0].eval({0.0, 1.0});  // at (0, 1)
    double e2 = x12->vec.eta[1].eval({1.0, 0.0});  // at (1, 0)
    CHECK(e1 * e2 > 0);
    Metric m = make_flat_metric(2, {1, -1});
    auto rep = verify_collineation(*x12, m, flat_samples(2), 1e-12);
    CHECK(rep.pass);
}

TEST_CASE("solver dimensions over flat metrics are exact") {
    struct Case {
        int n;
        std::vector<int> sig;
    };
    for (const Case& cs : {Case{2, {1, 1}}, Case{3, {1, 1, 1}}, Case{2, {1, -1}}}) {
        Metric m = make_flat_metric(cs.n, cs.sig);
        CHECK(static_cast<int>(solve_determining_equations(m, CollKind::KV, 2).claims.size()) ==
              cs.n * (cs.n + 1) / 2);
        CHECK(solve_determining_equations(m, CollKind::HV, 2).claims.size() == 1);
        CHECK(static_cast<int>(solve_determining_equations(m, CollKind::AC, 2).claims.size()) ==
              cs.n * cs.n);
        CHECK(static_cast<int>(solve_determining_equations(m, CollKind::SPC, 2).claims.size()) ==
              cs.n);
    }
}

TEST_CASE("solver output and catalog span the same spaces") {
    for (auto sig : {std::vector<int>{1, 1}, std::vector<int>{1, -1}}) {
        Metric m = make_flat_metric(2, sig);
        auto cat = flat_projective_catalog(2, sig);
        for (CollKind kind : {CollKind::KV, CollKind::HV, CollKind::AC, CollKind::SPC}) {
            auto sol = solve_determining_equations(m, kind, 2);
            std::vector<CollineationClaim> cat_k;
            for (const auto& c : cat.claims)
                if (c.kind == kind) cat_k.push_back(c);
            INFO(coll_kind_name(kind));
            CHECK(claims_span_subset(cat_k, sol.claims));
            CHECK(claims_span_subset(sol.claims, cat_k));
        }
    }
    Metric m3 = make_flat_metric(3, {1, 1, 1});
    auto cat3 = flat_projective_catalog(3, {1, 1, 1});
    auto sol3 = solve_determining_equations(m3, CollKind::KV, 2);
    std::vector<CollineationClaim> kv3;
    for (const auto& c : cat3.claims)
        if (c.kind == CollKind::KV) kv3.push_back(c);
    CHECK(claims_span_subset(kv3, sol3.claims));
    CHECK(claims_span_subset(sol3.claims, kv3));
}

TEST_CASE("every solver output verifies at 1e-12 over 100 deterministic points") {
    for (auto sig : {std::vector<int>{1, 1, 1}, std::vector<int>{1, -1, 1}}) {
        Metric m = make_flat_metric(3, sig);
        auto samples = flat_samples(3);
        for (CollKind kind : {CollKind::KV, CollKind::HV, CollKind::AC, CollKind::SPC}) {
            for (const auto& c : solve_determining_equations(m, kind, 2).claims) {
                auto rep = verify_collineation(c, m, samples, 1e-12);
                INFO(coll_kind_name(kind) << " " << c.name);
                CHECK(rep.pass);
            }
        }
    }
}

TEST_CASE("solver rejects non-constant metrics and warns on low degree") {
    Metric sphere = make_sphere_metric(1);
    CHECK_THROWS_AS(solve_determining_equations(sphere, CollKind::KV, 2),
                    std::invalid_argument);
    Metric m = make_flat_metric(2, {1, 1});
    auto low = solve_determining_equations(m, CollKind::SPC, 1);
    CHECK(low.claims.empty());
    CHECK_FALSE(low.warnings.empty());
}

TEST_CASE("solver gradient tagging matches the catalog") {
    Metric m = make_flat_metric(2, {1, 1});
    auto kv = solve_determining_equations(m, CollKind::KV, 2);
    int gradients = 0;
    for (const auto& c : kv.claims)
        if (c.gradient) ++gradients;
    CHECK(gradients == 2);  // the two translations; the rotation is not gradient
    auto hv = solve_determining_equations(m, CollKind::HV, 2);
    REQUIRE(hv.claims.size() == 1);
    CHECK(hv.claims[0].gradient);
    // gradient function reproduces the lowered components
    auto samples = flat_samples(2, 50);
    auto rep = verify_collineation(hv.claims[0], m, samples, 1e-12);
    CHECK(rep.pass);
}

TEST_CASE("surface isometry catalogs verify for both curvature signs") {
    for (int K : {1, -1}) {
        Metric m = make_sphere_metric(K);
        auto cat = sphere_killing_catalog(K);
        REQUIRE(cat.claims.size() == 3);
        SampleBox box{{0.3, -1.0}, {1.2, 1.0}};
        auto samples = halton_samples(box, 100, 0, &m.chart(), 0.1);
        for (const auto& c : cat.claims) {
            auto rep = verify_collineation(c, m, samples, 1e-10);
            INFO("K=" << K << " " << c.name);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("lowered first surface generator reproduces its conserved current") {
    // g_ij Y1^j contracted with velocities gives
    // vphi sin(theta) + vtheta cos(theta) Sinn(phi) Cosn(phi)
    for (int K : {1, -1}) {
        Metric m = make_sphere_metric(K);
        auto cat = sphere_killing_catalog(K);
        const auto& y1 = cat.claims[0];
        for (double phi : {0.5, 1.0})
            for (double th : {-0.4, 0.8}) {
                Eigen::MatrixXd g = m.eval({phi, th});
                double vphi = 0.3, vth = -0.7;
                double lowered = g(0, 0) * y1.vec.eta[0].eval({phi, th}) * vphi +
                                 g(1, 1) * y1.vec.eta[1].eval({phi, th}) * vth;
                double sinn = K == 1 ? std::sin(phi) : std::sinh(phi);
                double cosn = K == 1 ? std::cos(phi) : std::cosh(phi);
                double expect = vphi * std::sin(th) + vth * std::cos(th) * sinn * cosn;
                CHECK(lowered == doctest::Approx(expect).epsilon(1e-12));
            }
    }
}

TEST_CASE("minisuperspace catalog sizes") {
    CHECK(bianchi_symmetry_catalog(true).claims.size() == 7);   // six isometries + dilation
    CHECK(bianchi_symmetry_catalog(false).claims.size() == 4);  // reduced space
}
