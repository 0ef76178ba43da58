#include <doctest.h>

#include <cmath>
#include <random>

#include "notchwall/transforms.hpp"

using namespace notchwall;

namespace {

AngleField separatrix_field(const Grid& g, double c = 0.0) {
    AngleField t(g.n);
    for (std::size_t i = 0; i < g.n; ++i) t[i] = separatrix_theta(g.node(i) - c);
    return t;
}

// random in-band field guaranteed to cross zero: perturbed separatrix
AngleField random_crossing_field(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-g.L + 3.0, g.L - 3.0);
    std::uniform_real_distribution<double> a(-0.6, 0.6);
    std::uniform_real_distribution<double> w(0.5, 3.0);
    AngleField t = separatrix_field(g, c(rng));
    for (int b = 0; b < 3; ++b) {
        const double amp = a(rng), ctr = c(rng), wid = w(rng);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double r = (g.node(i) - ctr) / wid;
            t[i] += amp * std::exp(-r * r);
        }
    }
    for (auto& v : t.values) v = std::clamp(v, -M_PI / 2.0, M_PI / 2.0);
    // keep the ends on the right branches so a crossing exists
    t[0] = -M_PI / 2.0;
    t[g.n - 1] = M_PI / 2.0;
    return t;
}

}  // namespace

TEST_CASE("threshold clamps and lowers energy") {
    const Grid g(10.0, 401);
    const NotchProfile p = NotchProfile::plateau(1.0, 1.0, 0.0);
    const EnergyWorkspace ws(p, g);

    AngleField t(g.n);
    t[0] = -2.0;
    t[1] = 0.3;
    t[2] = 1.8;
    const TransformResult r = threshold(t, ws);
    CHECK(r.theta[0] == -M_PI / 2.0);
    CHECK(r.theta[1] == 0.3);
    CHECK(r.theta[2] == M_PI / 2.0);

    const AngleField band = separatrix_field(g);
    const TransformResult id = threshold(band, ws);
    CHECK(!id.report.changed);
    CHECK(id.report.energy_after == id.report.energy_before);

    AngleField over = band;
    for (auto& v : over.values) v *= 1.2;  // overshooting wall
    const TransformResult ov = threshold(over, ws);
    CHECK(ov.report.changed);
    CHECK(ov.report.energy_after < ov.report.energy_before);
}

TEST_CASE("reflect_monotone folds the part after the first zero") {
    const Grid g(10.0, 801);
    const EnergyWorkspace ws(NotchProfile::plateau(1.0, 1.0, 0.0), g);

    const AngleField mono = separatrix_field(g);
    CHECK(!reflect_monotone(mono, ws).report.changed);

    AngleField dip = mono;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double r = (g.node(i) - 2.0) / 0.5;
        dip[i] = std::clamp(dip[i] - 2.0 * std::exp(-r * r), -M_PI / 2.0, M_PI / 2.0);
    }
    const TransformResult f = reflect_monotone(dip, ws);
    CHECK(f.report.energy_after < f.report.energy_before);
    const double rho = f.report.rho;
    for (std::size_t i = 0; i < g.n; ++i) {
        CHECK(std::abs(f.theta[i]) == std::abs(dip[i]));  // |theta| preserved exactly
        if (g.node(i) > rho + g.h) CHECK(f.theta[i] >= 0.0);
    }

    // single crossing at 0 with a negative dip after it: rho = 0, dip folded up
    AngleField odd(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        const double r = (x - 3.0) / 0.5;
        odd[i] = 0.4 * std::sin(0.15 * x) - 0.6 * std::exp(-r * r);
    }
    const TransformResult fo = reflect_monotone(odd, ws);
    CHECK(std::abs(fo.report.rho) <= 1e-12);
    for (std::size_t i = g.n / 2 + 1; i < g.n; ++i) CHECK(fo.theta[i] >= 0.0);

    AngleField pos(g.n);
    for (auto& v : pos.values) v = 0.5;
    CHECK_THROWS_AS((void)reflect_monotone(pos, ws), DomainError);
}

TEST_CASE("monotone_envelope is the running inf/sup") {
    const Grid g(10.0, 801);
    const EnergyWorkspace ws(NotchProfile::plateau(1.0, 1.0, 0.0), g);

    CHECK(!monotone_envelope(separatrix_field(g), ws).report.changed);

    // right of rho the sequence (0, .5, .3, .8) becomes (0, .5, .5, .8)
    AngleField t(g.n);
    for (std::size_t i = 0; i < g.n; ++i) t[i] = g.node(i) < 0.0 ? -0.9 : 0.0;
    const std::size_t j = g.n / 2;
    t[j + 1] = 0.5;
    t[j + 2] = 0.3;
    t[j + 3] = 0.8;
    for (std::size_t i = j + 4; i < g.n; ++i) t[i] = 0.8;
    const TransformResult e = monotone_envelope(t, ws);
    CHECK(e.theta[j + 1] == 0.5);
    CHECK(e.theta[j + 2] == 0.5);
    CHECK(e.theta[j + 3] == 0.8);
    CHECK(e.report.energy_after < e.report.energy_before);
    for (std::size_t i = 0; i + 1 < g.n; ++i) CHECK(e.theta[i + 1] >= e.theta[i]);
}

TEST_CASE("symmetrize produces an odd wall on symmetric profiles") {
    const Grid g(10.0, 801);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.0);
    const EnergyWorkspace ws(p, g);

    const AngleField odd = separatrix_field(g);
    const TransformResult keep = symmetrize(odd, p, ws);
    CHECK(!keep.report.changed);

    const AngleField moved = separatrix_field(g, 1.0);
    const TransformResult s = symmetrize(moved, p, ws);
    CHECK(s.report.energy_after < s.report.energy_before);
    for (std::size_t i = 0; i < g.n; ++i)
        CHECK(std::abs(s.theta[i] + s.theta[g.n - 1 - i]) <= 1e-10);
    for (std::size_t i = 0; i + 1 < g.n; ++i) CHECK(s.theta[i + 1] >= s.theta[i] - 1e-12);

    const NotchProfile skew = NotchProfile::piecewise_linear(
        {{-1.0, 1.0}, {-0.5, 0.6}, {0.0, 1.0}, {1.0, 1.0}});
    CHECK_THROWS(symmetrize(moved, skew, ws));

    AngleField wiggle = moved;
    wiggle[g.n / 2] = -1.0;
    CHECK_THROWS_AS((void)symmetrize(wiggle, p, ws), DomainError);
}

TEST_CASE("symmetrize keeps the mass of pi/2 - |theta| (equimeasurability)") {
    const Grid g(10.0, 801);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.0);
    const EnergyWorkspace ws(p, g);
    const ChangeOfVariable cov(p, g);
    const AngleField in = separatrix_field(g, 0.8);
    const TransformResult s = symmetrize(in, p, ws);
    REQUIRE(s.report.changed);
    // y-measure of pi/2 - |theta| is preserved up to quadrature error
    auto mass = [&](const AngleField& t) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < g.n; ++i) {
            const double dy = cov.y_node(i + 1) - cov.y_node(i);
            acc += dy * 0.5 * (M_PI - std::abs(t[i]) - std::abs(t[i + 1]));
        }
        return acc;
    };
    CHECK(mass(s.theta) == doctest::Approx(mass(in)).epsilon(0.02));
}

TEST_CASE("localize shifts a distant wall into the notch") {
    const Grid g(20.0, 1601);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const EnergyWorkspace ws(p, g);

    CHECK(!localize(separatrix_field(g), p, ws).report.changed);

    const AngleField far = separatrix_field(g, 10.0);
    const TransformResult l = localize(far, p, ws);
    CHECK(l.report.changed);
    CHECK(l.report.energy_after < l.report.energy_before);
    const double z = first_zero(l.theta, g);
    CHECK(std::abs(z) <= p.a() + 2.0 * g.h);
    for (std::size_t i = 0; i + 1 < g.n; ++i) CHECK(l.theta[i + 1] >= l.theta[i] - 1e-12);

    // notchless wire: translation is a symmetry, the transform is a no-op
    const NotchProfile flat = NotchProfile::plateau(1.0, 1.0, 0.0);
    const EnergyWorkspace wsf(flat, g);
    const TransformResult nf = localize(far, flat, wsf);
    CHECK(!nf.report.changed);
    CHECK(nf.report.energy_after == nf.report.energy_before);
}

TEST_CASE("transform chain: monotone energy and idempotence") {
    const Grid g(12.0, 601);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const EnergyWorkspace ws(p, g);
    std::mt19937_64 rng(11);
    const std::vector<std::string> chain = {"threshold", "reflect", "envelope", "symmetrize",
                                            "localize"};
    for (int trial = 0; trial < 100; ++trial) {
        const AngleField t = random_crossing_field(g, rng);
        const auto steps = apply_chain(t, chain, p, ws);
        double prev = energy_value(t, ws);
        for (const auto& st : steps) {
            CHECK(st.report.energy_before == doctest::Approx(prev).epsilon(1e-14));
            CHECK(st.report.energy_after <= st.report.energy_before + 1e-12);
            prev = st.report.energy_after;
        }
        // idempotence of each individual transform
        const AngleField& final1 = steps.back().theta;
        for (const std::string& name : chain) {
            const auto once = apply_chain(final1, {name}, p, ws);
            const auto twice = apply_chain(once.back().theta, {name}, p, ws);
            for (std::size_t i = 0; i < g.n; ++i)
                CHECK(std::abs(twice.back().theta[i] - once.back().theta[i]) <= 1e-12);
        }
    }
}
