#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hyperdomain/domain.hpp"
#include "hyperdomain/rng.hpp"

using namespace hyperdomain;

namespace {

bool branch_equals(const Branch& b, double a, double bb, double c, Side s) {
    return b.a == a && b.b == bb && b.c == c && b.side == s;
}

// Random admissible instance: increasing t in [-10, 10] with min gap 0.2.
DomainSpec random_instance(Rng& rng, int l) {
    std::vector<double> t;
    while (true) {
        t.clear();
        for (int i = 0; i < l; ++i)
            t.push_back(rng.uniform(-10, 10));
        std::sort(t.begin(), t.end());
        bool ok = true;
        for (int i = 0; i + 1 < l; ++i)
            ok = ok && t[i + 1] - t[i] >= 0.2;
        if (ok)
            break;
    }
    std::vector<int> labels;
    for (int i = 0; i < l - 1; ++i)
        labels.push_back(rng.coin() ? 1 : 0);
    return build_domain(t, labels, BuildMode::minimal);
}

} // namespace

TEST_CASE("lens recipe") {
    FactorDomain f = make_lens(-1, 1);
    REQUIRE(f.hypersurfaces.size() == 2);
    CHECK(branch_equals(f.hypersurfaces[0].branch, -2, -2, 3, Side::plus));
    CHECK(f.hypersurfaces[0].sigma == 1);
    CHECK(branch_equals(f.hypersurfaces[1].branch, 2, 2, 3, Side::minus));
    CHECK(f.hypersurfaces[1].sigma == 1);
    REQUIRE(f.corners.size() == 2);
    CHECK(f.corners[0].x1 == -1.0);
    CHECK(f.corners[0].xv == 1.0);
    CHECK(f.corners[1].x1 == 1.0);
    CHECK(f.corners[1].xv == -1.0);

    FactorDomain g = make_lens(-2, 2);
    CHECK(branch_equals(g.hypersurfaces[0].branch, -4, -4, 12, Side::plus));
    CHECK(branch_equals(g.hypersurfaces[1].branch, 4, 4, 12, Side::minus));
    CHECK(g.corners[0].x1 == -2.0);
    CHECK(g.corners[1].x1 == 2.0);

    SliceInterval iv = f.slice(0.0);
    CHECK(iv.lo == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(iv.hi == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(iv.empty);
    CHECK(f.slice(2.0).empty);
    CHECK(f.slice(-1.5).empty);

    CHECK_THROWS_AS(make_lens(1, 1), std::invalid_argument);
}

TEST_CASE("pinch recipe") {
    FactorDomain f = make_pinch(0, 1);
    REQUIRE(f.hypersurfaces.size() == 4);
    CHECK(branch_equals(f.hypersurfaces[0].branch, -1, 0, 1, Side::plus));
    CHECK(f.hypersurfaces[0].sigma == -1);
    CHECK(branch_equals(f.hypersurfaces[1].branch, 1, 0, -1, Side::plus));
    CHECK(f.hypersurfaces[1].sigma == 1);
    CHECK(branch_equals(f.hypersurfaces[2].branch, 1, 0, 1, Side::minus));
    CHECK(f.hypersurfaces[2].sigma == -1);
    CHECK(branch_equals(f.hypersurfaces[3].branch, -1, 0, -1, Side::minus));
    CHECK(f.hypersurfaces[3].sigma == 1);

    REQUIRE(f.corners.size() == 2);
    CHECK(f.corners[0].x1 == 0.0);
    CHECK(f.corners[0].xv == 1.0);
    CHECK(f.corners[1].x1 == 0.0);
    CHECK(f.corners[1].xv == -1.0);

    SliceInterval iv = f.slice(0.0);
    CHECK(iv.lo == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(iv.hi == doctest::Approx(1.0).epsilon(1e-15));

    // All four inequalities hold with value 1 at the plane origin.
    for (const Hypersurface& h : f.hypersurfaces)
        CHECK(h.value(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));

    // Corner crossing is transversal with |det| = 2 rho^2.
    auto ga = f.hypersurfaces[0].grad_plane(0, 1);
    auto gb = f.hypersurfaces[1].grad_plane(0, 1);
    double det = ga.first * gb.second - ga.second * gb.first;
    CHECK(std::abs(det) == doctest::Approx(2.0).epsilon(1e-14));

    // Slices stay nonempty and contain 0 far outside the pinch.
    for (double x1 : {-100.0, -3.0, 0.7, 5.0, 250.0}) {
        SliceInterval s = f.slice(x1);
        CHECK(s.lo < 0.0);
        CHECK(s.hi > 0.0);
    }

    CHECK_THROWS_AS(make_pinch(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_pinch(0, -1), std::invalid_argument);
}

TEST_CASE("open factor recipe") {
    FactorDomain f = make_open(0, 1, false, 2);
    REQUIRE(f.hypersurfaces.size() == 4);
    CHECK(branch_equals(f.hypersurfaces[0].branch, 1, 0, 4, Side::plus));
    CHECK(f.hypersurfaces[0].sigma == -1);
    CHECK(branch_equals(f.hypersurfaces[1].branch, 0, 0, -4, Side::plus));
    CHECK(f.hypersurfaces[1].sigma == 1);
    CHECK(branch_equals(f.hypersurfaces[2].branch, 2, 0, 4, Side::minus));
    CHECK(branch_equals(f.hypersurfaces[3].branch, -2, 0, -4, Side::minus));

    REQUIRE(f.corners.size() == 1);
    CHECK(f.corners[0].x1 == 0.0);
    CHECK(f.corners[0].xv == -2.0);

    // The two upper branches never meet.
    CHECK(intersect_branches(f.hypersurfaces[0].branch, f.hypersurfaces[1].branch).empty());

    SliceInterval iv = f.slice(0.5);
    CHECK(iv.lo == doctest::Approx(-1.6).epsilon(1e-15));
    CHECK(std::isinf(iv.hi));
    CHECK(iv.unbounded_above());

    // Bounded above again outside [t_j, t_{j+1}].
    CHECK_FALSE(f.slice(-0.25).unbounded_above());
    CHECK_FALSE(f.slice(1.25).unbounded_above());
    CHECK(f.slice(0.0).unbounded_above());
    CHECK(f.slice(1.0).unbounded_above());

    CHECK_THROWS_AS(make_open(1, 1, false, 2), std::invalid_argument);
    CHECK_THROWS_AS(make_open(0, 3, false, 2), std::invalid_argument);
}

TEST_CASE("first-interval open factor") {
    FactorDomain f = make_open(0, 1, true, 2);
    REQUIRE(f.hypersurfaces.size() == 2);
    CHECK(f.first_interval);
    CHECK(f.corners.empty());
    CHECK(branch_equals(f.hypersurfaces[0].branch, 1, 0, 4, Side::plus));
    CHECK(f.hypersurfaces[0].sigma == -1);
    CHECK(branch_equals(f.hypersurfaces[1].branch, 4, 0, 4, Side::minus));
    CHECK(f.hypersurfaces[1].sigma == -1);

    // Unbounded above exactly for x1 <= t_{j+1}.
    CHECK(f.slice(-5.0).unbounded_above());
    CHECK(f.slice(1.0).unbounded_above());
    CHECK_FALSE(f.slice(1.5).unbounded_above());
    CHECK(f.slice(1.5).lo < 0.0);
}

TEST_CASE("build accounting across modes") {
    DomainSpec lens_only = build_domain({-1, 1}, {0}, BuildMode::minimal);
    CHECK(lens_only.n == 2);
    CHECK(lens_only.L == 2);
    CHECK(lens_only.factors.size() == 1);
    CHECK(lens_only.base_point == std::vector<double>{0, 0});

    DomainSpec two_pinch = build_domain({0, 1, 2}, {0, 0}, BuildMode::minimal);
    CHECK(two_pinch.n == 3);
    CHECK(two_pinch.L == 6);
    REQUIRE(two_pinch.factors.size() == 2);
    CHECK(two_pinch.factors[1].kind == FactorKind::pinch);
    CHECK(two_pinch.factors[1].t_lo == 1.0);
    CHECK(two_pinch.factors[1].v == 3);

    // The all-zero literal list coincides with the minimal one.
    DomainSpec lit = build_domain({0, 1, 2}, {0, 0}, BuildMode::literal);
    CHECK(lit.n == two_pinch.n);
    CHECK(lit.L == two_pinch.L);
    CHECK(lit.factors[1].kind == FactorKind::pinch);

    DomainSpec mixed = build_domain({0, 1, 2}, {1, 0}, BuildMode::minimal);
    CHECK(mixed.n == 4);
    CHECK(mixed.L == 8);
    REQUIRE(mixed.factors.size() == 3);
    CHECK(mixed.factors[1].kind == FactorKind::open);
    CHECK(mixed.factors[1].first_interval);
    CHECK(mixed.factors[2].kind == FactorKind::pinch);

    // Literal mode keeps the four-branch first factor and duplicates corner x1.
    DomainSpec lit_mixed = build_domain({0, 1, 2}, {1, 0}, BuildMode::literal);
    CHECK(lit_mixed.n == 4);
    CHECK(lit_mixed.factors[1].kind == FactorKind::open);
    CHECK_FALSE(lit_mixed.factors[1].first_interval);
    CHECK(lit_mixed.factors[1].corners.size() == 1);

    CHECK_THROWS_AS(build_domain({1, 1, 2}, {0, 0}, BuildMode::minimal), std::invalid_argument);
    CHECK_THROWS_AS(build_domain({1}, {}, BuildMode::minimal), std::invalid_argument);
    CHECK_THROWS_AS(build_domain({0, 1}, {0, 1}, BuildMode::minimal), std::invalid_argument);
    CHECK_THROWS_AS(build_domain({0, 1}, {2}, BuildMode::minimal), std::invalid_argument);
    CHECK_THROWS_AS(build_domain({0, 1}, {1}, BuildMode::literal), std::invalid_argument);

    // The l=2 label-1 extension builds in minimal mode and says so.
    DomainSpec ext = build_domain({0, 1}, {1}, BuildMode::minimal);
    CHECK(ext.n == 3);
    CHECK_FALSE(ext.notes.empty());
}

TEST_CASE("membership and the spurious component") {
    DomainSpec d = build_domain({-1, 1}, {0}, BuildMode::minimal);

    CHECK(contains(d, d.base_point, false, 1e-12));

    // All inequalities hold at (-5,-5) yet the point is in another component.
    std::vector<double> spurious{-5, -5};
    CHECK(d.f_value(0, spurious) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(d.f_value(1, spurious) == doctest::Approx(46.0).epsilon(1e-15));
    CHECK_FALSE(contains(d, spurious, false, 1e-9));
    CHECK_FALSE(contains(d, spurious, true, 1e-9));

    std::vector<double> corner{-1, 1};
    CHECK(contains(d, corner, true, 1e-9));
    CHECK_FALSE(contains(d, corner, false, 1e-9));

    CHECK_THROWS_AS(contains(d, std::vector<double>{0.0, 0.0, 0.0}, false, 1e-9),
                    std::invalid_argument);
}

TEST_CASE("corner records") {
    DomainSpec d1 = build_domain({-1, 1}, {0}, BuildMode::minimal);
    std::set<double> xs;
    for (const CornerRecord& c : corners(d1))
        xs.insert(c.x1);
    CHECK(xs == std::set<double>{-1, 1});

    DomainSpec d2 = build_domain({0, 1, 2}, {0, 0}, BuildMode::minimal);
    xs.clear();
    for (const CornerRecord& c : corners(d2))
        xs.insert(c.x1);
    CHECK(xs == std::set<double>{0, 1, 2});

    DomainSpec d3 = build_domain({0, 1, 2}, {1, 1}, BuildMode::minimal);
    xs.clear();
    for (const CornerRecord& c : corners(d3))
        xs.insert(c.x1);
    CHECK(xs == std::set<double>{0, 1, 2});
}

TEST_CASE("slices over random builds") {
    Rng rng(5150);
    for (int trial = 0; trial < 30; ++trial) {
        int l = 2 + static_cast<int>(rng.uniform() * 5);
        DomainSpec d = random_instance(rng, l);
        const double t1 = d.t.front(), tl = d.t.back();

        for (int probe = 0; probe < 50; ++probe) {
            double x1 = rng.uniform(t1, tl);
            if (std::count(d.t.begin(), d.t.end(), x1) > 0)
                continue;
            auto ivs = slice(d, x1);
            REQUIRE(ivs.size() == d.factors.size());
            bool unbounded = false;
            for (std::size_t i = 0; i < ivs.size(); ++i) {
                CHECK_FALSE(ivs[i].empty);
                CHECK(ivs[i].lo < (std::isinf(ivs[i].hi) ? 1e300 : ivs[i].hi));
                if (i == 0)
                    CHECK(std::isfinite(ivs[i].hi)); // lens slice is bounded
                unbounded = unbounded || ivs[i].unbounded_above();
            }
            // Slice boundedness follows the label of the interval holding x1.
            int idx = 0;
            while (idx + 2 < static_cast<int>(d.t.size()) && d.t[idx + 1] < x1)
                ++idx;
            CHECK(unbounded == (d.labels[idx] == 1));
        }

        // The lens interval empties exactly outside [t_1, t_l].
        CHECK(d.factors[0].slice(t1 - 0.01 * d.span()).empty);
        CHECK(d.factors[0].slice(tl + 0.01 * d.span()).empty);

        // Corner x1 values are exactly the input sequence.
        std::set<double> xs;
        for (const CornerRecord& c : corners(d))
            xs.insert(c.x1);
        CHECK(xs == std::set<double>(d.t.begin(), d.t.end()));
    }
}

TEST_CASE("membership routes agree away from the boundary band") {
    Rng rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        int l = 2 + static_cast<int>(rng.uniform() * 5);
        DomainSpec d = random_instance(rng, l);
        double span = d.span();
        const double band = 1e-7;

        int checked = 0, inside = 0;
        for (int probe = 0; probe < 20000; ++probe) {
            std::vector<double> x(d.n);
            // Half wide-box probes, half near-domain probes.
            if (probe % 2 == 0) {
                for (int i = 0; i < d.n; ++i)
                    x[i] = d.base_point[i] + rng.uniform(-2.5 * span, 2.5 * span);
            } else {
                double x1 = rng.uniform(d.t.front(), d.t.back());
                x[0] = x1;
                auto ivs = slice(d, x1);
                for (std::size_t i = 0; i < ivs.size(); ++i) {
                    double hi = std::isinf(ivs[i].hi) ? ivs[i].lo + span : ivs[i].hi;
                    double mid = 0.5 * (ivs[i].lo + hi), w = hi - ivs[i].lo;
                    x[d.factors[i].v - 1] = mid + rng.uniform(-0.75, 0.75) * w;
                }
            }
            // Exclude the boundary band: any constraint too close to zero.
            bool banded = false;
            for (int j = 0; j < d.L; ++j)
                banded = banded || std::abs(d.f_value(j, x)) < band;
            if (banded)
                continue;
            ++checked;
            bool by_signs = contains_by_signs(d, x, false, 0.0);
            bool by_slices = contains_by_slices(d, x, false, 0.0);
            CHECK(by_signs == by_slices);
            inside += by_signs;
        }
        CHECK(checked > 15000);
        CHECK(inside > 100); // both routes see actual members
    }
}
