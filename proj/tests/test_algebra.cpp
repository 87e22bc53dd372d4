#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "hyperdomain/branch.hpp"
#include "hyperdomain/polynomial.hpp"
#include "hyperdomain/rng.hpp"

using namespace hyperdomain;

TEST_CASE("branch height on and off the support") {
    Branch unit{0, 0, 1, Side::plus};
    CHECK(branch_height(unit, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

    Branch lens_lower{-2, -2, 3, Side::plus};
    auto h = branch_height(lens_lower, 0.0);
    REQUIRE(h.has_value());
    CHECK(*h == doctest::Approx(-0.5).epsilon(1e-15));

    CHECK_FALSE(branch_height(lens_lower, -3.0).has_value()); // left of a = -2
    CHECK_FALSE(branch_height(lens_lower, -2.0).has_value()); // support endpoints are open
}

TEST_CASE("branch support by side and sign of c") {
    CHECK(Branch{1, 0, 4, Side::plus}.support() ==
          std::pair<double, double>(1, std::numeric_limits<double>::infinity()));
    CHECK(Branch{0, 0, -4, Side::plus}.support() ==
          std::pair<double, double>(-std::numeric_limits<double>::infinity(), 0));
    CHECK(Branch{2, 2, 3, Side::minus}.support() ==
          std::pair<double, double>(-std::numeric_limits<double>::infinity(), 2));
    CHECK(Branch{-2, 0, -1, Side::minus}.support() ==
          std::pair<double, double>(-2, std::numeric_limits<double>::infinity()));
}

TEST_CASE("branch membership") {
    CHECK(branch_contains(Branch{0, 0, 1, Side::plus}, 1, 1, 1e-12));
    CHECK_FALSE(branch_contains(Branch{0, 0, 1, Side::plus}, -1, -1, 1e-12)); // wrong side
    CHECK(branch_contains(Branch{2, 2, 3, Side::minus}, 1, -1, 1e-12));
    // On the hyperbola of the other component.
    CHECK_FALSE(branch_contains(Branch{0, 0, 1, Side::plus}, -2, -0.5, 1e-12));
    // Side boundary is excluded.
    CHECK_FALSE(branch_contains(Branch{0, 0, 1, Side::plus}, 1, 0, 10.0));
}

TEST_CASE("height points lie on the branch") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Branch br{rng.uniform(-5, 5), rng.uniform(-5, 5),
                  (rng.coin() ? 1 : -1) * rng.uniform(0.1, 5.0),
                  rng.coin() ? Side::plus : Side::minus};
        auto [lo, hi] = br.support();
        double u = std::isinf(lo) ? hi - rng.uniform(1e-3, 10.0) : lo + rng.uniform(1e-3, 10.0);
        auto h = branch_height(br, u);
        REQUIRE(h.has_value());
        CHECK(branch_contains(br, u, *h, 1e-9));
    }
}

TEST_CASE("hypersurface polynomial expansion") {
    // (x1+2)(x2+2) - 3 = x1 x2 + 2 x1 + 2 x2 + 1
    Hypersurface lens_lower{2, {-2, -2, 3, Side::plus}, +1};
    Polynomial p = hypersurface_poly(lens_lower, 2);
    CHECK(p.term_count() == 4);
    CHECK(p.coefficient({1, 1}) == 1.0);
    CHECK(p.coefficient({1, 0}) == 2.0);
    CHECK(p.coefficient({0, 1}) == 2.0);
    CHECK(p.coefficient({0, 0}) == 1.0);

    // x1 x2 - 1: the a = b = 0 case drops the linear monomials.
    Polynomial q = hypersurface_poly({2, {0, 0, 1, Side::plus}, +1}, 2);
    CHECK(q.term_count() == 2);
    CHECK(q.coefficient({1, 1}) == 1.0);
    CHECK(q.coefficient({0, 0}) == -1.0);

    // -((x1+1) x3 - 1) = 1 - x1 x3 - x3 embedded in three variables.
    Polynomial r = hypersurface_poly({3, {-1, 0, 1, Side::plus}, -1}, 3);
    CHECK(r.term_count() == 3);
    CHECK(r.coefficient({1, 0, 1}) == -1.0);
    CHECK(r.coefficient({0, 0, 1}) == -1.0);
    CHECK(r.coefficient({0, 0, 0}) == 1.0);

    CHECK_THROWS_AS(hypersurface_poly({3, {0, 0, 1, Side::plus}, 1}, 2), std::out_of_range);
}

TEST_CASE("polynomial evaluation and gradient at pinned points") {
    Hypersurface f1{2, {-2, -2, 3, Side::plus}, +1};
    Hypersurface f2{2, {2, 2, 3, Side::minus}, +1};
    Polynomial p1 = hypersurface_poly(f1, 2);
    Polynomial p2 = hypersurface_poly(f2, 2);

    std::vector<double> origin{0, 0};
    CHECK(p1.eval(origin) == doctest::Approx(1.0).epsilon(1e-15));

    std::vector<double> corner{-1, 1};
    CHECK(p1.eval(corner) == doctest::Approx(0.0).epsilon(1e-15));
    auto g1 = p1.grad(corner);
    CHECK(g1[0] == doctest::Approx(3.0));
    CHECK(g1[1] == doctest::Approx(1.0));
    auto g2 = p2.grad(corner);
    CHECK(g2[0] == doctest::Approx(-1.0));
    CHECK(g2[1] == doctest::Approx(-3.0));

    Polynomial c(3);
    c.add_term({0, 0, 0}, 4.5);
    auto gc = c.grad(std::vector<double>{1, 2, 3});
    CHECK(gc == std::vector<double>{0, 0, 0});

    // Evaluation at the all-zero point returns the constant term.
    CHECK(p1.eval(std::vector<double>{0, 0}) == p1.coefficient({0, 0}));

    CHECK_THROWS_AS(p1.eval(std::vector<double>{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("gradient matches central differences on random quadratics") {
    Rng rng(2024);
    const double h = 1e-5;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform() * 3);
        Polynomial p(n);
        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                Polynomial::Exponents e(n, 0);
                e[a] += 1;
                e[b] += 1;
                p.add_term(e, rng.uniform(-3, 3));
            }
            Polynomial::Exponents e(n, 0);
            e[a] = 1;
            p.add_term(e, rng.uniform(-3, 3));
        }
        p.add_term(Polynomial::Exponents(n, 0), rng.uniform(-3, 3));

        for (int pt = 0; pt < 10; ++pt) {
            std::vector<double> x(n);
            for (double& v : x)
                v = rng.uniform(-2, 2);
            auto g = p.grad(x);
            for (int i = 0; i < n; ++i) {
                std::vector<double> xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                double fd = (p.eval(xp) - p.eval(xm)) / (2 * h);
                double scale = std::max({1.0, std::abs(g[i]), std::abs(fd)});
                CHECK(std::abs(g[i] - fd) / scale < 1e-6);
            }
        }
    }
}

TEST_CASE("hypersurface polynomial vanishes on the branch") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        Branch br{rng.uniform(-4, 4), rng.uniform(-4, 4),
                  (rng.coin() ? 1 : -1) * rng.uniform(0.2, 4.0),
                  rng.coin() ? Side::plus : Side::minus};
        Hypersurface hs{2, br, rng.coin() ? 1 : -1};
        Polynomial p = hypersurface_poly(hs, 2);
        auto [lo, hi] = br.support();
        double u = std::isinf(lo) ? hi - rng.uniform(0.01, 8.0) : lo + rng.uniform(0.01, 8.0);
        double v = br.height_unchecked(u);
        CHECK(std::abs(p.eval(std::vector<double>{u, v})) <= 1e-9 * (1.0 + p.coeff_scale()));
    }
}

TEST_CASE("branch intersections: lens pair") {
    auto pts = intersect_branches(Branch{-2, -2, 3, Side::plus}, Branch{2, 2, 3, Side::minus});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].u == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(pts[0].v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pts[1].u == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pts[1].v == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_FALSE(pts[0].tangent);
    CHECK_FALSE(pts[1].tangent);
}

TEST_CASE("branch intersections: pinch upper pair crosses once") {
    auto pts = intersect_branches(Branch{-1, 0, 1, Side::plus}, Branch{1, 0, -1, Side::plus});
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].u == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(pts[0].v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(pts[0].tangent);
}

TEST_CASE("branch intersections: disjoint supports") {
    auto pts = intersect_branches(Branch{1, 0, 4, Side::plus}, Branch{0, 0, -4, Side::plus});
    CHECK(pts.empty());
}

TEST_CASE("branch intersections: identical and sibling components") {
    Branch b{1, 2, 3, Side::plus};
    CHECK_THROWS_AS(intersect_branches(b, b), std::invalid_argument);
    Branch sibling = b;
    sibling.side = Side::minus;
    CHECK(intersect_branches(b, sibling).empty());
}

TEST_CASE("random branch intersections satisfy both memberships and commute") {
    Rng rng(31337);
    int nonempty = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Branch b1{rng.uniform(-5, 5), rng.uniform(-5, 5),
                  (rng.coin() ? 1 : -1) * rng.uniform(0.2, 5.0),
                  rng.coin() ? Side::plus : Side::minus};
        Branch b2{rng.uniform(-5, 5), rng.uniform(-5, 5),
                  (rng.coin() ? 1 : -1) * rng.uniform(0.2, 5.0),
                  rng.coin() ? Side::plus : Side::minus};
        auto pts = intersect_branches(b1, b2);
        auto swapped = intersect_branches(b2, b1);
        REQUIRE(pts.size() == swapped.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(branch_contains(b1, pts[i].u, pts[i].v, 1e-9));
            CHECK(branch_contains(b2, pts[i].u, pts[i].v, 1e-9));
            CHECK(pts[i].u == doctest::Approx(swapped[i].u).epsilon(1e-12));
            CHECK(pts[i].v == doctest::Approx(swapped[i].v).epsilon(1e-12));
        }
        nonempty += !pts.empty();
    }
    CHECK(nonempty > 50); // the sweep actually exercises crossing cases
}
