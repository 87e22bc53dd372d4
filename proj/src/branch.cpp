#include "hyperdomain/branch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperdomain {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool Branch::in_support(double u) const {
    // The selected component needs c / (u - a) with the sign matching the side.
    bool right_of_a = (c > 0.0) == (side == Side::plus);
    return right_of_a ? u > a : u < a;
}

std::pair<double, double> Branch::support() const {
    bool right_of_a = (c > 0.0) == (side == Side::plus);
    return right_of_a ? std::make_pair(a, kInf) : std::make_pair(-kInf, a);
}

std::optional<double> branch_height(const Branch& br, double u) {
    if (!br.in_support(u))
        return std::nullopt;
    return br.height_unchecked(u);
}

bool branch_contains(const Branch& br, double pu, double pv, double tol) {
    if (tol < 0.0)
        throw std::invalid_argument("branch_contains: tol must be non-negative");
    double residual = (pu - br.a) * (pv - br.b) - br.c;
    if (std::abs(residual) > tol)
        return false;
    return br.side == Side::plus ? pv > br.b : pv < br.b;
}

bool Hypersurface::is_lower_boundary() const {
    bool right_of_a = (branch.c > 0.0) == (branch.side == Side::plus);
    int s = right_of_a ? 1 : -1;
    return sigma * s > 0;
}

Polynomial hypersurface_poly(const Hypersurface& h, int n) {
    if (h.v < 2 || h.v > n)
        throw std::out_of_range("hypersurface_poly: plane index v out of range");
    const Branch& br = h.branch;
    Polynomial p(n);
    Polynomial::Exponents e(n, 0);

    e[0] = 1; e[h.v - 1] = 1;
    p.add_term(e, h.sigma);
    e[0] = 1; e[h.v - 1] = 0;
    p.add_term(e, h.sigma * -br.b);
    e[0] = 0; e[h.v - 1] = 1;
    p.add_term(e, h.sigma * -br.a);
    e[h.v - 1] = 0;
    p.add_term(e, h.sigma * (br.a * br.b - br.c));
    return p;
}

namespace {

// Cross-multiplied height equality of two branches as a polynomial in u:
//   g(u) = (b1-b2)(u-a1)(u-a2) + c1 (u-a2) - c2 (u-a1).
double cleared_eq(const Branch& b1, const Branch& b2, double u) {
    return (b1.b - b2.b) * (u - b1.a) * (u - b2.a) + b1.c * (u - b2.a) - b2.c * (u - b1.a);
}

double cleared_eq_deriv(const Branch& b1, const Branch& b2, double u) {
    return (b1.b - b2.b) * (2.0 * u - b1.a - b2.a) + b1.c - b2.c;
}

void polish_root(const Branch& b1, const Branch& b2, double& u) {
    for (int i = 0; i < 2; ++i) {
        double d = cleared_eq_deriv(b1, b2, u);
        if (d == 0.0)
            return;
        double step = cleared_eq(b1, b2, u) / d;
        if (!std::isfinite(step))
            return;
        u -= step;
    }
}

void emit_point(const Branch& b1, const Branch& b2, double u, bool tangent_hint,
                std::vector<BranchIntersection>& out) {
    if (u == b1.a || u == b2.a)
        return;
    if (!b1.in_support(u) || !b2.in_support(u))
        return;
    double h1 = b1.height_unchecked(u);
    double h2 = b2.height_unchecked(u);
    double v = 0.5 * (h1 + h2);
    // Strict side tests; a crossing on a side boundary would contradict c != 0.
    if ((b1.side == Side::plus ? v <= b1.b : v >= b1.b))
        return;
    if ((b2.side == Side::plus ? v <= b2.b : v >= b2.b))
        return;
    double det = (v - b1.b) * (u - b2.a) - (u - b1.a) * (v - b2.b);
    double n1 = std::hypot(v - b1.b, u - b1.a);
    double n2 = std::hypot(v - b2.b, u - b2.a);
    bool tangent = tangent_hint || std::abs(det) <= 1e-9 * n1 * n2;
    out.push_back({u, v, tangent});
}

} // namespace

std::vector<BranchIntersection> intersect_branches(const Branch& b1, const Branch& b2) {
    if (b1.a == b2.a && b1.b == b2.b && b1.c == b2.c) {
        if (b1.side == b2.side)
            throw std::invalid_argument("intersect_branches: identical branches (degenerate overlap)");
        return {}; // opposite components of one hyperbola never meet
    }

    double A = b1.b - b2.b;
    double B = -(b1.b - b2.b) * (b1.a + b2.a) + (b1.c - b2.c);
    double C = (b1.b - b2.b) * b1.a * b2.a - b1.c * b2.a + b2.c * b1.a;

    std::vector<BranchIntersection> out;
    if (A == 0.0) {
        if (B == 0.0)
            return {}; // parallel height curves, no crossing
        double u = -C / B;
        polish_root(b1, b2, u);
        emit_point(b1, b2, u, false, out);
        return out;
    }

    double disc = B * B - 4.0 * A * C;
    double disc_scale = std::max(1.0, std::max(B * B, std::abs(4.0 * A * C)));
    if (std::abs(disc) <= 1e-12 * disc_scale) {
        // Double root: tangency candidate.
        double u = -B / (2.0 * A);
        polish_root(b1, b2, u);
        emit_point(b1, b2, u, true, out);
        return out;
    }
    if (disc < 0.0)
        return {};

    // Sign-aware pairing avoids cancellation between -B and the root term.
    double sq = std::sqrt(disc);
    double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    double u1 = q / A;
    double u2 = C / q;
    polish_root(b1, b2, u1);
    polish_root(b1, b2, u2);
    emit_point(b1, b2, u1, false, out);
    emit_point(b1, b2, u2, false, out);
    if (out.size() == 2 && out[0].u > out[1].u)
        std::swap(out[0], out[1]);
    return out;
}

} // namespace hyperdomain
