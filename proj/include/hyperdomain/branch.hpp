#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hyperdomain/polynomial.hpp"

namespace hyperdomain {

enum class Side { plus, minus }; // plus: x_v > b on the component, minus: x_v < b

/// One connected component of the hyperbola (x_u - a)(x_v - b) = c, c != 0.
/// The component lives over an open x_u half-line ("support") determined by
/// the side and the sign of c; both support endpoints are open.
struct Branch {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    Side side = Side::plus;

    bool in_support(double u) const;
    std::pair<double, double> support() const; // (lo, hi), infinities allowed
    double height_unchecked(double u) const { return b + c / (u - a); }
};

// Height of the branch over u, or nullopt outside the support (including u = a).
std::optional<double> branch_height(const Branch& br, double u);

// True iff |(pu - a)(pv - b) - c| <= tol and (pu, pv) lies strictly on the
// selected side.
bool branch_contains(const Branch& br, double pu, double pv, double tol);

struct BranchIntersection {
    double u = 0.0;
    double v = 0.0;
    bool tangent = false; // 2x2 gradient determinant vanishes at the point
};

// All common points of two components placed in the same coordinate 2-plane.
// Returns 0, 1 or 2 points; identical components are a degenerate overlap
// and rejected.
std::vector<BranchIntersection> intersect_branches(const Branch& b1, const Branch& b2);

/// A branch placed in the (x_1, x_v) coordinate plane of R^n with an
/// orientation sign. The defining polynomial is
///   f = sigma * ((x_1 - a)(x_v - b) - c),
/// positive on the designated inside, zero on the full hyperbola. The
/// hypersurface itself is the selected component times R^{n-2}.
struct Hypersurface {
    int v = 2;   // 1-based index of the second plane coordinate; the first is x_1
    Branch branch;
    int sigma = 1;

    double value(double x1, double xv) const {
        return sigma * ((x1 - branch.a) * (xv - branch.b) - branch.c);
    }
    // (d/dx1, d/dxv) of the defining polynomial.
    std::pair<double, double> grad_plane(double x1, double xv) const {
        return {sigma * (xv - branch.b), sigma * (x1 - branch.a)};
    }
    // True if the factor region lies above the branch (xv > height over the
    // support); false if below. Follows from sigma and the sign of x_1 - a
    // on the support.
    bool is_lower_boundary() const;
};

// The defining polynomial embedded in n variables: the monomials
// x_1 x_v, x_1, x_v, 1 with zero coefficients dropped.
Polynomial hypersurface_poly(const Hypersurface& h, int n);

} // namespace hyperdomain
