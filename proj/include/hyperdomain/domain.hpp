#pragma once

#include <span>
#include <string>
#include <vector>

#include "hyperdomain/branch.hpp"

namespace hyperdomain {

enum class FactorKind { lens, pinch, open };
enum class BuildMode { minimal, literal };

struct Corner {
    double x1 = 0.0;
    double xv = 0.0;
    int h0 = 0; // indices into the owning factor's hypersurface list
    int h1 = 1;
};

/// Open interval of admissible x_v for one factor at a fixed x_1. lo/hi may
/// be infinite when no bound of that side applies; `empty` marks the lens
/// slice outside [t_1, t_l].
struct SliceInterval {
    int v = 2;
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;

    bool unbounded_above() const;
};

/// One planar building block of the domain: two crossing branches (lens),
/// four branches pinching to two corners at one t_j (pinch), or an
/// upper-open window over one interval (open; two branches in the
/// first-interval variant, four otherwise).
struct FactorDomain {
    FactorKind kind = FactorKind::lens;
    int v = 2;                  // plane is (x_1, x_v)
    bool first_interval = false;
    double t_lo = 0.0;          // lens: t_1; pinch: t_j; open: t_j
    double t_hi = 0.0;          // lens: t_l; pinch: t_j; open: t_{j+1}
    double rho = 0.0;           // recipe scale (lens: r)
    std::vector<Hypersurface> hypersurfaces;
    std::vector<Corner> corners;

    SliceInterval slice(double x1) const;
};

struct CornerRecord {
    double x1 = 0.0;
    int factor = 0;
    double xv = 0.0;
    int h0 = 0; // global hypersurface ids
    int h1 = 0;
};

struct DomainSpec {
    std::vector<double> t;
    std::vector<int> labels; // labels[j-1] is the label of (t_j, t_{j+1})
    BuildMode mode = BuildMode::minimal;
    int n = 2;
    std::vector<FactorDomain> factors; // factors[0] is always the lens
    std::vector<double> base_point;
    int L = 0;
    std::vector<std::string> notes;

    double span() const { return t.back() - t.front(); }
    int label(int j) const { return labels[j - 1]; }

    int global_id(int factor, int local) const;
    const Hypersurface& hypersurface(int global_id) const;
    int factor_of(int global_id) const;

    double f_value(int global_id, std::span<const double> x) const;
    // Gradient in R^n (only the x_1 and x_v entries are nonzero).
    std::vector<double> f_grad(int global_id, std::span<const double> x) const;
};

FactorDomain make_lens(double t1, double tl);
FactorDomain make_pinch(double tj, double rho);
FactorDomain make_open(double tj, double tj1, bool is_first, double tl);

DomainSpec build_domain(const std::vector<double>& t, const std::vector<int>& labels,
                        BuildMode mode);

std::vector<SliceInterval> slice(const DomainSpec& d, double x1);

// Membership in the base-point component. The open test requires every
// f_j > tol plus per-factor slice membership; the closed test relaxes to
// f_j >= -tol with tol-padded intervals.
bool contains(const DomainSpec& d, std::span<const double> x, bool closed, double tol);

// The two halves of `contains`, kept separate so they can be compared as
// independent membership routes.
bool contains_by_signs(const DomainSpec& d, std::span<const double> x, bool closed, double tol);
bool contains_by_slices(const DomainSpec& d, std::span<const double> x, bool closed, double tol);

std::vector<CornerRecord> corners(const DomainSpec& d);

} // namespace hyperdomain
