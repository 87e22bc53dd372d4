#include "hyperdomain/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperdomain {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool SliceInterval::unbounded_above() const {
    return !empty && std::isinf(hi) && hi > 0;
}

SliceInterval FactorDomain::slice(double x1) const {
    SliceInterval iv;
    iv.v = v;
    iv.lo = -kInf;
    iv.hi = kInf;
    for (const Hypersurface& h : hypersurfaces) {
        if (!h.branch.in_support(x1))
            continue;
        double height = h.branch.height_unchecked(x1);
        if (h.is_lower_boundary())
            iv.lo = std::max(iv.lo, height);
        else
            iv.hi = std::min(iv.hi, height);
    }
    // The lens region is the bounded component; its admissible x_1 range is
    // [t_1, t_l] even though both branch supports extend further.
    if (kind == FactorKind::lens)
        iv.empty = x1 < t_lo || x1 > t_hi;
    return iv;
}

int DomainSpec::global_id(int factor, int local) const {
    int id = 0;
    for (int i = 0; i < factor; ++i)
        id += static_cast<int>(factors[i].hypersurfaces.size());
    return id + local;
}

const Hypersurface& DomainSpec::hypersurface(int gid) const {
    for (const FactorDomain& f : factors) {
        int sz = static_cast<int>(f.hypersurfaces.size());
        if (gid < sz)
            return f.hypersurfaces[gid];
        gid -= sz;
    }
    throw std::out_of_range("DomainSpec::hypersurface: id out of range");
}

int DomainSpec::factor_of(int gid) const {
    for (int i = 0; i < static_cast<int>(factors.size()); ++i) {
        int sz = static_cast<int>(factors[i].hypersurfaces.size());
        if (gid < sz)
            return i;
        gid -= sz;
    }
    throw std::out_of_range("DomainSpec::factor_of: id out of range");
}

double DomainSpec::f_value(int gid, std::span<const double> x) const {
    const Hypersurface& h = hypersurface(gid);
    return h.value(x[0], x[h.v - 1]);
}

std::vector<double> DomainSpec::f_grad(int gid, std::span<const double> x) const {
    const Hypersurface& h = hypersurface(gid);
    std::vector<double> g(n, 0.0);
    auto [g1, gv] = h.grad_plane(x[0], x[h.v - 1]);
    g[0] = g1;
    g[h.v - 1] = gv;
    return g;
}

FactorDomain make_lens(double t1, double tl) {
    if (!(t1 < tl))
        throw std::invalid_argument("make_lens: requires t1 < tl");
    double mu = 0.5 * (t1 + tl);
    double r = 0.5 * (tl - t1);

    FactorDomain f;
    f.kind = FactorKind::lens;
    f.v = 2;
    f.t_lo = t1;
    f.t_hi = tl;
    f.rho = r;
    f.hypersurfaces = {
        {2, {mu - 2.0 * r, -2.0 * r, 3.0 * r * r, Side::plus}, +1},  // lower
        {2, {mu + 2.0 * r, 2.0 * r, 3.0 * r * r, Side::minus}, +1},  // upper
    };
    f.corners = {{t1, r, 0, 1}, {tl, -r, 0, 1}};
    return f;
}

FactorDomain make_pinch(double tj, double rho) {
    if (!(rho > 0.0))
        throw std::invalid_argument("make_pinch: requires rho > 0");
    double c = rho * rho;

    FactorDomain f;
    f.kind = FactorKind::pinch;
    f.t_lo = tj;
    f.t_hi = tj;
    f.rho = rho;
    f.hypersurfaces = {
        {2, {tj - rho, 0.0, c, Side::plus}, -1},   // upper-left
        {2, {tj + rho, 0.0, -c, Side::plus}, +1},  // upper-right
        {2, {tj + rho, 0.0, c, Side::minus}, -1},  // lower-right
        {2, {tj - rho, 0.0, -c, Side::minus}, +1}, // lower-left
    };
    f.corners = {{tj, rho, 0, 1}, {tj, -rho, 2, 3}};
    return f;
}

FactorDomain make_open(double tj, double tj1, bool is_first, double tl) {
    if (!(tj < tj1))
        throw std::invalid_argument("make_open: requires tj < tj1");
    if (!(tj1 <= tl))
        throw std::invalid_argument("make_open: requires tj1 <= tl");

    FactorDomain f;
    f.kind = FactorKind::open;
    f.t_lo = tj;
    f.t_hi = tj1;
    f.first_interval = is_first;

    if (is_first) {
        // Corner-free variant: one upper bound active only past t_{j+1}, one
        // lower bound active on the whole slab. The factor contributes no
        // corner, so t_1 keeps only the lens corner.
        double rho = tl - tj;
        double c = rho * rho;
        f.rho = rho;
        f.hypersurfaces = {
            {2, {tj1, 0.0, c, Side::plus}, -1},
            {2, {tl + rho, 0.0, c, Side::minus}, -1},
        };
        return f;
    }

    // rho >= tj1 - tj keeps the unused component of the upper branch outside
    // the closed region; 2x the gap leaves a clean margin.
    double rho = 2.0 * (tj1 - tj);
    double c = rho * rho;
    f.rho = rho;
    f.hypersurfaces = {
        {2, {tj1, 0.0, c, Side::plus}, -1},        // upper, support x1 > t_{j+1}
        {2, {tj, 0.0, -c, Side::plus}, +1},        // upper, support x1 < t_j
        {2, {tj + rho, 0.0, c, Side::minus}, -1},  // lower
        {2, {tj - rho, 0.0, -c, Side::minus}, +1}, // lower
    };
    f.corners = {{tj, -rho, 2, 3}};
    return f;
}

namespace {

// Every claimed corner must be reproduced by the closed-form pair
// intersection, transversally.
void verify_factor_corners(const FactorDomain& f, double scale) {
    double tol = 1e-9 * std::max(1.0, scale);
    for (const Corner& c : f.corners) {
        auto pts = intersect_branches(f.hypersurfaces[c.h0].branch, f.hypersurfaces[c.h1].branch);
        bool found = false;
        for (const auto& p : pts) {
            if (std::abs(p.u - c.x1) <= tol && std::abs(p.v - c.xv) <= tol) {
                if (p.tangent)
                    throw std::runtime_error("domain build: tangential corner crossing");
                found = true;
            }
        }
        if (!found)
            throw std::runtime_error("domain build: corner not reproduced by branch intersection");
    }
}

} // namespace

DomainSpec build_domain(const std::vector<double>& t, const std::vector<int>& labels,
                        BuildMode mode) {
    const int l = static_cast<int>(t.size());
    if (l < 2)
        throw std::invalid_argument("build_domain: need at least two values in t");
    for (int i = 0; i + 1 < l; ++i)
        if (!(t[i] < t[i + 1]))
            throw std::invalid_argument("build_domain: t must be strictly increasing");
    double span = t.back() - t.front();
    for (int i = 0; i + 1 < l; ++i)
        if (t[i + 1] - t[i] < 1e-9 * span)
            throw std::invalid_argument("build_domain: gap in t below 1e-9 * span");
    if (static_cast<int>(labels.size()) != l - 1)
        throw std::invalid_argument("build_domain: labels length must be len(t) - 1");
    for (int v : labels)
        if (v != 0 && v != 1)
            throw std::invalid_argument("build_domain: labels must be 0 or 1");
    if (mode == BuildMode::literal && l < 3)
        throw std::invalid_argument("build_domain: literal mode requires at least three values in t");

    DomainSpec d;
    d.t = t;
    d.labels = labels;
    d.mode = mode;

    const double t1 = t.front(), tl = t.back();
    const double pinch_rho = 0.25 * span;
    d.factors.push_back(make_lens(t1, tl));

    if (mode == BuildMode::minimal) {
        for (int j = 1; j <= l - 1; ++j) {
            if (labels[j - 1] == 1)
                d.factors.push_back(make_open(t[j - 1], t[j], j == 1, tl));
            else if (j >= 2)
                d.factors.push_back(make_pinch(t[j - 1], pinch_rho));
        }
        if (l == 2 && labels[0] == 1)
            d.notes.push_back("l=2 with label 1: open factor added as an extension of the l>=3 rule");
    } else {
        bool any_open = std::any_of(labels.begin(), labels.end(), [](int v) { return v == 1; });
        if (!any_open) {
            for (int j = 2; j <= l - 1; ++j)
                d.factors.push_back(make_pinch(t[j - 1], pinch_rho));
        } else {
            // The general list always carries a factor for j=1; together with
            // the lens (or the j=2 factor) it duplicates a corner x1.
            d.factors.push_back(labels[0] == 0 ? make_pinch(t[1], pinch_rho)
                                               : make_open(t[0], t[1], false, tl));
            for (int j = 2; j <= l - 1; ++j)
                d.factors.push_back(labels[j - 1] == 0 ? make_pinch(t[j - 1], pinch_rho)
                                                       : make_open(t[j - 1], t[j], false, tl));
        }
    }

    for (int i = 1; i < static_cast<int>(d.factors.size()); ++i) {
        d.factors[i].v = 2 + i;
        for (Hypersurface& h : d.factors[i].hypersurfaces)
            h.v = 2 + i;
    }
    d.n = 1 + static_cast<int>(d.factors.size()); // 2 + number of non-lens factors
    d.L = 0;
    for (const FactorDomain& f : d.factors)
        d.L += static_cast<int>(f.hypersurfaces.size());

    d.base_point.assign(d.n, 0.0);
    d.base_point[0] = 0.5 * (t1 + tl);

    for (const FactorDomain& f : d.factors)
        verify_factor_corners(f, span);
    if (!contains(d, d.base_point, false, 1e-12))
        throw std::runtime_error("domain build: base point not inside the domain");
    return d;
}

std::vector<SliceInterval> slice(const DomainSpec& d, double x1) {
    std::vector<SliceInterval> out;
    out.reserve(d.factors.size());
    for (const FactorDomain& f : d.factors)
        out.push_back(f.slice(x1));
    return out;
}

bool contains_by_signs(const DomainSpec& d, std::span<const double> x, bool closed, double tol) {
    if (static_cast<int>(x.size()) != d.n)
        throw std::invalid_argument("contains: point dimension mismatch");
    for (const FactorDomain& f : d.factors) {
        double xv = x[f.v - 1];
        for (const Hypersurface& h : f.hypersurfaces) {
            double val = h.value(x[0], xv);
            if (closed ? val < -tol : val <= tol)
                return false;
        }
    }
    // Component selection: the lens branch supports bound the admissible
    // x_1 slab; the sign sets outside it are the spurious components.
    const FactorDomain& lens = d.factors[0];
    double slab_lo = lens.hypersurfaces[0].branch.a;
    double slab_hi = lens.hypersurfaces[1].branch.a;
    if (closed)
        return x[0] >= slab_lo - tol && x[0] <= slab_hi + tol;
    return x[0] > slab_lo && x[0] < slab_hi;
}

bool contains_by_slices(const DomainSpec& d, std::span<const double> x, bool closed, double tol) {
    if (static_cast<int>(x.size()) != d.n)
        throw std::invalid_argument("contains: point dimension mismatch");
    for (const FactorDomain& f : d.factors) {
        SliceInterval iv = f.slice(x[0]);
        if (f.kind == FactorKind::lens) {
            bool in_range = closed ? (x[0] >= f.t_lo - tol && x[0] <= f.t_hi + tol)
                                   : (x[0] > f.t_lo && x[0] < f.t_hi);
            if (!in_range)
                return false;
        }
        double xv = x[f.v - 1];
        if (closed ? (xv < iv.lo - tol || xv > iv.hi + tol) : (xv <= iv.lo || xv >= iv.hi))
            return false;
    }
    return true;
}

bool contains(const DomainSpec& d, std::span<const double> x, bool closed, double tol) {
    return contains_by_signs(d, x, closed, tol) && contains_by_slices(d, x, closed, tol);
}

std::vector<CornerRecord> corners(const DomainSpec& d) {
    std::vector<CornerRecord> out;
    for (int i = 0; i < static_cast<int>(d.factors.size()); ++i)
        for (const Corner& c : d.factors[i].corners)
            out.push_back({c.x1, i, c.xv, d.global_id(i, c.h0), d.global_id(i, c.h1)});
    return out;
}

} // namespace hyperdomain
