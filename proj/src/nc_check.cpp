#include "hyperdomain/nc_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperdomain/linalg.hpp"
#include "hyperdomain/rng.hpp"

namespace hyperdomain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRankTol = 1e-10;

double finite_hi(const SliceInterval& iv, double span) {
    return std::isinf(iv.hi) ? iv.lo + span : iv.hi;
}

// A point of the closed slice cell at x1, interior where possible. Factors
// without an applicable bound on one side (lens outside its slab) get a
// finite stand-in so the result is always a valid probe point.
std::vector<double> cell_point(const DomainSpec& d, double x1, Rng& rng) {
    std::vector<double> x(d.n, 0.0);
    x[0] = x1;
    for (const FactorDomain& f : d.factors) {
        SliceInterval iv = f.slice(x1);
        double lo = iv.lo, hi = iv.hi;
        if (std::isinf(lo))
            lo = std::isinf(hi) ? 0.0 : hi - d.span();
        if (std::isinf(hi))
            hi = lo + d.span();
        double u = 0.25 + 0.5 * rng.uniform();
        x[f.v - 1] = lo >= hi ? 0.5 * (lo + hi) : lo + u * (hi - lo);
    }
    return x;
}

void condition1_structure(const DomainSpec& d, NCReport& rep) {
    int max_deg = 0;
    for (int j = 0; j < d.L; ++j)
        max_deg = std::max(max_deg, hypersurface_poly(d.hypersurface(j), d.n).degree());
    std::ostringstream os;
    os << d.L << " polynomials in " << d.n << " variables, max degree " << max_deg;
    rep.conditions[0].status = CheckStatus::pass;
    rep.conditions[0].summary = os.str();
}

void condition2_spurious_probe(const DomainSpec& d, const CheckConfig& cfg, Rng& rng,
                               NCReport& rep) {
    double box = cfg.box_radius > 0.0 ? cfg.box_radius : 5.0 * d.span();
    const std::vector<double>& c0 = d.base_point;
    int found = 0;
    auto& cond = rep.conditions[1];

    auto classify = [&](const std::vector<double>& x) {
        for (int j = 0; j < d.L; ++j)
            if (!(d.f_value(j, x) > cfg.tol))
                return;
        if (contains_by_slices(d, x, false, 0.0))
            return;
        ++found;
        if (cond.witnesses.size() < 8)
            cond.witnesses.push_back(x);
    };

    for (int s = 0; s < cfg.samples; ++s) {
        std::vector<double> x(d.n);
        if (s % 2 == 0) {
            for (int i = 0; i < d.n; ++i)
                x[i] = c0[i] + box * (2.0 * rng.uniform() - 1.0);
        } else {
            // Probe one factor plane at full box width while keeping the
            // other coordinates inside their slice intervals. Non-lens
            // planes are probed over the admissible slab only.
            int p = (s / 2) % static_cast<int>(d.factors.size());
            double x1 = p == 0 ? c0[0] + box * (2.0 * rng.uniform() - 1.0)
                               : d.t.front() + d.span() * rng.uniform();
            x = cell_point(d, x1, rng);
            x[d.factors[p].v - 1] = c0[d.factors[p].v - 1] + box * (2.0 * rng.uniform() - 1.0);
        }
        classify(x);
    }

    std::ostringstream os;
    if (found > 0) {
        cond.status = CheckStatus::warn;
        os << found << " probe points satisfy every f_j > 0 outside the base component";
    } else {
        cond.status = CheckStatus::pass;
        os << "no spurious positivity points found in a box of radius " << box;
    }
    cond.summary = os.str();
}

void condition3_closure(const DomainSpec& d, const CheckConfig& cfg, Rng& rng, NCReport& rep) {
    auto& cond = rep.conditions[2];
    double worst = 0.0;
    std::vector<double> worst_x;

    auto probe = [&](std::vector<double> x) {
        double mn = kInf;
        for (int j = 0; j < d.L; ++j)
            mn = std::min(mn, d.f_value(j, x));
        if (std::abs(mn) > worst) {
            worst = std::abs(mn);
            worst_x = std::move(x);
        }
    };

    const double t1 = d.t.front(), tl = d.t.back();
    for (int s = 0; s < cfg.samples; ++s) {
        double x1 = t1 + (tl - t1) * rng.uniform();
        std::vector<double> x = cell_point(d, x1, rng);
        const FactorDomain& f = d.factors[s % d.factors.size()];
        SliceInterval iv = f.slice(x1);
        bool upper = (s / d.factors.size()) % 2 == 0 && !std::isinf(iv.hi);
        x[f.v - 1] = upper ? iv.hi : iv.lo;
        probe(x);
    }
    // The two lens corners are boundary points of every domain.
    for (const Corner& c : d.factors[0].corners) {
        std::vector<double> x = cell_point(d, c.x1, rng);
        x[1] = c.xv;
        probe(x);
    }

    rep.max_closure_deviation = worst;
    std::ostringstream os;
    os << "max |min_j f_j| over sampled boundary points = " << worst;
    cond.summary = os.str();
    if (worst > cfg.tol) {
        cond.status = CheckStatus::fail;
        cond.witnesses.push_back(worst_x);
    }
}

void condition4_hypersurfaces(const DomainSpec& d, const CheckConfig& cfg, Rng& rng,
                              NCReport& rep) {
    auto& cond = rep.conditions[3];
    const double t1 = d.t.front(), tl = d.t.back(), span = d.span();
    double min_grad = kInf;
    double min_margin = kInf;
    bool any_unused_sample = false;

    for (int gid = 0; gid < d.L; ++gid) {
        const Hypersurface& h = d.hypersurface(gid);
        const Branch& br = h.branch;

        // Gradient norms along the selected component.
        auto [lo, hi] = br.support();
        double wlo = std::max(lo, t1 - span);
        double whi = std::min(hi, tl + span);
        if (wlo < whi) {
            for (int s = 0; s < cfg.samples; ++s) {
                double u = wlo + (whi - wlo) * rng.uniform();
                if (!br.in_support(u))
                    continue;
                double g = std::hypot(br.height_unchecked(u) - br.b, u - br.a);
                if (g < min_grad) {
                    min_grad = g;
                    if (g <= cfg.tol)
                        cond.witnesses.push_back({u, br.height_unchecked(u)});
                }
            }
        }

        // The unused component of the same hyperbola must stay strictly
        // outside the closed region of its own factor.
        Branch unused = br;
        unused.side = br.side == Side::plus ? Side::minus : Side::plus;
        auto [ulo, uhi] = unused.support();
        double alo = std::max(ulo, t1), ahi = std::min(uhi, tl);
        if (alo >= ahi)
            continue; // vacuous: no points over the admissible slab
        const FactorDomain& f = d.factors[d.factor_of(gid)];
        for (int s = 0; s < cfg.samples; ++s) {
            double u = alo + (ahi - alo) * rng.uniform();
            if (!unused.in_support(u))
                continue;
            any_unused_sample = true;
            double xv = unused.height_unchecked(u);
            double mn = kInf;
            for (const Hypersurface& other : f.hypersurfaces) {
                if (&other == &h)
                    continue;
                mn = std::min(mn, other.value(u, xv));
            }
            double margin = -mn;
            if (margin < min_margin) {
                min_margin = margin;
                if (margin <= cfg.tol)
                    cond.witnesses.push_back({u, xv});
            }
        }
    }

    rep.min_gradient_norm = min_grad;
    rep.min_disjoint_margin = any_unused_sample ? min_margin : kInf;
    rep.disjoint_vacuous = !any_unused_sample;

    std::ostringstream os;
    os << "min |grad f_j| on S_j samples = " << min_grad << "; unused-component margin ";
    if (any_unused_sample)
        os << "= " << min_margin;
    else
        os << "vacuous (no unused-component points over [t_1, t_l])";
    cond.summary = os.str();
    if (min_grad <= cfg.tol || (any_unused_sample && min_margin <= cfg.tol))
        cond.status = CheckStatus::fail;
}

struct PlanarPair {
    int i, j; // local hypersurface indices
    std::vector<BranchIntersection> points;
};

struct FactorChoices {
    std::vector<PlanarPair> pairs;
};

// One choice per factor: -1 none, 0..k-1 single branch, k.. pair index.
struct Combo {
    std::vector<int> choice;
};

void record_lambda(NCReport& rep, LambdaRecord rec) {
    ++rep.lambda_checked;
    if (!rec.ok)
        rep.lambda_failures.push_back(std::move(rec));
    else if (rep.lambda_examples.size() < 64 && rec.size() >= 2)
        rep.lambda_examples.push_back(std::move(rec));
}

void condition5_transversality(const DomainSpec& d, const CheckConfig& cfg, NCReport& rep) {
    auto& cond = rep.conditions[4];
    const int nf = static_cast<int>(d.factors.size());
    const double span = d.span();
    const double pin_tol = 1e-9 * std::max(1.0, span);

    std::vector<FactorChoices> choices(nf);
    for (int p = 0; p < nf; ++p) {
        const auto& hs = d.factors[p].hypersurfaces;
        for (int i = 0; i < static_cast<int>(hs.size()); ++i)
            for (int j = i + 1; j < static_cast<int>(hs.size()); ++j) {
                auto pts = intersect_branches(hs[i].branch, hs[j].branch);
                if (!pts.empty())
                    choices[p].pairs.push_back({i, j, std::move(pts)});
            }
    }

    // Evaluate one candidate point: x1 plus per-factor heights for the chosen
    // hypersurfaces; the gradient rows only involve those coordinates.
    auto test_point = [&](const std::vector<std::pair<int, int>>& singles,
                          const std::vector<std::pair<int, const PlanarPair*>>& pairs,
                          double x1, const std::vector<double>& pair_heights) {
        std::vector<int> ids;
        std::vector<double> point = d.base_point;
        point[0] = x1;
        std::vector<double> rows;

        auto push_row = [&](int p, int local, double xv) {
            const Hypersurface& h = d.factors[p].hypersurfaces[local];
            ids.push_back(d.global_id(p, local));
            point[d.factors[p].v - 1] = xv;
            auto [g1, gv] = h.grad_plane(x1, xv);
            std::vector<double> row(d.n, 0.0);
            row[0] = g1;
            row[d.factors[p].v - 1] = gv;
            rows.insert(rows.end(), row.begin(), row.end());
        };

        for (std::size_t k = 0; k < pairs.size(); ++k) {
            auto [p, pr] = pairs[k];
            push_row(p, pr->i, pair_heights[k]);
            push_row(p, pr->j, pair_heights[k]);
        }
        for (auto [p, local] : singles) {
            const Branch& br = d.factors[p].hypersurfaces[local].branch;
            push_row(p, local, br.height_unchecked(x1));
        }

        int m = static_cast<int>(ids.size());
        auto [rank, smallest] = numerical_rank(rows, m, d.n, kRankTol);
        (void)smallest;
        LambdaRecord rec;
        rec.ids = ids;
        std::sort(rec.ids.begin(), rec.ids.end());
        rec.point = point;
        rec.rank = rank;
        rec.ok = rank == m;
        record_lambda(rep, std::move(rec));
    };

    // Representative x1 values inside an open support-overlap interval.
    auto curve_reps = [&](double lo, double hi) {
        std::vector<double> reps;
        if (std::isfinite(lo) && std::isfinite(hi)) {
            for (double f : {0.25, 0.5, 0.75})
                reps.push_back(lo + f * (hi - lo));
        } else if (std::isfinite(lo)) {
            for (double f : {0.25, 1.0, 3.0})
                reps.push_back(lo + f * std::max(span, 1.0));
        } else if (std::isfinite(hi)) {
            for (double f : {0.25, 1.0, 3.0})
                reps.push_back(hi - f * std::max(span, 1.0));
        }
        return reps;
    };

    // Enumerate one choice per factor: nothing, one branch, or one crossing
    // pair. Anything else projects to an empty planar set.
    std::vector<int> choice(nf, -1);
    auto recurse = [&](auto&& self, int p) -> void {
        if (p == nf) {
            std::vector<std::pair<int, int>> singles;
            std::vector<std::pair<int, const PlanarPair*>> pairs;
            for (int q = 0; q < nf; ++q) {
                int ch = choice[q];
                if (ch < 0)
                    continue;
                int nb = static_cast<int>(d.factors[q].hypersurfaces.size());
                if (ch < nb)
                    singles.push_back({q, ch});
                else
                    pairs.push_back({q, &choices[q].pairs[ch - nb]});
            }
            if (singles.empty() && pairs.empty())
                return;

            if (pairs.empty()) {
                double lo = -kInf, hi = kInf;
                for (auto [q, local] : singles) {
                    auto [slo, shi] = d.factors[q].hypersurfaces[local].branch.support();
                    lo = std::max(lo, slo);
                    hi = std::min(hi, shi);
                }
                if (lo >= hi)
                    return;
                for (double u : curve_reps(lo, hi)) {
                    bool inside = u > lo && u < hi;
                    if (inside)
                        test_point(singles, pairs, u, {});
                }
                return;
            }

            // Pinned case: every chosen pair must cross at a common x1 and
            // every chosen single must be supported there.
            std::vector<std::size_t> sel(pairs.size(), 0);
            while (true) {
                double x1 = pairs[0].second->points[sel[0]].u;
                bool match = true;
                std::vector<double> heights;
                for (std::size_t k = 0; k < pairs.size(); ++k) {
                    const auto& pt = pairs[k].second->points[sel[k]];
                    if (std::abs(pt.u - x1) > pin_tol) {
                        match = false;
                        break;
                    }
                    heights.push_back(pt.v);
                }
                if (match) {
                    for (auto [q, local] : singles)
                        if (!d.factors[q].hypersurfaces[local].branch.in_support(x1))
                            match = false;
                }
                if (match)
                    test_point(singles, pairs, x1, heights);

                std::size_t k = 0;
                while (k < sel.size() && ++sel[k] == pairs[k].second->points.size()) {
                    sel[k] = 0;
                    ++k;
                }
                if (k == sel.size())
                    break;
            }
            return;
        }
        int nb = static_cast<int>(d.factors[p].hypersurfaces.size());
        int np = static_cast<int>(choices[p].pairs.size());
        for (int ch = -1; ch < nb + np; ++ch) {
            choice[p] = ch;
            self(self, p + 1);
        }
        choice[p] = -1;
    };
    recurse(recurse, 0);

    // Tangential planar crossings are rank-1 intersections of two
    // hypersurfaces and fail on their own.
    for (int p = 0; p < nf; ++p)
        for (const PlanarPair& pr : choices[p].pairs)
            for (const auto& pt : pr.points)
                if (pt.tangent) {
                    LambdaRecord rec;
                    rec.ids = {d.global_id(p, pr.i), d.global_id(p, pr.j)};
                    rec.point = d.base_point;
                    rec.point[0] = pt.u;
                    rec.point[d.factors[p].v - 1] = pt.v;
                    rec.rank = 1;
                    rec.tangent = true;
                    rec.ok = false;
                    record_lambda(rep, std::move(rec));
                }

    std::ostringstream os;
    os << rep.lambda_checked << " intersection sets checked, " << rep.lambda_failures.size()
       << " rank-deficient";
    cond.summary = os.str();
    if (!rep.lambda_failures.empty()) {
        cond.status = CheckStatus::fail;
        for (const auto& rec : rep.lambda_failures)
            if (cond.witnesses.size() < 8)
                cond.witnesses.push_back(rec.point);
    }
    (void)cfg;
}

} // namespace

NCReport check_nc(const DomainSpec& d, const CheckConfig& cfg) {
    if (cfg.samples < 1)
        throw std::invalid_argument("check_nc: samples must be >= 1");
    NCReport rep;
    Rng rng(cfg.seed);
    condition1_structure(d, rep);
    condition2_spurious_probe(d, cfg, rng, rep);
    condition3_closure(d, cfg, rng, rep);
    condition4_hypersurfaces(d, cfg, rng, rep);
    condition5_transversality(d, cfg, rep);
    return rep;
}

} // namespace hyperdomain
