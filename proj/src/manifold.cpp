#include "hyperdomain/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hyperdomain/linalg.hpp"

namespace hyperdomain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRankTol = 1e-10;

double domain_tol(const DomainSpec& d) { return 1e-9 * std::max(1.0, d.span()); }

double truncated_hi(const SliceInterval& iv, double span, double R) {
    if (!std::isinf(iv.hi))
        return iv.hi;
    return std::max(iv.lo + span, R);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[a] = b;
    }
    int count() {
        int c = 0;
        for (int i = 0; i < static_cast<int>(parent.size()); ++i)
            if (find(i) == i)
                ++c;
        return c;
    }
};

} // namespace

double ManifoldSystem::residual(std::span<const double> x, std::span<const double> y,
                                int j) const {
    double fj = domain.f_value(j, x);
    int start = block_start(j) - domain.n;
    double sq = 0.0;
    for (int i = 0; i < blocks[j]; ++i)
        sq += y[start + i] * y[start + i];
    return fj - sq;
}

double ManifoldSystem::max_residual(std::span<const double> x, std::span<const double> y) const {
    double worst = 0.0;
    for (int j = 0; j < domain.L; ++j)
        worst = std::max(worst, std::abs(residual(x, y, j)));
    return worst;
}

std::vector<double> PointOnM::ambient() const {
    std::vector<double> a = x;
    a.insert(a.end(), y.begin(), y.end());
    return a;
}

ManifoldSystem build_system(const DomainSpec& d, std::vector<int> blocks) {
    if (blocks.empty())
        blocks.assign(d.L, 2);
    if (static_cast<int>(blocks.size()) != d.L)
        throw std::invalid_argument("build_system: blocks length must equal the hypersurface count");
    for (int b : blocks)
        if (b < 1)
            throw std::invalid_argument("build_system: block sizes must be positive");

    ManifoldSystem s;
    s.domain = d;
    s.blocks = blocks;
    s.block_start_.resize(d.L);
    int off = d.n;
    for (int j = 0; j < d.L; ++j) {
        s.block_start_[j] = off;
        off += blocks[j];
    }
    s.ambient_dim = off;
    s.manifold_dim = s.ambient_dim - d.L;

    for (int j = 0; j < d.L; ++j) {
        Polynomial fx = hypersurface_poly(d.hypersurface(j), d.n);
        Polynomial F(s.ambient_dim);
        for (const auto& [e, c] : fx.terms()) {
            Polynomial::Exponents ee(s.ambient_dim, 0);
            std::copy(e.begin(), e.end(), ee.begin());
            F.add_term(ee, c);
        }
        for (int i = 0; i < blocks[j]; ++i) {
            Polynomial::Exponents ee(s.ambient_dim, 0);
            ee[s.block_start_[j] + i] = 2;
            F.add_term(ee, -1.0);
        }
        s.polys.push_back(std::move(F));
    }
    return s;
}

namespace {

void sample_block(std::vector<double>& y, int start, int dim, double radius_sq, Rng& rng) {
    double r = radius_sq > 0.0 ? std::sqrt(radius_sq) : 0.0;
    if (r == 0.0) {
        for (int i = 0; i < dim; ++i)
            y[start + i] = 0.0;
        return;
    }
    if (dim == 1) {
        y[start] = rng.coin() ? r : -r;
        return;
    }
    double norm = 0.0;
    std::vector<double> g(dim);
    do {
        norm = 0.0;
        for (int i = 0; i < dim; ++i) {
            g[i] = rng.normal();
            norm += g[i] * g[i];
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (int i = 0; i < dim; ++i)
        y[start + i] = r * g[i] / norm;
}

} // namespace

PointOnM sample_fiber_point(const ManifoldSystem& s, std::span<const double> x, Rng& rng) {
    const DomainSpec& d = s.domain;
    if (!contains(d, x, true, domain_tol(d)))
        throw std::invalid_argument("sample_fiber_point: x outside the closed domain");
    PointOnM p;
    p.x.assign(x.begin(), x.end());
    p.y.assign(s.ambient_dim - d.n, 0.0);
    for (int j = 0; j < d.L; ++j) {
        double fj = std::max(d.f_value(j, x), 0.0);
        sample_block(p.y, s.block_start(j) - d.n, s.blocks[j], fj, rng);
    }
    return p;
}

PointOnM sample_fiber_point(const ManifoldSystem& s, std::span<const double> x,
                            std::uint64_t seed) {
    Rng rng(seed);
    return sample_fiber_point(s, x, rng);
}

namespace {

std::vector<double> sample_domain_point(const DomainSpec& d, double x1, double R, Rng& rng) {
    std::vector<double> x(d.n, 0.0);
    x[0] = x1;
    double span = d.span();
    for (const FactorDomain& f : d.factors) {
        SliceInterval iv = f.slice(x1);
        double hi = truncated_hi(iv, span, R);
        x[f.v - 1] = iv.lo >= hi ? 0.5 * (iv.lo + hi) : iv.lo + (hi - iv.lo) * rng.uniform();
    }
    return x;
}

} // namespace

std::vector<PointOnM> sample_manifold(const ManifoldSystem& s, int count, double truncation,
                                      Rng& rng) {
    if (count < 1)
        throw std::invalid_argument("sample_manifold: count must be >= 1");
    if (!(truncation > 0.0))
        throw std::invalid_argument("sample_manifold: truncation must be positive");
    const DomainSpec& d = s.domain;
    std::vector<PointOnM> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        double x1 = d.t.front() + d.span() * rng.uniform();
        out.push_back(sample_fiber_point(s, sample_domain_point(d, x1, truncation, rng), rng));
    }
    return out;
}

std::vector<PointOnM> sample_manifold(const ManifoldSystem& s, int count, double truncation,
                                      std::uint64_t seed) {
    Rng rng(seed);
    return sample_manifold(s, count, truncation, rng);
}

namespace {

std::vector<double> jacobian_rows(const ManifoldSystem& s, const PointOnM& p) {
    const DomainSpec& d = s.domain;
    const int N = s.ambient_dim;
    std::vector<double> rows(static_cast<std::size_t>(d.L) * N, 0.0);
    for (int j = 0; j < d.L; ++j) {
        const Hypersurface& h = d.hypersurface(j);
        auto [g1, gv] = h.grad_plane(p.x[0], p.x[h.v - 1]);
        double* row = rows.data() + static_cast<std::size_t>(j) * N;
        row[0] = g1;
        row[h.v - 1] = gv;
        int start = s.block_start(j);
        for (int i = 0; i < s.blocks[j]; ++i)
            row[start + i] = -2.0 * p.y[start - d.n + i];
    }
    return rows;
}

void require_on_manifold(const ManifoldSystem& s, const PointOnM& p, double tol) {
    if (s.max_residual(p.x, p.y) > tol)
        throw std::invalid_argument("point residual exceeds tolerance: not on the manifold");
}

} // namespace

std::pair<int, double> jacobian_rank(const ManifoldSystem& s, const PointOnM& p, double tol) {
    require_on_manifold(s, p, tol);
    return numerical_rank(jacobian_rows(s, p), s.domain.L, s.ambient_dim, kRankTol);
}

bool is_singular_point_of_f(const ManifoldSystem& s, const PointOnM& p, double tol) {
    require_on_manifold(s, p, tol);
    std::vector<double> rows = jacobian_rows(s, p);
    auto [rank, sm] = numerical_rank(rows, s.domain.L, s.ambient_dim, kRankTol);
    (void)sm;
    rows.resize(rows.size() + s.ambient_dim, 0.0);
    rows[rows.size() - s.ambient_dim] = 1.0; // append e_1
    auto [rank_aug, sm2] = numerical_rank(rows, s.domain.L + 1, s.ambient_dim, kRankTol);
    (void)sm2;
    return rank_aug == rank;
}

namespace {

// Deterministic interior lift of a corner: the corner pins x1 and its own
// plane coordinate; other factors sit at slice midpoints. Blocks whose
// constraint vanishes at the corner are zeroed exactly.
PointOnM lift_corner(const ManifoldSystem& s, const CornerRecord& c, Rng& rng) {
    const DomainSpec& d = s.domain;
    double span = d.span();
    std::vector<double> x(d.n, 0.0);
    x[0] = c.x1;
    for (const FactorDomain& f : d.factors) {
        SliceInterval iv = f.slice(c.x1);
        x[f.v - 1] = 0.5 * (iv.lo + truncated_hi(iv, span, span));
    }
    x[d.factors[c.factor].v - 1] = c.xv;

    PointOnM p;
    p.x = x;
    p.y.assign(s.ambient_dim - d.n, 0.0);
    double active_tol = domain_tol(d);
    for (int j = 0; j < d.L; ++j) {
        double fj = d.f_value(j, x);
        if (fj <= active_tol)
            continue; // active constraint at the corner: zero block
        sample_block(p.y, s.block_start(j) - d.n, s.blocks[j], fj, rng);
    }
    return p;
}

} // namespace

SingularReport singular_values(const ManifoldSystem& s, int off_corner_samples,
                               std::uint64_t seed) {
    const DomainSpec& d = s.domain;
    Rng rng(seed);
    SingularReport rep;

    std::vector<CornerRecord> cs = corners(d);
    std::sort(cs.begin(), cs.end(),
              [](const CornerRecord& a, const CornerRecord& b) { return a.x1 < b.x1; });
    double merge_tol = 1e-12 * std::max(1.0, d.span());
    for (const CornerRecord& c : cs) {
        if (!rep.predicted_values.empty() &&
            std::abs(c.x1 - rep.predicted_values.back()) <= merge_tol) {
            // Same singular value; still verify this corner's lift.
            PointOnM p = lift_corner(s, c, rng);
            bool v = is_singular_point_of_f(s, p, domain_tol(d));
            rep.verified.back() = rep.verified.back() && v;
            continue;
        }
        PointOnM p = lift_corner(s, c, rng);
        rep.predicted_values.push_back(c.x1);
        rep.verified.push_back(is_singular_point_of_f(s, p, domain_tol(d)));
        rep.witnesses.push_back(std::move(p));
    }

    if (off_corner_samples > 0) {
        auto pts = sample_manifold(s, off_corner_samples, 10.0 * d.span(), rng);
        int clean = 0;
        for (const PointOnM& p : pts)
            if (!is_singular_point_of_f(s, p, domain_tol(d)))
                ++clean;
        rep.off_corner_clean = static_cast<double>(clean) / off_corner_samples;
    }
    return rep;
}

FiberReport fiber_report(const ManifoldSystem& s, double t, const FiberConfig& cfg) {
    const DomainSpec& d = s.domain;
    const double span = d.span();
    const double pad = domain_tol(d);
    FiberReport rep;
    rep.t = t;
    rep.fiber_dim = s.manifold_dim - 1;

    {
        std::ostringstream os;
        os << "product of spheres ";
        for (int j = 0; j < d.L; ++j)
            os << (j ? " x " : "") << "S^" << (s.blocks[j] - 1);
        os << " with radii sqrt(f_j(x)) over the slice cell";
        rep.model = os.str();
    }

    rep.nonempty = t >= d.t.front() - pad && t <= d.t.back() + pad;
    if (!rep.nonempty) {
        rep.bounded = true;
        return rep;
    }
    double tc = std::clamp(t, d.t.front(), d.t.back());

    rep.bounded = true;
    for (const SliceInterval& iv : slice(d, tc))
        if (iv.unbounded_above())
            rep.bounded = false;
    rep.truncated = !rep.bounded;

    double R = cfg.truncation > 0.0 ? cfg.truncation : 10.0 * span;
    Rng rng(cfg.seed);
    int k = std::max(1, cfg.k);
    std::vector<PointOnM> pts;
    pts.reserve(k);
    for (int i = 0; i < k; ++i)
        pts.push_back(sample_fiber_point(s, sample_domain_point(d, tc, R, rng), rng));
    rep.sample_count = k;

    const int N = s.ambient_dim;
    std::vector<double> flat(static_cast<std::size_t>(k) * N);
    for (int i = 0; i < k; ++i) {
        auto a = pts[i].ambient();
        std::copy(a.begin(), a.end(), flat.begin() + static_cast<std::size_t>(i) * N);
    }

    double eps = cfg.eps;
    if (eps <= 0.0 && k > 1) {
        std::vector<double> nn(k, kInf);
        for (int i = 0; i < k; ++i) {
            const double* pi = flat.data() + static_cast<std::size_t>(i) * N;
            for (int j = i + 1; j < k; ++j) {
                const double* pj = flat.data() + static_cast<std::size_t>(j) * N;
                double d2 = 0.0;
                for (int m = 0; m < N; ++m) {
                    double diff = pi[m] - pj[m];
                    d2 += diff * diff;
                }
                nn[i] = std::min(nn[i], d2);
                nn[j] = std::min(nn[j], d2);
            }
        }
        std::nth_element(nn.begin(), nn.begin() + k / 2, nn.end());
        eps = 3.0 * std::sqrt(nn[k / 2]);
    }
    rep.epsilon = eps;

    UnionFind uf(k);
    double eps2 = eps * eps;
    for (int i = 0; i < k; ++i) {
        const double* pi = flat.data() + static_cast<std::size_t>(i) * N;
        for (int j = i + 1; j < k; ++j) {
            const double* pj = flat.data() + static_cast<std::size_t>(j) * N;
            double d2 = 0.0;
            for (int m = 0; m < N && d2 <= eps2; ++m) {
                double diff = pi[m] - pj[m];
                d2 += diff * diff;
            }
            if (d2 <= eps2)
                uf.merge(i, j);
        }
    }
    rep.sampled_components = uf.count();
    return rep;
}

std::pair<double, double> image_estimate(const ManifoldSystem& s, int grid_size) {
    if (grid_size < 2)
        throw std::invalid_argument("image_estimate: grid_size must be >= 2");
    const DomainSpec& d = s.domain;
    double span = d.span();
    double lo = d.t.front() - 0.5 * span;
    double hi = d.t.back() + 0.5 * span;
    double tol = domain_tol(d);

    double img_lo = kInf, img_hi = -kInf;
    for (int i = 0; i < grid_size; ++i) {
        double x1 = lo + (hi - lo) * i / (grid_size - 1);
        SliceInterval lens = d.factors[0].slice(x1);
        if (lens.empty || lens.lo > lens.hi + tol)
            continue;
        img_lo = std::min(img_lo, x1);
        img_hi = std::max(img_hi, x1);
    }
    if (!std::isfinite(img_lo))
        throw std::logic_error("image_estimate: no nonempty slice found on the grid");
    return {img_lo, img_hi};
}

} // namespace hyperdomain
