#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperdomain/domain.hpp"
#include "hyperdomain/polynomial.hpp"
#include "hyperdomain/rng.hpp"

namespace hyperdomain {

/// The lifted polynomial system: one equation
///   F_j(x, y) = f_j(x) - ||y_j||^2 = 0
/// per hypersurface, with y_j in R^{d_j}. Its zero set over the closed
/// domain is the manifold; the projection to x plays the role of the map
/// whose first coordinate is studied.
struct ManifoldSystem {
    DomainSpec domain;
    std::vector<int> blocks;       // d_j, one per hypersurface
    int ambient_dim = 0;           // N = n + sum d_j
    int manifold_dim = 0;          // N - L
    std::vector<Polynomial> polys; // F_j in N variables

    // 0-based ambient coordinate where block j starts.
    int block_start(int j) const { return block_start_[j]; }
    std::vector<int> block_start_;

    double residual(std::span<const double> x, std::span<const double> y, int j) const;
    double max_residual(std::span<const double> x, std::span<const double> y) const;
};

// blocks empty: every d_j defaults to 2, which keeps the preimages of
// interior points connected.
ManifoldSystem build_system(const DomainSpec& d, std::vector<int> blocks = {});

struct PointOnM {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> ambient() const;
};

PointOnM sample_fiber_point(const ManifoldSystem& s, std::span<const double> x, Rng& rng);
PointOnM sample_fiber_point(const ManifoldSystem& s, std::span<const double> x,
                            std::uint64_t seed);

std::vector<PointOnM> sample_manifold(const ManifoldSystem& s, int count, double truncation,
                                      Rng& rng);
std::vector<PointOnM> sample_manifold(const ManifoldSystem& s, int count, double truncation,
                                      std::uint64_t seed);

// Numerical rank of the L x N Jacobian of (F_1, ..., F_L) at p and the
// smallest retained singular value. Rank L certifies a non-singular point.
std::pair<int, double> jacobian_rank(const ManifoldSystem& s, const PointOnM& p, double tol);

// True iff the first-coordinate function is critical at p on the manifold,
// i.e. appending the row e_1 to the Jacobian does not increase its rank.
bool is_singular_point_of_f(const ManifoldSystem& s, const PointOnM& p, double tol);

struct SingularReport {
    std::vector<double> predicted_values; // corner x1 values, sorted, deduplicated
    std::vector<bool> verified;           // rank deficiency confirmed at a lifted point
    std::vector<PointOnM> witnesses;      // one lift per predicted value
    double off_corner_clean = 0.0;        // fraction of random samples where f is regular
};

SingularReport singular_values(const ManifoldSystem& s, int off_corner_samples = 200,
                               std::uint64_t seed = 12345);

struct FiberConfig {
    int k = 2000;
    double eps = 0.0;        // 0: 3x the median nearest-neighbor distance
    double truncation = 0.0; // 0: 10x the span
    std::uint64_t seed = 12345;
};

struct FiberReport {
    double t = 0.0;
    bool nonempty = false;
    bool bounded = false;
    bool truncated = false; // unbounded fiber sampled under truncation
    int sampled_components = 0;
    int sample_count = 0;
    double epsilon = 0.0;
    std::string model;
    int fiber_dim = 0;
};

FiberReport fiber_report(const ManifoldSystem& s, double t, const FiberConfig& cfg);

// Hull of the grid x1 values with a nonempty closed slice, over a grid of
// grid_size points padded by half a span on each side.
std::pair<double, double> image_estimate(const ManifoldSystem& s, int grid_size);

} // namespace hyperdomain
