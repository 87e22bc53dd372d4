#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperdomain/domain.hpp"

namespace hyperdomain {

struct CheckConfig {
    int samples = 400;
    double tol = 1e-7;
    double box_radius = 0.0; // 0: defaults to 5 * span, centered at the base point
    std::uint64_t seed = 12345;
};

enum class CheckStatus { pass, warn, fail };

struct ConditionResult {
    CheckStatus status = CheckStatus::pass;
    std::string summary;
    std::vector<std::vector<double>> witnesses;
};

struct LambdaRecord {
    std::vector<int> ids;      // global hypersurface ids, ascending
    std::vector<double> point; // representative point in R^n
    int rank = 0;
    bool tangent = false;
    bool ok = true;

    int size() const { return static_cast<int>(ids.size()); }
};

/// Numerical verdict on the five defining conditions of the domain class:
/// (1) polynomial family, (2) the positivity set vs the base component,
/// (3) closure consistency, (4) hypersurface non-singularity and unused
/// component disjointness, (5) transversality of all hypersurface
/// intersections.
struct NCReport {
    std::array<ConditionResult, 5> conditions;
    double min_gradient_norm = 0.0;
    double min_disjoint_margin = 0.0;
    bool disjoint_vacuous = false; // no unused-component samples in range
    double max_closure_deviation = 0.0;
    std::vector<LambdaRecord> lambda_failures;
    std::vector<LambdaRecord> lambda_examples; // capped sample of passing sets
    long lambda_checked = 0;

    bool ok() const {
        for (const auto& c : conditions)
            if (c.status == CheckStatus::fail)
                return false;
        return true;
    }
};

NCReport check_nc(const DomainSpec& d, const CheckConfig& cfg);

} // namespace hyperdomain
