#pragma once

#include <string>

#include <json.hpp>

#include "hyperdomain/domain.hpp"
#include "hyperdomain/manifold.hpp"
#include "hyperdomain/nc_check.hpp"

namespace hyperdomain {

nlohmann::json domain_to_json(const DomainSpec& d);
DomainSpec domain_from_json(const nlohmann::json& j);

// Full system export: domain, blocks, dimension accounting, the polynomial
// list with per-term exponent maps, and a probe point with the stored
// evaluation of every polynomial.
nlohmann::json system_to_json(const ManifoldSystem& s);

nlohmann::json report_to_json(const NCReport& r);
nlohmann::json fiber_to_json(const FiberReport& r);
nlohmann::json singular_to_json(const SingularReport& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace hyperdomain
