#include "hyperdomain/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hyperdomain {

using nlohmann::json;

namespace {

json branch_to_json(const Hypersurface& h) {
    return json{{"a", h.branch.a},
                {"b", h.branch.b},
                {"c", h.branch.c},
                {"side", h.branch.side == Side::plus ? "plus" : "minus"},
                {"sigma", h.sigma}};
}

Hypersurface branch_from_json(const json& j, int v) {
    Hypersurface h;
    h.v = v;
    h.branch.a = j.at("a").get<double>();
    h.branch.b = j.at("b").get<double>();
    h.branch.c = j.at("c").get<double>();
    std::string side = j.at("side").get<std::string>();
    if (side != "plus" && side != "minus")
        throw std::invalid_argument("domain file: side must be plus or minus");
    h.branch.side = side == "plus" ? Side::plus : Side::minus;
    h.sigma = j.at("sigma").get<int>();
    if (h.sigma != 1 && h.sigma != -1)
        throw std::invalid_argument("domain file: sigma must be +1 or -1");
    if (h.branch.c == 0.0)
        throw std::invalid_argument("domain file: branch c must be nonzero");
    return h;
}

std::string kind_name(FactorKind k) {
    switch (k) {
    case FactorKind::lens: return "lens";
    case FactorKind::pinch: return "pinch";
    case FactorKind::open: return "open";
    }
    return "lens";
}

FactorKind kind_from_name(const std::string& s) {
    if (s == "lens") return FactorKind::lens;
    if (s == "pinch") return FactorKind::pinch;
    if (s == "open") return FactorKind::open;
    throw std::invalid_argument("domain file: unknown factor kind '" + s + "'");
}

} // namespace

json domain_to_json(const DomainSpec& d) {
    json factors = json::array();
    for (const FactorDomain& f : d.factors) {
        json branches = json::array();
        for (const Hypersurface& h : f.hypersurfaces)
            branches.push_back(branch_to_json(h));
        json corners = json::array();
        for (const Corner& c : f.corners)
            corners.push_back(json{{"x1", c.x1}, {"xv", c.xv}, {"pair", {c.h0, c.h1}}});
        factors.push_back(json{{"kind", kind_name(f.kind)},
                               {"plane", {1, f.v}},
                               {"first_interval", f.first_interval},
                               {"t_lo", f.t_lo},
                               {"t_hi", f.t_hi},
                               {"rho", f.rho},
                               {"branches", std::move(branches)},
                               {"corners", std::move(corners)}});
    }
    return json{{"version", 1},
                {"t", d.t},
                {"labels", d.labels},
                {"mode", d.mode == BuildMode::minimal ? "minimal" : "literal"},
                {"n", d.n},
                {"L", d.L},
                {"base_point", d.base_point},
                {"notes", d.notes},
                {"factors", std::move(factors)}};
}

DomainSpec domain_from_json(const json& j) {
    DomainSpec d;
    if (j.at("version").get<int>() != 1)
        throw std::invalid_argument("domain file: unsupported version");
    d.t = j.at("t").get<std::vector<double>>();
    d.labels = j.at("labels").get<std::vector<int>>();
    std::string mode = j.at("mode").get<std::string>();
    if (mode != "minimal" && mode != "literal")
        throw std::invalid_argument("domain file: unknown mode '" + mode + "'");
    d.mode = mode == "minimal" ? BuildMode::minimal : BuildMode::literal;
    d.n = j.at("n").get<int>();
    d.L = j.at("L").get<int>();
    d.base_point = j.at("base_point").get<std::vector<double>>();
    if (j.contains("notes"))
        d.notes = j.at("notes").get<std::vector<std::string>>();

    for (const json& jf : j.at("factors")) {
        FactorDomain f;
        f.kind = kind_from_name(jf.at("kind").get<std::string>());
        auto plane = jf.at("plane").get<std::vector<int>>();
        if (plane.size() != 2 || plane[0] != 1 || plane[1] < 2 || plane[1] > d.n)
            throw std::invalid_argument("domain file: bad factor plane");
        f.v = plane[1];
        f.first_interval = jf.at("first_interval").get<bool>();
        f.t_lo = jf.at("t_lo").get<double>();
        f.t_hi = jf.at("t_hi").get<double>();
        f.rho = jf.at("rho").get<double>();
        for (const json& jb : jf.at("branches"))
            f.hypersurfaces.push_back(branch_from_json(jb, f.v));
        for (const json& jc : jf.at("corners")) {
            Corner c;
            c.x1 = jc.at("x1").get<double>();
            c.xv = jc.at("xv").get<double>();
            auto pair = jc.at("pair").get<std::vector<int>>();
            if (pair.size() != 2)
                throw std::invalid_argument("domain file: corner pair must have two entries");
            c.h0 = pair[0];
            c.h1 = pair[1];
            if (c.h0 < 0 || c.h1 < 0 || c.h0 >= static_cast<int>(f.hypersurfaces.size()) ||
                c.h1 >= static_cast<int>(f.hypersurfaces.size()))
                throw std::invalid_argument("domain file: corner pair index out of range");
            f.corners.push_back(c);
        }
        d.factors.push_back(std::move(f));
    }
    if (d.factors.empty() || d.factors[0].kind != FactorKind::lens)
        throw std::invalid_argument("domain file: first factor must be the lens");
    if (d.n != 1 + static_cast<int>(d.factors.size()))
        throw std::invalid_argument("domain file: n inconsistent with factor count");
    int L = 0;
    for (const FactorDomain& f : d.factors)
        L += static_cast<int>(f.hypersurfaces.size());
    if (L != d.L)
        throw std::invalid_argument("domain file: L inconsistent with branch count");
    if (static_cast<int>(d.base_point.size()) != d.n)
        throw std::invalid_argument("domain file: base point dimension mismatch");
    return d;
}

json system_to_json(const ManifoldSystem& s) {
    json polys = json::array();
    for (const Polynomial& p : s.polys) {
        json terms = json::array();
        for (const auto& [e, c] : p.terms()) {
            json expo = json::object();
            for (int i = 0; i < p.num_vars(); ++i)
                if (e[i] != 0)
                    expo[std::to_string(i + 1)] = e[i];
            terms.push_back(json{{"coeff", c}, {"exponents", std::move(expo)}});
        }
        polys.push_back(json{{"terms", std::move(terms)}});
    }

    std::vector<std::string> vars;
    for (int i = 0; i < s.domain.n; ++i)
        vars.push_back("x" + std::to_string(i + 1));
    for (int j = 0; j < s.domain.L; ++j)
        for (int i = 0; i < s.blocks[j]; ++i)
            vars.push_back("y" + std::to_string(j + 1) + "_" + std::to_string(i + 1));

    // Deterministic generic probe: base point in x, a fixed ramp in y.
    std::vector<double> probe(s.ambient_dim);
    for (int i = 0; i < s.domain.n; ++i)
        probe[i] = s.domain.base_point[i];
    for (int i = s.domain.n; i < s.ambient_dim; ++i)
        probe[i] = 0.5 + 0.25 * (i - s.domain.n);
    std::vector<double> values;
    for (const Polynomial& p : s.polys)
        values.push_back(p.eval(probe));

    return json{{"version", 1},
                {"domain", domain_to_json(s.domain)},
                {"blocks", s.blocks},
                {"ambient_dim", s.ambient_dim},
                {"manifold_dim", s.manifold_dim},
                {"variables", vars},
                {"polynomials", std::move(polys)},
                {"probe_point", probe},
                {"probe_values", values}};
}

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::warn: return "warn";
    case CheckStatus::fail: return "fail";
    }
    return "pass";
}

json lambda_to_json(const LambdaRecord& r) {
    return json{{"ids", r.ids},   {"point", r.point},     {"size", r.size()},
                {"rank", r.rank}, {"tangent", r.tangent}, {"ok", r.ok}};
}

} // namespace

json report_to_json(const NCReport& r) {
    json conditions = json::array();
    for (int i = 0; i < 5; ++i) {
        conditions.push_back(json{{"condition", i + 1},
                                  {"status", status_name(r.conditions[i].status)},
                                  {"summary", r.conditions[i].summary},
                                  {"witnesses", r.conditions[i].witnesses}});
    }
    json failures = json::array();
    for (const LambdaRecord& rec : r.lambda_failures)
        failures.push_back(lambda_to_json(rec));
    json examples = json::array();
    for (const LambdaRecord& rec : r.lambda_examples)
        examples.push_back(lambda_to_json(rec));
    json out{{"conditions", std::move(conditions)},
             {"min_gradient_norm", r.min_gradient_norm},
             {"max_closure_deviation", r.max_closure_deviation},
             {"lambda_checked", r.lambda_checked},
             {"lambda_failures", std::move(failures)},
             {"lambda_examples", std::move(examples)},
             {"ok", r.ok()}};
    if (r.disjoint_vacuous || std::isinf(r.min_disjoint_margin))
        out["min_disjoint_margin"] = nullptr;
    else
        out["min_disjoint_margin"] = r.min_disjoint_margin;
    return out;
}

json fiber_to_json(const FiberReport& r) {
    return json{{"t", r.t},
                {"nonempty", r.nonempty},
                {"bounded", r.bounded},
                {"truncated", r.truncated},
                {"sampled_components", r.sampled_components},
                {"sample_count", r.sample_count},
                {"epsilon", r.epsilon},
                {"model", r.model},
                {"fiber_dim", r.fiber_dim}};
}

json singular_to_json(const SingularReport& r) {
    json witnesses = json::array();
    for (const PointOnM& p : r.witnesses)
        witnesses.push_back(json{{"x", p.x}, {"y", p.y}});
    return json{{"predicted_values", r.predicted_values},
                {"verified", r.verified},
                {"witnesses", std::move(witnesses)},
                {"off_corner_clean", r.off_corner_clean}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << content;
}

} // namespace hyperdomain
