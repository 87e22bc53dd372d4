#include "hyperdomain/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyperdomain/serialize.hpp"
#include "hyperdomain/svg.hpp"

namespace hyperdomain {

namespace {

std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        double v = std::stod(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
            ++pos;
        if (pos != item.size())
            throw std::invalid_argument("cannot parse number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("empty numeric list");
    return out;
}

std::vector<int> parse_csv_ints(const std::string& s) {
    std::vector<int> out;
    for (double v : parse_csv_doubles(s)) {
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw std::invalid_argument("expected an integer list");
        out.push_back(i);
    }
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HYPERDOMAIN_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 12345;
}

DomainSpec load_domain(const std::string& path) {
    return domain_from_json(nlohmann::json::parse(read_text_file(path)));
}

ManifoldSystem load_system(const std::string& path, const std::string& blocks_csv) {
    DomainSpec d = load_domain(path);
    std::vector<int> blocks;
    if (!blocks_csv.empty())
        blocks = parse_csv_ints(blocks_csv);
    return build_system(d, blocks);
}

void print_domain_summary(const DomainSpec& d, std::ostream& os) {
    os << "domain: n=" << d.n << " L=" << d.L << " factors=" << d.factors.size()
       << " mode=" << (d.mode == BuildMode::minimal ? "minimal" : "literal") << "\n";
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
        const FactorDomain& f = d.factors[i];
        const char* kind = f.kind == FactorKind::lens    ? "lens"
                           : f.kind == FactorKind::pinch ? "pinch"
                                                         : "open";
        os << "  factor " << i << ": " << kind << (f.first_interval ? " (first interval)" : "")
           << " plane (1," << f.v << ") branches=" << f.hypersurfaces.size() << "\n";
    }
    os << "corners (x1, factor, xv):\n";
    for (const CornerRecord& c : corners(d))
        os << "  " << c.x1 << "  " << c.factor << "  " << c.xv << "\n";
    for (const std::string& note : d.notes)
        os << "note: " << note << "\n";
}

const char* status_word(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::warn: return "WARN";
    case CheckStatus::fail: return "FAIL";
    }
    return "PASS";
}

int cmd_build(const std::string& t_csv, const std::string& labels_csv, const std::string& mode,
              const std::string& out) {
    BuildMode m;
    if (mode == "minimal")
        m = BuildMode::minimal;
    else if (mode == "literal")
        m = BuildMode::literal;
    else
        throw std::invalid_argument("mode must be 'minimal' or 'literal'");
    DomainSpec d = build_domain(parse_csv_doubles(t_csv), parse_csv_ints(labels_csv), m);
    write_text_file(out, domain_to_json(d).dump(2) + "\n");
    print_domain_summary(d, std::cout);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_check(const std::string& file, int samples, double tol, double box_radius,
              std::uint64_t seed, const std::string& json_out, bool literal_report) {
    DomainSpec d = load_domain(file);
    CheckConfig cfg;
    cfg.samples = samples;
    cfg.tol = tol;
    cfg.box_radius = box_radius;
    cfg.seed = seed;
    NCReport rep = check_nc(d, cfg);

    for (int i = 0; i < 5; ++i) {
        const ConditionResult& c = rep.conditions[i];
        std::cout << "condition (" << i + 1 << "): " << status_word(c.status) << " - "
                  << c.summary << "\n";
        std::size_t max_witnesses = literal_report ? c.witnesses.size() : std::min<std::size_t>(c.witnesses.size(), 1);
        for (std::size_t w = 0; w < max_witnesses; ++w) {
            std::cout << "    witness:";
            for (double v : c.witnesses[w])
                std::cout << " " << v;
            std::cout << "\n";
        }
    }
    for (const LambdaRecord& rec : rep.lambda_failures) {
        std::cout << "  rank-deficient intersection: ids";
        for (int id : rec.ids)
            std::cout << " " << id;
        std::cout << " |Lambda|=" << rec.size() << " rank=" << rec.rank
                  << (rec.tangent ? " (tangent)" : "") << " at x1=" << rec.point[0] << "\n";
    }
    if (!json_out.empty())
        write_text_file(json_out, report_to_json(rep).dump(2) + "\n");
    return rep.ok() ? 0 : 1;
}

int cmd_fiber(const std::string& file, const std::string& blocks_csv, double t, int k, double eps,
              double R, std::uint64_t seed, const std::string& json_out) {
    ManifoldSystem s = load_system(file, blocks_csv);
    FiberConfig cfg;
    cfg.k = k;
    cfg.eps = eps;
    cfg.truncation = R;
    cfg.seed = seed;
    FiberReport rep = fiber_report(s, t, cfg);
    std::cout << "fiber at t=" << rep.t << ": nonempty=" << (rep.nonempty ? "yes" : "no")
              << " bounded=" << (rep.bounded ? "yes" : "no")
              << " components=" << rep.sampled_components << " samples=" << rep.sample_count
              << " eps=" << rep.epsilon << (rep.truncated ? " (truncated)" : "") << "\n";
    std::cout << "fiber_dim=" << rep.fiber_dim << " model: " << rep.model << "\n";
    if (!json_out.empty())
        write_text_file(json_out, fiber_to_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_singular(const std::string& file, const std::string& blocks_csv, int samples,
                 std::uint64_t seed, const std::string& json_out) {
    ManifoldSystem s = load_system(file, blocks_csv);
    SingularReport rep = singular_values(s, samples, seed);
    std::cout << "predicted singular values:";
    for (std::size_t i = 0; i < rep.predicted_values.size(); ++i)
        std::cout << " " << rep.predicted_values[i] << (rep.verified[i] ? "(verified)" : "(UNVERIFIED)");
    std::cout << "\noff-corner regular fraction: " << rep.off_corner_clean << "\n";
    if (!json_out.empty())
        write_text_file(json_out, singular_to_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_image(const std::string& file, const std::string& blocks_csv, int grid,
              const std::string& json_out) {
    ManifoldSystem s = load_system(file, blocks_csv);
    auto [lo, hi] = image_estimate(s, grid);
    std::cout << "image estimate: [" << lo << ", " << hi << "] (grid " << grid << ")\n";
    if (!json_out.empty()) {
        nlohmann::json j{{"lo", lo}, {"hi", hi}, {"grid", grid}};
        write_text_file(json_out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_export_system(const std::string& file, const std::string& blocks_csv,
                      const std::string& out) {
    ManifoldSystem s = load_system(file, blocks_csv);
    write_text_file(out, system_to_json(s).dump(2) + "\n");
    std::cout << "wrote " << out << " (N=" << s.ambient_dim << ", dim M=" << s.manifold_dim
              << ")\n";
    return 0;
}

int cmd_plot(const std::string& file, int factor, const std::string& out,
             const std::string& window_csv) {
    DomainSpec d = load_domain(file);
    std::optional<std::array<double, 4>> window;
    if (!window_csv.empty()) {
        auto w = parse_csv_doubles(window_csv);
        if (w.size() != 4)
            throw std::invalid_argument("--window expects x0,x1,y0,y1");
        window = std::array<double, 4>{w[0], w[1], w[2], w[3]};
    }
    write_text_file(out, render_factor_svg(d, factor, window));
    std::cout << "wrote " << out << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"domains bounded by hyperbola-branch hypersurfaces: build, verify, lift, plot"};
    app.require_subcommand(1);

    std::string t_csv, labels_csv, mode = "minimal", out_path = "domain.json";
    auto* build = app.add_subcommand("build", "build a domain from t and labels");
    build->add_option("--t", t_csv, "comma-separated increasing values")->required();
    build->add_option("--labels", labels_csv, "comma-separated 0/1 labels, one per interval")
        ->required();
    build->add_option("--mode", mode, "minimal or literal");
    build->add_option("--out", out_path, "output domain file");

    std::string in_file, json_out, blocks_csv, window_csv;
    int samples = 400, k = 2000, grid = 401, factor = 0, sing_samples = 200;
    double tol = 1e-7, box_radius = 0.0, eps = 0.0, R = 0.0, t_value = 0.0;
    std::uint64_t seed = default_seed();
    bool literal_report = false;

    auto* check = app.add_subcommand("check", "verify the defining conditions numerically");
    check->add_option("file", in_file, "domain file")->required();
    check->add_option("--samples", samples, "samples per sub-check");
    check->add_option("--tol", tol, "tolerance for margins and residuals");
    check->add_option("--box-radius", box_radius, "probe box radius (0: 5x span)");
    check->add_option("--seed", seed, "random seed");
    check->add_option("--json", json_out, "write the report as JSON");
    check->add_flag("--literal-report", literal_report, "print every recorded witness");

    auto* fiber = app.add_subcommand("fiber", "sample and report one fiber");
    fiber->add_option("file", in_file, "domain file")->required();
    fiber->add_option("--t", t_value, "fiber level")->required();
    fiber->add_option("--d", blocks_csv, "comma-separated sphere block sizes");
    fiber->add_option("--k", k, "fiber sample count");
    fiber->add_option("--eps", eps, "component graph radius (0: 3x median NN)");
    fiber->add_option("--R", R, "truncation for unbounded fibers (0: 10x span)");
    fiber->add_option("--seed", seed, "random seed");
    fiber->add_option("--json", json_out, "write the report as JSON");

    auto* singular = app.add_subcommand("singular", "predict and verify singular values");
    singular->add_option("file", in_file, "domain file")->required();
    singular->add_option("--d", blocks_csv, "comma-separated sphere block sizes");
    singular->add_option("--samples", sing_samples, "off-corner sample count");
    singular->add_option("--seed", seed, "random seed");
    singular->add_option("--json", json_out, "write the report as JSON");

    auto* image = app.add_subcommand("image", "estimate the image interval on a grid");
    image->add_option("file", in_file, "domain file")->required();
    image->add_option("--d", blocks_csv, "comma-separated sphere block sizes");
    image->add_option("--grid", grid, "grid size");
    image->add_option("--json", json_out, "write the result as JSON");

    auto* exports = app.add_subcommand("export-system", "write the lifted polynomial system");
    exports->add_option("file", in_file, "domain file")->required();
    exports->add_option("--d", blocks_csv, "comma-separated sphere block sizes");
    exports->add_option("--out", out_path, "output system file");

    auto* plot = app.add_subcommand("plot", "render one planar factor as SVG");
    plot->add_option("file", in_file, "domain file")->required();
    plot->add_option("--factor", factor, "factor index");
    plot->add_option("--out", out_path, "output SVG file");
    plot->add_option("--window", window_csv, "x0,x1,y0,y1");

    std::vector<char*> argv;
    std::string prog = "hyperdomain";
    argv.push_back(prog.data());
    std::vector<std::string> copy = args;
    for (std::string& a : copy)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed())
            return cmd_build(t_csv, labels_csv, mode, out_path);
        if (check->parsed())
            return cmd_check(in_file, samples, tol, box_radius, seed, json_out, literal_report);
        if (fiber->parsed())
            return cmd_fiber(in_file, blocks_csv, t_value, k, eps, R, seed, json_out);
        if (singular->parsed())
            return cmd_singular(in_file, blocks_csv, sing_samples, seed, json_out);
        if (image->parsed())
            return cmd_image(in_file, blocks_csv, grid, json_out);
        if (exports->parsed())
            return cmd_export_system(in_file, blocks_csv, out_path);
        if (plot->parsed())
            return cmd_plot(in_file, factor, out_path, window_csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace hyperdomain
