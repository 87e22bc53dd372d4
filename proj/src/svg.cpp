#include "hyperdomain/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace hyperdomain {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr int kMargin = 60;
constexpr int kCurveSamples = 256;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Mapper {
    double x0, x1, y0, y1;
    double sx(double x) const {
        return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin);
    }
    double sy(double y) const {
        return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
    }
};

const char* kBranchColors[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

} // namespace

std::string render_factor_svg(const DomainSpec& d, int factor_index,
                              std::optional<std::array<double, 4>> window) {
    if (factor_index < 0 || factor_index >= static_cast<int>(d.factors.size()))
        throw std::out_of_range("render_factor_svg: factor index out of range");
    const FactorDomain& f = d.factors[factor_index];
    const double t1 = d.t.front(), tl = d.t.back(), span = d.span();

    Mapper m{};
    if (window) {
        m.x0 = (*window)[0];
        m.x1 = (*window)[1];
        m.y0 = (*window)[2];
        m.y1 = (*window)[3];
        if (!(m.x0 < m.x1 && m.y0 < m.y1))
            throw std::invalid_argument("render_factor_svg: degenerate window");
    } else {
        m.x0 = t1 - 0.5 * span;
        m.x1 = tl + 0.5 * span;
        double ymax = 2.5 * std::max(f.rho, 0.2 * span);
        m.y0 = -ymax;
        m.y1 = ymax;
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
           std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    auto xat = [&](int i) { return m.x0 + (m.x1 - m.x0) * i / (kCurveSamples - 1); };

    // Shaded admissible region, split into contiguous nonempty runs.
    {
        std::vector<std::array<double, 3>> current; // x, lo, hi (clamped)
        auto flush = [&]() {
            if (current.size() >= 2) {
                std::string path = "M";
                for (const auto& p : current)
                    path += " " + fmt(m.sx(p[0])) + " " + fmt(m.sy(p[2]));
                for (auto it = current.rbegin(); it != current.rend(); ++it)
                    path += " L " + fmt(m.sx((*it)[0])) + " " + fmt(m.sy((*it)[1]));
                path += " Z";
                svg += "<path d=\"" + path + "\" fill=\"#cfe3f5\" stroke=\"none\"/>\n";
            }
            current.clear();
        };
        for (int i = 0; i < kCurveSamples; ++i) {
            double x = xat(i);
            SliceInterval iv = f.slice(x);
            double lo = std::max(iv.lo, m.y0);
            double hi = std::min(std::isinf(iv.hi) ? m.y1 : iv.hi, m.y1);
            if (iv.empty || lo >= hi) {
                flush();
                continue;
            }
            current.push_back({x, lo, hi});
        }
        flush();
    }

    // Axes.
    svg += "<line x1=\"" + fmt(m.sx(m.x0)) + "\" y1=\"" + fmt(m.sy(0)) + "\" x2=\"" +
           fmt(m.sx(m.x1)) + "\" y2=\"" + fmt(m.sy(0)) + "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

    // Ticks at each t_j.
    for (double tj : d.t) {
        if (tj < m.x0 || tj > m.x1)
            continue;
        svg += "<line x1=\"" + fmt(m.sx(tj)) + "\" y1=\"" + fmt(m.sy(0) - 6) + "\" x2=\"" +
               fmt(m.sx(tj)) + "\" y2=\"" + fmt(m.sy(0) + 6) +
               "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(m.sx(tj)) + "\" y=\"" + fmt(m.sy(0) + 20) +
               "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#444444\">" + fmt(tj) +
               "</text>\n";
    }

    // Dashed asymptotes of each branch hyperbola.
    for (const Hypersurface& h : f.hypersurfaces) {
        if (h.branch.a >= m.x0 && h.branch.a <= m.x1)
            svg += "<line x1=\"" + fmt(m.sx(h.branch.a)) + "\" y1=\"" + fmt(m.sy(m.y0)) +
                   "\" x2=\"" + fmt(m.sx(h.branch.a)) + "\" y2=\"" + fmt(m.sy(m.y1)) +
                   "\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
        if (h.branch.b >= m.y0 && h.branch.b <= m.y1)
            svg += "<line x1=\"" + fmt(m.sx(m.x0)) + "\" y1=\"" + fmt(m.sy(h.branch.b)) +
                   "\" x2=\"" + fmt(m.sx(m.x1)) + "\" y2=\"" + fmt(m.sy(h.branch.b)) +
                   "\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
    }

    // Branch curves over support and window, split at clip gaps.
    double y_pad = 0.05 * (m.y1 - m.y0);
    for (int bi = 0; bi < static_cast<int>(f.hypersurfaces.size()); ++bi) {
        const Branch& br = f.hypersurfaces[bi].branch;
        std::vector<std::pair<double, double>> seg;
        auto flush = [&]() {
            if (seg.size() >= 2) {
                std::string pts;
                for (const auto& [x, y] : seg)
                    pts += fmt(m.sx(x)) + "," + fmt(m.sy(y)) + " ";
                pts.pop_back();
                svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
                       kBranchColors[bi % 4] + "\" stroke-width=\"2\"/>\n";
            }
            seg.clear();
        };
        for (int i = 0; i < kCurveSamples; ++i) {
            double x = xat(i);
            if (!br.in_support(x)) {
                flush();
                continue;
            }
            double y = br.height_unchecked(x);
            if (y < m.y0 - y_pad || y > m.y1 + y_pad) {
                flush();
                continue;
            }
            seg.push_back({x, std::clamp(y, m.y0, m.y1)});
        }
        flush();
    }

    // Corner markers.
    for (const Corner& c : f.corners) {
        svg += "<circle cx=\"" + fmt(m.sx(c.x1)) + "\" cy=\"" + fmt(m.sy(c.xv)) +
               "\" r=\"4\" fill=\"#000000\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace hyperdomain
