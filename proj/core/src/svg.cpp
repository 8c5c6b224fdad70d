#include "optosync/svg.hpp"
#include "optosync/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace optosync {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Rgb {
    double r, g, b;
};

std::string css(const Rgb& c) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(std::lround(c.r * 255)),
                  static_cast<int>(std::lround(c.g * 255)),
                  static_cast<int>(std::lround(c.b * 255)));
    return buf;
}

Rgb lerp(const Rgb& a, const Rgb& b, double t) {
    return {a.r + t * (b.r - a.r), a.g + t * (b.g - a.g), a.b + t * (b.b - a.b)};
}

constexpr Rgb kBlue{0.18, 0.35, 0.80};
constexpr Rgb kWhite{0.97, 0.97, 0.97};
constexpr Rgb kRed{0.82, 0.20, 0.20};
constexpr Rgb kDark{0.10, 0.12, 0.35};
constexpr Rgb kYellow{0.98, 0.90, 0.30};

/// Diverging ramp when the range straddles zero, sequential otherwise.
Rgb ramp_color(double v, double lo, double hi) {
    if (lo < 0.0 && hi > 0.0) {
        const double m = std::max(-lo, hi);
        const double t = std::clamp(v / m, -1.0, 1.0);
        return t < 0.0 ? lerp(kWhite, kBlue, -t) : lerp(kWhite, kRed, t);
    }
    const double t = (hi > lo) ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.5;
    return lerp(kDark, kYellow, t);
}

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 0.5 * step; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

std::string svg_open(double w, double h) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
    out += "<desc>optosync " + std::string(kVersion) + "</desc>\n";
    return out;
}

std::string text(double x, double y, const std::string& s, const std::string& anchor = "middle",
                 double size = 12, const std::string& extra = "") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\"" +
           " font-size=\"" + num(size) + "\" text-anchor=\"" + anchor + "\"" + extra + ">" +
           escape_xml(s) + "</text>\n";
}

} // namespace

std::string render_heatmap(const SweepField& field, HeatmapStyle style,
                           const std::string& title) {
    const GridSpec& g = field.grid;
    const double plot_w = 480, plot_h = 360;
    const double ml = 70, mt = title.empty() ? 20 : 42, mr = style == HeatmapStyle::continuous ? 90 : 30,
                 mb = 56;
    const double width = ml + plot_w + mr, height = mt + plot_h + mb;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < field.values.size(); ++k)
        if (field.status[k] != CellStatus::divergent && std::isfinite(field.values[k])) {
            lo = std::min(lo, field.values[k]);
            hi = std::max(hi, field.values[k]);
        }
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;

    const double cw = plot_w / g.lambda_steps;
    const double ch = plot_h / g.mu_steps;

    std::string out = svg_open(width, height);
    out += "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
           "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
           "<rect width=\"6\" height=\"6\" fill=\"#cccccc\"/>"
           "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#666666\" stroke-width=\"2\"/>"
           "</pattern></defs>\n";
    if (!title.empty()) out += text(width / 2, 24, title, "middle", 15);

    // cells; mu increases upward
    for (int i = 0; i < g.mu_steps; ++i)
        for (int j = 0; j < g.lambda_steps; ++j) {
            const double x = ml + j * cw;
            const double y = mt + plot_h - (i + 1) * ch;
            std::string fill;
            const CellStatus st = field.status_at(i, j);
            if (st == CellStatus::divergent) {
                fill = "url(#hatch)";
            } else if (style == HeatmapStyle::sign) {
                if (st == CellStatus::marginal) fill = "#9b9b9b";
                else fill = field.value_at(i, j) < 0.0 ? css(kBlue) : css(kRed);
            } else {
                fill = css(ramp_color(field.value_at(i, j), lo, hi));
            }
            out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw + 0.5) +
                   "\" height=\"" + num(ch + 0.5) + "\" fill=\"" + fill + "\"/>\n";
        }

    // frame and axes
    out += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
    auto x_of_lambda = [&](double v) {
        return g.lambda_max > g.lambda_min
                   ? ml + (v - g.lambda_min) / (g.lambda_max - g.lambda_min) * plot_w
                   : ml + plot_w / 2;
    };
    auto y_of_mu = [&](double v) {
        return g.mu_max > g.mu_min ? mt + plot_h - (v - g.mu_min) / (g.mu_max - g.mu_min) * plot_h
                                   : mt + plot_h / 2;
    };
    for (double tv : nice_ticks(g.lambda_min, g.lambda_max)) {
        const double x = x_of_lambda(tv);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(mt + plot_h) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(mt + plot_h + 5) + "\" stroke=\"#333333\"/>\n";
        out += text(x, mt + plot_h + 20, num(tv));
    }
    for (double tv : nice_ticks(g.mu_min, g.mu_max)) {
        const double y = y_of_mu(tv);
        out += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(ml) +
               "\" y2=\"" + num(y) + "\" stroke=\"#333333\"/>\n";
        out += text(ml - 8, y + 4, num(tv), "end", 11);
    }
    out += text(ml + plot_w / 2, height - 14, "\xce\xbb");  // lambda
    out += text(16, mt + plot_h / 2, "\xce\xbc", "middle", 12,
                " transform=\"rotate(-90 16 " + num(mt + plot_h / 2) + ")\"");  // mu

    if (style == HeatmapStyle::continuous) {
        const double bx = ml + plot_w + 24, bw = 16, bh = plot_h;
        const int strips = 64;
        for (int s = 0; s < strips; ++s) {
            const double f = (s + 0.5) / strips;
            const double v = lo + f * (hi - lo);
            const double y = mt + bh - (s + 1) * (bh / strips);
            out += "<rect x=\"" + num(bx) + "\" y=\"" + num(y) + "\" width=\"" + num(bw) +
                   "\" height=\"" + num(bh / strips + 0.5) + "\" fill=\"" +
                   css(ramp_color(v, lo, hi)) + "\"/>\n";
        }
        out += "<rect x=\"" + num(bx) + "\" y=\"" + num(mt) + "\" width=\"" + num(bw) +
               "\" height=\"" + num(bh) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
        out += text(bx + bw + 6, mt + 10, num(hi), "start", 11);
        out += text(bx + bw + 6, mt + bh, num(lo), "start", 11);
    } else {
        // sign legend
        const double lx = ml + 8, ly = mt + 14;
        out += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 10) +
               "\" width=\"12\" height=\"12\" fill=\"" + css(kBlue) + "\"/>\n";
        out += text(lx + 18, ly + 1, "exponent < 0", "start", 11);
        out += "<rect x=\"" + num(lx + 120) + "\" y=\"" + num(ly - 10) +
               "\" width=\"12\" height=\"12\" fill=\"" + css(kRed) + "\"/>\n";
        out += text(lx + 138, ly + 1, "exponent > 0", "start", 11);
    }
    out += "</svg>\n";
    return out;
}

std::string render_series(const std::vector<Series>& series, const std::string& x_label,
                          const std::string& y_label, const std::string& title) {
    const double plot_w = 520, plot_h = 300;
    const double ml = 70, mt = title.empty() ? 20 : 42, mr = 24, mb = 56;
    const double width = ml + plot_w + mr, height = mt + plot_h + mb;

    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : series)
        for (size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            xlo = std::min(xlo, s.x[k]);
            xhi = std::max(xhi, s.x[k]);
            ylo = std::min(ylo, s.y[k]);
            yhi = std::max(yhi, s.y[k]);
        }
    if (!std::isfinite(xlo)) xlo = 0, xhi = 1;
    if (!std::isfinite(ylo)) ylo = 0, yhi = 1;
    if (yhi == ylo) {
        ylo -= 0.5;
        yhi += 0.5;
    }
    const double ypad = 0.05 * (yhi - ylo);
    ylo -= ypad;
    yhi += ypad;

    auto px = [&](double v) { return ml + (v - xlo) / (xhi - xlo) * plot_w; };
    auto py = [&](double v) { return mt + plot_h - (v - ylo) / (yhi - ylo) * plot_h; };

    const char* palette[] = {"#2b5fb8", "#c23b3b", "#2e8b57", "#8a2be2", "#b8860b", "#13889b"};

    std::string out = svg_open(width, height);
    if (!title.empty()) out += text(width / 2, 24, title, "middle", 15);
    out += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) + "\" fill=\"#fcfcfc\" stroke=\"#333333\"/>\n";

    for (double tv : nice_ticks(xlo, xhi)) {
        const double x = px(tv);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(mt + plot_h) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(mt + plot_h + 5) + "\" stroke=\"#333333\"/>\n";
        out += text(x, mt + plot_h + 20, num(tv));
    }
    for (double tv : nice_ticks(ylo, yhi)) {
        const double y = py(tv);
        out += "<line x1=\"" + num(ml) + "\" y1=\"" + num(y) + "\" x2=\"" + num(ml + plot_w) +
               "\" y2=\"" + num(y) + "\" stroke=\"#e4e4e4\"/>\n";
        out += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(ml) +
               "\" y2=\"" + num(y) + "\" stroke=\"#333333\"/>\n";
        out += text(ml - 8, y + 4, num(tv), "end", 11);
    }

    int color_idx = 0;
    for (const auto& s : series) {
        std::string pts;
        for (size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            pts += num(px(s.x[k])) + "," + num(py(s.y[k])) + " ";
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(palette[color_idx % 6]) +
               "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
        ++color_idx;
    }

    if (series.size() > 1 || (!series.empty() && !series[0].label.empty())) {
        double lx = ml + 10, ly = mt + 16;
        color_idx = 0;
        for (const auto& s : series) {
            out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
                   num(lx + 18) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" +
                   std::string(palette[color_idx % 6]) + "\" stroke-width=\"2\"/>\n";
            out += text(lx + 24, ly, s.label, "start", 11);
            ly += 16;
            ++color_idx;
        }
    }

    out += text(ml + plot_w / 2, height - 14, x_label);
    out += text(16, mt + plot_h / 2, y_label, "middle", 12,
                " transform=\"rotate(-90 16 " + num(mt + plot_h / 2) + ")\"");
    out += "</svg>\n";
    return out;
}

} // namespace optosync
