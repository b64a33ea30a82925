#include "lsmi/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lsmi/config.hpp"

namespace lsmi {

namespace {

std::string to_chars_string(double value, int precision) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = precision > 0 ? std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision)
                                   : std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
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

struct LineStyle {
    const char* color;
    const char* dash;  // empty for solid
    const char* label;
};

// Dotted optimum, solid adaptive, dash-dot fixed loading.
LineStyle style_for(Method m) {
    switch (m) {
        case Method::Optimal: return {"#000000", "2,4", "optimum (known R)"};
        case Method::Adaptive: return {"#c0392b", "", "adaptive loading"};
        case Method::Fixed: return {"#1f4e9c", "10,4,2,4", "fixed loading 10 noise"};
        case Method::GridOracle: return {"#7f7f7f", "6,4", "grid oracle"};
    }
    return {"#000000", "", "?"};
}

double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= f * mag) return f * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string format_number(double value) { return to_chars_string(value, 17); }

std::string format_short(double value) { return to_chars_string(value, 0); }

std::string metadata_line(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "# seed=" << cfg.seed << " trials=" << cfg.trials << " adaptive_T=" << cfg.adaptive_T
        << " m_ratio=" << format_number(cfg.m_ratio) << " contaminated=" << (cfg.scenario.contaminated ? 1 : 0)
        << " sinr_reference=" << sinr_reference_name(cfg.sinr_reference)
        << " adaptive_negative_alpha=" << negative_alpha_name(cfg.adaptive_negative_alpha);
    return out.str();
}

void write_csv(std::ostream& out, const ExperimentConfig& cfg, const ExperimentResult& result) {
    out << metadata_line(cfg) << '\n' << kCsvHeader << '\n';
    for (const auto& row : result.rows) {
        out << row.n << ',' << row.m << ',' << format_number(row.input_sinr_db) << ',' << method_name(row.method)
            << ',' << format_number(row.mean_output_sinr_db) << ',' << format_number(row.std_output_sinr_db) << ','
            << format_number(row.mean_output_sinr_linear) << ',' << format_number(row.mean_alpha) << ','
            << format_number(row.clamp_rate) << ',' << row.trials << '\n';
    }
}

std::vector<PlotPanel> build_plot_panels(const ExperimentResult& result, bool contaminated) {
    std::map<double, std::map<Method, PlotSeries>> grouped;
    for (const auto& row : result.rows) {
        auto& series = grouped[row.input_sinr_db][row.method];
        series.method = row.method;
        series.points.emplace_back(static_cast<double>(row.n), row.mean_output_sinr_db);
    }

    std::vector<PlotPanel> panels;
    for (auto& [sinr, by_method] : grouped) {
        PlotPanel panel{sinr,
                        "Input SINR " + format_short(sinr) + " dB, training sample " +
                            (contaminated ? "contaminated" : "clean"),
                        {}};
        for (auto& [method, series] : by_method) {
            std::sort(series.points.begin(), series.points.end());
            panel.series.push_back(std::move(series));
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

std::string render_svg(const PlotPanel& panel) {
    constexpr double width = 520, height = 380;
    constexpr double left = 64, right = 16, top = 36, bottom = 96;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : panel.series) {
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            if (std::isfinite(y)) {
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    if (!std::isfinite(x_min)) x_min = 0, x_max = 1;
    if (!std::isfinite(y_min)) y_min = 0, y_max = 0;
    if (x_max == x_min) x_min -= 1, x_max += 1;
    y_min -= 1.0;
    y_max += 1.0;

    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };
    auto f = [](double v) { return to_chars_string(std::round(v * 100.0) / 100.0, 0); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f(width) << "\" height=\""
        << f(height) << "\" viewBox=\"0 0 " << f(width) << ' ' << f(height) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << f(width) << "\" height=\"" << f(height) << "\" fill=\"#ffffff\"/>\n"
        << "<text x=\"" << f(width / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"14\">" << xml_escape(panel.title) << "</text>\n";

    // Axes and grid.
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
    const double step = nice_step(y_max - y_min);
    for (double y = std::ceil(y_min / step) * step; y <= y_max + 1e-9; y += step) {
        svg << "<line x1=\"" << f(left) << "\" y1=\"" << f(py(y)) << "\" x2=\"" << f(left + plot_w) << "\" y2=\""
            << f(py(y)) << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << f(left - 6) << "\" y=\"" << f(py(y) + 4) << "\" text-anchor=\"end\">"
            << format_short(std::round(y * 100.0) / 100.0) << "</text>\n";
    }
    if (!panel.series.empty()) {
        for (const auto& [x, y] : panel.series.front().points) {
            svg << "<text x=\"" << f(px(x)) << "\" y=\"" << f(top + plot_h + 16)
                << "\" text-anchor=\"middle\">" << format_short(x) << "</text>\n";
        }
    }
    svg << "<rect x=\"" << f(left) << "\" y=\"" << f(top) << "\" width=\"" << f(plot_w) << "\" height=\""
        << f(plot_h) << "\" fill=\"none\" stroke=\"#000000\"/>\n"
        << "<text x=\"" << f(left + plot_w / 2) << "\" y=\"" << f(top + plot_h + 34)
        << "\" text-anchor=\"middle\">N</text>\n"
        << "<text x=\"16\" y=\"" << f(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << f(top + plot_h / 2) << ")\">Output SINR (dB)</text>\n"
        << "</g>\n";

    // Series.
    for (const auto& s : panel.series) {
        const auto style = style_for(s.method);
        std::string path;
        bool pen_down = false;
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(y)) {
                pen_down = false;
                continue;
            }
            path += (pen_down ? " L " : (path.empty() ? "M " : " M ")) + f(px(x)) + ' ' + f(py(y));
            pen_down = true;
        }
        if (path.empty()) continue;
        svg << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << style.color << "\" stroke-width=\"1.8\"";
        if (*style.dash) svg << " stroke-dasharray=\"" << style.dash << '"';
        svg << "/>\n";
    }

    // Legend below the plot.
    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t i = 0; i < panel.series.size(); ++i) {
        const auto style = style_for(panel.series[i].method);
        const double lx = left + static_cast<double>(i % 2) * 220.0;
        const double ly = top + plot_h + 52 + static_cast<double>(i / 2) * 16.0;
        svg << "<line x1=\"" << f(lx) << "\" y1=\"" << f(ly) << "\" x2=\"" << f(lx + 28) << "\" y2=\"" << f(ly)
            << "\" stroke=\"" << style.color << "\" stroke-width=\"1.8\"";
        if (*style.dash) svg << " stroke-dasharray=\"" << style.dash << '"';
        svg << "/>\n<text x=\"" << f(lx + 32) << "\" y=\"" << f(ly + 4) << "\">" << xml_escape(style.label)
            << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

std::string panel_file_name(double input_sinr_db) { return "panel_sinr_" + format_short(input_sinr_db) + "db.svg"; }

}  // namespace lsmi
