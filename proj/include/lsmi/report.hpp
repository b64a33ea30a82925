#pragma once

// CSV and SVG output for experiment results.

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lsmi/experiment.hpp"

namespace lsmi {

inline constexpr std::string_view kCsvHeader =
    "n,m,input_sinr_db,method,mean_output_sinr_db,std_output_sinr_db,mean_output_sinr_linear,mean_alpha,"
    "clamp_rate,trials";

/// Shortest round-trip text for integral-valued numbers, 17 significant
/// digits otherwise; "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double value);

/// Shortest round-trip text, used in file names and labels.
std::string format_short(double value);

/// '#'-prefixed run metadata (seed, trials, ...). Contains no timestamps.
std::string metadata_line(const ExperimentConfig& cfg);

/// Metadata line, header, then one line per row. LF line endings.
void write_csv(std::ostream& out, const ExperimentConfig& cfg, const ExperimentResult& result);

struct PlotSeries {
    Method method;
    std::vector<std::pair<double, double>> points;  ///< (n, mean output SINR dB), ascending n
};

struct PlotPanel {
    double input_sinr_db;
    std::string title;
    std::vector<PlotSeries> series;
};

/// One panel per input SINR; one series per method with a point per n.
std::vector<PlotPanel> build_plot_panels(const ExperimentResult& result, bool contaminated);

/// Self-contained SVG 1.1 document for one panel.
std::string render_svg(const PlotPanel& panel);

/// panel_sinr_<value>db.svg
std::string panel_file_name(double input_sinr_db);

}  // namespace lsmi
