#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "isle/experiment.hpp"

namespace isle {

inline constexpr const char* kCsvHeader =
    "problem,measure,n_or_m,topology,mu,tau,operator,replication,seed,parallel_time,capped";

// Raw per-run rows under the fixed header above. Capped runs print
// parallel_time as `inf` and capped as 1. An empty table yields a header-only
// file.
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
std::string to_csv(const std::vector<ResultRow>& rows);

// Exact inverse of to_csv.
std::vector<ResultRow> parse_result_csv(const std::string& text);
std::vector<ResultRow> load_result_csv(const std::filesystem::path& path);

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct SvgOptions {
    std::string title;
    std::string x_label = "mu";
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

// Minimal self-contained line chart: axes and ticks as <line>/<text>, one
// <polyline> per series, a small legend. No external renderer involved.
std::string to_svg(const std::vector<Series>& series, const SvgOptions& options);
void emit_svg(const std::vector<Series>& series, const SvgOptions& options,
              const std::filesystem::path& path);

}  // namespace isle
