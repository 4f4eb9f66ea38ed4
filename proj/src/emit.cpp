#include "isle/emit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isle {

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const auto& row : rows) {
        out << row.problem << "," << row.measure << "," << row.n_or_m << "," << row.topology
            << "," << row.mu << "," << row.tau << "," << row.op << "," << row.replication << ","
            << row.seed << ",";
        if (row.capped) {
            out << "inf,1\n";
        } else {
            out << row.parallel_time << ",0\n";
        }
    }
    return out.str();
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write csv file: " + path.string());
    }
    out << to_csv(rows);
}

std::vector<ResultRow> parse_result_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("result csv: missing or unexpected header");
    }
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream items(line);
        std::string item;
        while (std::getline(items, item, ',')) {
            fields.push_back(item);
        }
        if (fields.size() != 11) {
            throw std::runtime_error("result csv: bad row: " + line);
        }
        ResultRow row;
        row.problem = fields[0];
        row.measure = fields[1];
        row.n_or_m = static_cast<std::uint32_t>(std::stoul(fields[2]));
        row.topology = fields[3];
        row.mu = static_cast<std::uint32_t>(std::stoul(fields[4]));
        row.tau = fields[5];
        row.op = fields[6];
        row.replication = static_cast<std::uint32_t>(std::stoul(fields[7]));
        row.seed = std::stoull(fields[8]);
        row.capped = fields[10] == "1";
        row.parallel_time = row.capped ? kInfiniteTime : std::stoull(fields[9]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ResultRow> load_result_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open csv file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_result_csv(text.str());
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 56.0;

struct AxisScale {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double place(double v, double pixel_lo, double pixel_hi) const {
        double x = log ? std::log10(v) : v;
        double a = log ? std::log10(lo) : lo;
        double b = log ? std::log10(hi) : hi;
        if (b <= a) {
            b = a + 1.0;
        }
        return pixel_lo + (x - a) / (b - a) * (pixel_hi - pixel_lo);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int first = static_cast<int>(std::floor(std::log10(lo)));
            const int last = static_cast<int>(std::ceil(std::log10(hi)));
            for (int e = first; e <= last; ++e) {
                out.push_back(std::pow(10.0, e));
            }
            return out;
        }
        const double span = hi - lo;
        const double raw = span / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw > 0 ? raw : 1.0)));
        double step = mag;
        if (raw / mag > 5.0) {
            step = 10.0 * mag;
        } else if (raw / mag > 2.0) {
            step = 5.0 * mag;
        } else if (raw / mag > 1.0) {
            step = 2.0 * mag;
        }
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
            out.push_back(v);
        }
        return out;
    }
};

std::string format_number(double v) {
    std::ostringstream out;
    if (v != 0.0 && (std::fabs(v) >= 1e5 || std::fabs(v) < 1e-2)) {
        out.precision(1);
        out << std::scientific << v;
    } else {
        out.precision(6);
        out << v;
    }
    return out.str();
}

const char* series_color(std::size_t index) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[index % (sizeof(palette) / sizeof(palette[0]))];
}

}  // namespace

std::string to_svg(const std::vector<Series>& series, const SvgOptions& options) {
    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (first) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                first = false;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    }
    if (options.log_x && x_lo <= 0.0) {
        throw std::invalid_argument("to_svg: log x axis needs positive values");
    }
    if (options.log_y && y_lo <= 0.0) {
        throw std::invalid_argument("to_svg: log y axis needs positive values");
    }
    if (!options.log_x && x_lo == x_hi) {
        x_hi = x_lo + 1.0;
    }
    if (!options.log_y && y_lo == y_hi) {
        y_hi = y_lo + 1.0;
    }
    if (options.log_x && x_lo == x_hi) {
        x_hi = x_lo * 10.0;
    }
    if (options.log_y && y_lo == y_hi) {
        y_hi = y_lo * 10.0;
    }
    const AxisScale xs{x_lo, x_hi, options.log_x};
    const AxisScale ys{y_lo, y_hi, options.log_y};
    const double plot_left = kMarginLeft;
    const double plot_right = kWidth - kMarginRight;
    const double plot_top = kMarginTop;
    const double plot_bottom = kHeight - kMarginBottom;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"14\">" << options.title << "</text>\n";
    }
    // Axes.
    out << "<line x1=\"" << plot_left << "\" y1=\"" << plot_bottom << "\" x2=\"" << plot_right
        << "\" y2=\"" << plot_bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << plot_left << "\" y1=\"" << plot_top << "\" x2=\"" << plot_left
        << "\" y2=\"" << plot_bottom << "\" stroke=\"black\"/>\n";
    for (double v : xs.ticks()) {
        if (v < x_lo - 1e-12 || v > x_hi * (1 + 1e-12) + 1e-12) {
            continue;
        }
        const double px = xs.place(v, plot_left, plot_right);
        out << "<line x1=\"" << px << "\" y1=\"" << plot_bottom << "\" x2=\"" << px << "\" y2=\""
            << plot_bottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << plot_bottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_number(v) << "</text>\n";
    }
    for (double v : ys.ticks()) {
        if (v < y_lo - 1e-12 || v > y_hi * (1 + 1e-12) + 1e-12) {
            continue;
        }
        const double py = ys.place(v, plot_bottom, plot_top);
        out << "<line x1=\"" << plot_left - 5 << "\" y1=\"" << py << "\" x2=\"" << plot_left
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << plot_left - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_number(v) << "</text>\n";
    }
    out << "<text x=\"" << (plot_left + plot_right) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << options.x_label << "</text>\n";
    if (!options.y_label.empty()) {
        out << "<text x=\"16\" y=\"" << (plot_top + plot_bottom) / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
            << "transform=\"rotate(-90 16 " << (plot_top + plot_bottom) / 2 << ")\">"
            << options.y_label << "</text>\n";
    }
    // Data.
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << "<polyline fill=\"none\" stroke=\"" << series_color(i)
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < series[i].points.size(); ++k) {
            const auto [x, y] = series[i].points[k];
            if (k > 0) {
                out << " ";
            }
            out << xs.place(x, plot_left, plot_right) << "," << ys.place(y, plot_bottom, plot_top);
        }
        out << "\"/>\n";
        out << "<text x=\"" << plot_right - 8 << "\" y=\"" << plot_top + 16 + 16 * double(i)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
            << series_color(i) << "\">" << series[i].label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void emit_svg(const std::vector<Series>& series, const SvgOptions& options,
              const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write svg file: " + path.string());
    }
    out << to_svg(series, options);
}

}  // namespace isle
