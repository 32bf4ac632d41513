#include "tracon/svg.hpp"

#include <algorithm>
#include <fstream>

#include "tracon/csv_io.hpp"
#include "tracon/error.hpp"

namespace tracon::io {

namespace {

std::ofstream open_svg(const std::filesystem::path& path, double width, double height) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width)
        << "\" height=\"" << format_double(height) << "\" viewBox=\"0 0 "
        << format_double(width) << ' ' << format_double(height) << "\">\n";
    return out;
}

void rect(std::ofstream& out, double x, double y, double w, double h, const char* fill) {
    out << "  <rect x=\"" << format_double(x) << "\" y=\"" << format_double(y) << "\" width=\""
        << format_double(w) << "\" height=\"" << format_double(h) << "\" fill=\"" << fill
        << "\"/>\n";
}

void text(std::ofstream& out, double x, double y, const std::string& s, int size = 10) {
    out << "  <text x=\"" << format_double(x) << "\" y=\"" << format_double(y)
        << "\" font-family=\"sans-serif\" font-size=\"" << size << "\">" << s << "</text>\n";
}

} // namespace

void write_period_chart_svg(const std::filesystem::path& path,
                            const std::vector<PeriodCounts>& counts) {
    const double margin = 40.0;
    const double bar_w = 8.0;
    const double plot_h = 220.0;
    const double width = margin * 2 + bar_w * static_cast<double>(std::max<std::size_t>(counts.size(), 1));
    const double height = plot_h + margin * 2;

    int max_count = 1;
    for (const auto& c : counts) max_count = std::max(max_count, c.present);
    const double scale = plot_h / static_cast<double>(max_count);
    const double base = margin + plot_h;

    auto out = open_svg(path, width, height);
    text(out, margin, margin - 12.0, "per-period arrivals: present / entering / rerouted");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const auto& c = counts[i];
        const double x = margin + bar_w * static_cast<double>(i);
        rect(out, x, base - c.present * scale, bar_w, c.present * scale, "#9ecae1");
        rect(out, x, base - c.entering * scale, bar_w * 0.6, c.entering * scale, "#2171b5");
        rect(out, x, base - c.rerouted * scale, bar_w * 0.35, c.rerouted * scale, "#cb181d");
        rect(out, x, base + 4.0, bar_w, 6.0, c.runways_in_use == 1 ? "#ffd700" : "#31a354");
    }
    out << "</svg>\n";
}

void write_sweep_chart_svg(const std::filesystem::path& path,
                           const std::vector<SweepRow>& rows) {
    const double margin = 50.0;
    const double group_w = 60.0;
    const double bar_w = 22.0;
    const double plot_h = 220.0;
    const double width = margin * 2 + group_w * static_cast<double>(std::max<std::size_t>(rows.size(), 1));
    const double height = plot_h + margin * 2;

    double max_minutes = 1.0;
    for (const auto& r : rows) {
        max_minutes = std::max(max_minutes, r.report.mean_rerouting_s / 60.0);
        max_minutes = std::max(max_minutes, r.report.mean_waiting_s / 60.0);
    }
    const double scale = plot_h / max_minutes;
    const double base = margin + plot_h;

    auto out = open_svg(path, width, height);
    text(out, margin, margin - 12.0, "mean rerouting (dark) and waiting (light) time, minutes");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double x = margin + group_w * static_cast<double>(i);
        const double reroute_h = r.report.mean_rerouting_s / 60.0 * scale;
        const double wait_h = r.report.mean_waiting_s / 60.0 * scale;
        rect(out, x, base - reroute_h, bar_w, reroute_h, "#252525");
        rect(out, x + bar_w + 4.0, base - wait_h, bar_w, wait_h, "#bdbdbd");
        const std::string label =
            r.cap.bounded() ? std::to_string(*r.cap.max_in_tracon) : std::string("inf");
        text(out, x + bar_w - 6.0, base + 16.0, label);
    }
    out << "</svg>\n";
}

} // namespace tracon::io
