#include "gstk/harness/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace gstk::harness {

namespace {

constexpr double kPanelW = 520.0;
constexpr double kPanelH = 340.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 150.0;
constexpr double kMarginT = 30.0;
constexpr double kMarginB = 45.0;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(double v)
{
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

void render_panel(std::ostringstream& out, const Panel& p, double ox, double oy)
{
    const double plot_w = kPanelW - kMarginL - kMarginR;
    const double plot_h = kPanelH - kMarginT - kMarginB;
    auto ty = [&p](double y) { return p.log_y ? std::log10(y) : y; };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : p.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (p.log_y && s.y[i] <= 0.0))
                continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    if (!std::isfinite(xmin)) {
        xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    }
    if (xmax == xmin)
        xmax = xmin + 1.0;
    if (ymax == ymin)
        ymax = ymin + 1.0;

    auto px = [&](double x) { return ox + kMarginL + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return oy + kMarginT + plot_h - (ty(y) - ymin) / (ymax - ymin) * plot_h; };

    out << "<rect x=\"" << ox + kMarginL << "\" y=\"" << oy + kMarginT << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << ox + kMarginL + plot_w / 2 << "\" y=\"" << oy + 18
        << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(p.title) << "</text>\n";
    out << "<text x=\"" << ox + kMarginL + plot_w / 2 << "\" y=\"" << oy + kPanelH - 8
        << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.x_label) << "</text>\n";
    out << "<text transform=\"translate(" << ox + 14 << "," << oy + kMarginT + plot_h / 2
        << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" << escape(p.y_label)
        << (p.log_y ? " (log)" : "") << "</text>\n";

    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 4.0;
        const double fy = ymin + (ymax - ymin) * k / 4.0;
        const double yval = p.log_y ? std::pow(10.0, fy) : fy;
        out << "<text x=\"" << px(fx) << "\" y=\"" << oy + kMarginT + plot_h + 16
            << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt(fx) << "</text>\n";
        out << "<text x=\"" << ox + kMarginL - 4 << "\" y=\"" << oy + kMarginT + plot_h - (fy - ymin) / (ymax - ymin) * plot_h + 3
            << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(yval) << "</text>\n";
    }

    for (std::size_t si = 0; si < p.series.size(); ++si) {
        const auto& s = p.series[si];
        const char* colour = kPalette[si % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (p.log_y && s.y[i] <= 0.0))
                continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        const double ly = oy + kMarginT + 12 + 14.0 * static_cast<double>(si);
        const double lx = ox + kMarginL + plot_w + 8;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 16 << "\" y2=\""
            << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 20 << "\" y=\"" << ly << "\" font-size=\"10\">" << escape(s.label)
            << "</text>\n";
    }
}

} // namespace

std::string render_svg(const std::vector<Panel>& panels, int columns)
{
    columns = std::max(1, columns);
    const int rows = (static_cast<int>(panels.size()) + columns - 1) / columns;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPanelW * columns << "\" height=\""
        << kPanelH * std::max(rows, 1) << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = kPanelW * static_cast<double>(static_cast<int>(i) % columns);
        const double oy = kPanelH * static_cast<double>(static_cast<int>(i) / columns);
        render_panel(out, panels[i], ox, oy);
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<Panel> coeffs_chart(const CsvTable& t)
{
    const auto mat = t.column("object_material");
    const auto rad = t.column("object_radius_mm");
    const auto P = t.column("P_N");
    const std::array<std::pair<const char*, const char*>, 3> ys = {{
        {"k_n_N_per_m", "k_n [N/m]"},
        {"k_t_N_per_m", "k_t [N/m]"},
        {"k_tau_Nm_per_rad", "k_tau [N m/rad]"},
    }};

    std::vector<Panel> panels;
    for (const auto& [col_name, label] : ys) {
        const auto col = t.column(col_name);
        Panel panel{label, "P [N]", label, true, {}};
        std::map<std::string, std::size_t> index;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const std::string key = t.rows[r][mat] + " R2=" + t.rows[r][rad];
            auto [it, inserted] = index.emplace(key, panel.series.size());
            if (inserted)
                panel.series.push_back({key, {}, {}});
            panel.series[it->second].x.push_back(t.number(r, P));
            panel.series[it->second].y.push_back(t.number(r, col));
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

std::vector<Panel> case_a_chart(const CsvTable& t)
{
    const auto label = t.column("curvature_label");
    const auto P = t.column("P_N");
    const auto lam = t.column("lambda_min");
    Panel panel{"Minimum eigenvalue vs contact force", "P [N]", "lambda_min", false, {}};
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        auto [it, inserted] = index.emplace(t.rows[r][label], panel.series.size());
        if (inserted)
            panel.series.push_back({t.rows[r][label], {}, {}});
        panel.series[it->second].x.push_back(t.number(r, P));
        panel.series[it->second].y.push_back(t.number(r, lam));
    }
    return {panel};
}

std::vector<Panel> case_b_chart(const CsvTable& t)
{
    const auto group = t.column("group");
    const auto id = t.column("config_id");
    const auto area = t.column("area_m2");
    const auto norm = t.column("lambda_min_normalized");
    std::vector<Panel> panels;
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        auto [it, inserted] = index.emplace(t.rows[r][group], panels.size());
        if (inserted)
            panels.push_back({"Group " + t.rows[r][group], "configuration", "index", false,
                              {{"area [m^2]", {}, {}}, {"lambda_min (normalized)", {}, {}}}});
        Panel& p = panels[it->second];
        p.series[0].x.push_back(t.number(r, id));
        p.series[0].y.push_back(t.number(r, area));
        p.series[1].x.push_back(t.number(r, id));
        p.series[1].y.push_back(t.number(r, norm));
    }
    return panels;
}

} // namespace gstk::harness
