#pragma once

// Minimal SVG line charts.  Chart builders take the CSV tables the runs
// emit, so a chart never shows anything the CSV does not contain.

#include <string>
#include <vector>

#include "gstk/harness/csv.hpp"

namespace gstk::harness {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<Series> series;
};

std::string render_svg(const std::vector<Panel>& panels, int columns = 1);

std::vector<Panel> coeffs_chart(const CsvTable& coeffs);
std::vector<Panel> case_a_chart(const CsvTable& case_a);
std::vector<Panel> case_b_chart(const CsvTable& case_b);

} // namespace gstk::harness
