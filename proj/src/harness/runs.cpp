#include "gstk/harness/runs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gstk/contact_sensing.hpp"
#include "gstk/error.hpp"
#include "gstk/harness/svg.hpp"

namespace gstk::harness {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> average_ranks(std::span<const double> v)
{
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]])
            ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

std::filesystem::path prepare_output(const RunConfig& config, const std::string& name)
{
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + config.output_dir.string() + "': " + ec.message());
    return config.output_dir / name;
}

void write_chart(const std::filesystem::path& csv_path, std::vector<Panel> (*builder)(const CsvTable&),
                 int columns)
{
    const CsvTable table = CsvTable::read(csv_path);
    std::filesystem::path svg_path = csv_path;
    svg_path.replace_extension(".svg");
    write_text_file(svg_path, render_svg(builder(table), columns));
}

std::string radius_label_mm(hertz::SignedRadius r)
{
    return format_number(r.meters_value() * 1e3);
}

bool parse_number(const std::string& s, double& out)
{
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first != last && (*first == ' ' || *first == '\t'))
        ++first;
    while (last != first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r'))
        --last;
    if (first != last && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last && std::isfinite(out);
}

} // namespace

double grasp_area_index(const grasp::GraspConfiguration& config)
{
    if (config.contacts.size() != 3)
        throw DomainError("grasp_area_index needs exactly three contacts");
    const Vector3 p1 = config.contacts[0].placement().p;
    const Vector3 p2 = config.contacts[1].placement().p;
    const Vector3 p3 = config.contacts[2].placement().p;
    return 0.5 * (p2 - p1).cross(p3 - p1).norm();
}

double spearman(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw DomainError("spearman: series lengths differ");
    if (a.size() < 2)
        return 0.0;
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - mean) * (rb[i] - mean);
        saa += (ra[i] - mean) * (ra[i] - mean);
        sbb += (rb[i] - mean) * (rb[i] - mean);
    }
    if (saa == 0.0 || sbb == 0.0)
        return 0.0;
    return sab / std::sqrt(saa * sbb);
}

double AngleSampler::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::array<double, 3> AngleSampler::sample_triple(double min_separation)
{
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::array<double, 3> a{};
        for (double& x : a)
            x = 2.0 * kPi * uniform();
        if (grasp::circular_separation(a[0], a[1]) >= min_separation &&
            grasp::circular_separation(a[0], a[2]) >= min_separation &&
            grasp::circular_separation(a[1], a[2]) >= min_separation)
            return a;
    }
    throw Error("angle sampling exhausted: 1000 consecutive rejections");
}

grasp::SphereGraspSpec sphere_grasp_spec(const RunConfig& config, hertz::SignedRadius object_radius,
                                         double load, const std::array<double, 3>& angles)
{
    grasp::SphereGraspSpec spec;
    spec.object_radius = object_radius;
    spec.contact_distance = config.contact_distance_mm * 1e-3;
    spec.angles = angles;
    spec.load = load;
    spec.fingertip_radius = config.fingertip_radius_mm * 1e-3;
    spec.fingertip_material = config.fingertip();
    spec.object_material = config.object();
    spec.min_separation = config.min_separation_deg * kPi / 180.0;
    return spec;
}

std::vector<double> sweep_radii_mm()
{
    return {-40.0, -20.0, 20.0, 40.0, std::numeric_limits<double>::infinity()};
}

CsvTable coeff_sweep_table(const RunConfig& config)
{
    config.validate();
    CsvTable t = CsvTable::parse(kCoeffsHeader + "\n", "coeffs");
    for (const auto& material : hertz::material_registry()) {
        for (double r_mm : sweep_radii_mm()) {
            const auto radius = hertz::SignedRadius::meters(r_mm * 1e-3);
            const hertz::ContactPair pair(config.fingertip_radius_mm * 1e-3, radius, config.fingertip(),
                                          material);
            for (int i = 0; i < config.steps; ++i) {
                const double P = config.force_min_n +
                                 (config.force_max_n - config.force_min_n) * i / (config.steps - 1);
                const auto k = hertz::stiffness_coefficients(pair, P);
                t.rows.push_back({material.name, radius_label_mm(radius), format_number(P),
                                  format_number(k.k_n), format_number(k.k_t), format_number(k.k_tau)});
            }
        }
    }
    return t;
}

CsvTable case_a_table(const RunConfig& config)
{
    config.validate();
    CsvTable t = CsvTable::parse(kCaseAHeader + "\n", "case_a");
    const std::array<std::pair<const char*, hertz::SignedRadius>, 3> curvatures = {{
        {"convex", hertz::SignedRadius::meters(0.040)},
        {"flat", hertz::SignedRadius::flat()},
        {"concave", hertz::SignedRadius::meters(-0.040)},
    }};
    for (const auto& [label, radius] : curvatures) {
        for (int i = 0; i <= 100; ++i) {
            const double P = 10.0 * i / 100.0;
            const auto spec = sphere_grasp_spec(config, radius, P, grasp::symmetric_angles());
            const double lam =
                grasp::min_eigenvalue(grasp::assemble(grasp::three_finger_sphere_config(spec), config.spring_model));
            t.rows.push_back({label, radius_label_mm(radius), format_number(P), format_number(lam)});
        }
    }
    return t;
}

CaseBResult case_b(const RunConfig& config)
{
    config.validate();
    CaseBResult result;
    result.table = CsvTable::parse(kCaseBHeader + "\n", "case_b");
    AngleSampler sampler(config.seed);
    const double min_sep = config.min_separation_deg * kPi / 180.0;

    for (int g = 1; g <= config.case_b_groups; ++g) {
        std::vector<std::array<double, 3>> angles;
        angles.push_back(grasp::symmetric_angles());
        for (int k = 1; k < config.case_b_configs; ++k)
            angles.push_back(sampler.sample_triple(min_sep));

        std::vector<double> area, lambda;
        for (const auto& a : angles) {
            const auto spec = sphere_grasp_spec(config, config.object_radius, config.force_n, a);
            const auto grasp_cfg = grasp::three_finger_sphere_config(spec);
            area.push_back(grasp_area_index(grasp_cfg));
            lambda.push_back(grasp::min_eigenvalue(grasp::assemble(grasp_cfg, config.spring_model)));
        }
        if (!(lambda.front() > 0.0))
            throw DomainError("case-b: symmetric grasp has lambda_min <= 0; cannot normalize "
                              "(the literal spring model is singular for planar grasps)");
        const double scale = area.front() / lambda.front();

        for (std::size_t k = 0; k < angles.size(); ++k) {
            const double norm = k == 0 ? area.front() : lambda[k] * scale;
            result.table.rows.push_back({std::to_string(g), std::to_string(k + 1),
                                         format_number(angles[k][0] * 180.0 / kPi),
                                         format_number(angles[k][1] * 180.0 / kPi),
                                         format_number(angles[k][2] * 180.0 / kPi), format_number(area[k]),
                                         format_number(lambda[k]), format_number(norm)});
        }

        CaseBGroupSummary s;
        s.group = g;
        s.spearman = spearman(area, lambda);
        s.symmetric_is_area_max = std::all_of(area.begin() + 1, area.end(), [&](double v) { return v < area.front(); });
        s.symmetric_is_lambda_max =
            std::all_of(lambda.begin() + 1, lambda.end(), [&](double v) { return v < lambda.front(); });
        result.groups.push_back(s);
    }
    return result;
}

std::string case_b_summary_text(const CaseBResult& result)
{
    std::ostringstream out;
    for (const auto& g : result.groups)
        out << "group " << g.group << ": spearman(area, lambda_min) = " << format_number(g.spearman)
            << ", symmetric is area max: " << (g.symmetric_is_area_max ? "yes" : "no")
            << ", symmetric is lambda_min max: " << (g.symmetric_is_lambda_max ? "yes" : "no") << '\n';
    return out.str();
}

CsvTable case_b_summary_table(const CaseBResult& result)
{
    CsvTable t;
    t.header = {"group", "spearman", "symmetric_is_area_max", "symmetric_is_lambda_max"};
    for (const auto& g : result.groups)
        t.rows.push_back({std::to_string(g.group), format_number(g.spearman),
                          g.symmetric_is_area_max ? "1" : "0", g.symmetric_is_lambda_max ? "1" : "0"});
    return t;
}

StabilityOutcome evaluate_stability(const GraspFile& file)
{
    StabilityOutcome out;
    const Matrix6 K = grasp::assemble(file.grasp, file.config.spring_model);
    out.report = grasp::classify(K, file.config.stability_tol);
    switch (out.report.classification) {
    case grasp::Stability::Stable:
        out.exit_code = 0;
        break;
    case grasp::Stability::Marginal:
        out.exit_code = 2;
        break;
    case grasp::Stability::Unstable:
        out.exit_code = 3;
        break;
    }
    return out;
}

std::string stability_report_text(const GraspFile& file, const StabilityOutcome& outcome)
{
    std::ostringstream out;
    out << "contacts: " << file.grasp.contacts.size() << " (spring model "
        << grasp::to_string(file.config.spring_model) << ")\n";
    out << "eigenvalues:";
    for (double e : outcome.report.eigenvalues)
        out << ' ' << format_number(e);
    out << "\nlambda_min: " << format_number(outcome.report.lambda_min) << '\n';
    out << "classification: " << grasp::to_string(outcome.report.classification) << '\n';
    return out.str();
}

CsvTable sense_table(const std::string& log_text, const std::string& source,
                     const sensing::FingertipSurface& surface)
{
    CsvTable t = CsvTable::parse(kContactsHeader + "\n", "contacts");
    std::istringstream in(log_text);
    std::string line;
    int n = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;

        std::vector<std::string> fields;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            fields.push_back(cell);
        if (line.back() == ',')
            fields.emplace_back();

        std::array<double, 7> v{};
        bool numeric = fields.size() == 7;
        for (std::size_t i = 0; numeric && i < 7; ++i)
            numeric = parse_number(fields[i], v[i]);
        if (!numeric) {
            if (!seen_data && !fields.empty() && fields[0].find('t') != std::string::npos) {
                seen_data = true;
                continue;
            }
            throw ParseError(source, n, "expected 't,fx,fy,fz,mx,my,mz' with 7 finite numbers");
        }
        seen_data = true;

        const screw::Wrench w{{v[1], v[2], v[3]}, {v[4], v[5], v[6]}};
        std::vector<std::string> row(14);
        row[0] = format_number(v[0]);
        bool ok = false;
        if (w.f.norm() > 1e-9) {
            try {
                const auto est = sensing::solve_contact(surface, w);
                const auto frame = sensing::contact_frame(est);
                const std::array<double, 12> vals = {est.c.x(), est.c.y(), est.c.z(), est.n.x(), est.n.y(),
                                                     est.n.z(), est.f_n.norm(), est.f_t.norm(), est.sigma,
                                                     frame.phi, frame.psi, frame.gamma};
                for (std::size_t i = 0; i < vals.size(); ++i)
                    row[i + 1] = format_number(vals[i]);
                ok = true;
            } catch (const ConvergenceError&) {
            } catch (const InadmissibleContact&) {
            }
        }
        row[13] = ok ? "ok" : "no_contact";
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::filesystem::path run_coeff_sweep(const RunConfig& config, bool svg)
{
    const CsvTable t = coeff_sweep_table(config);
    const auto path = prepare_output(config, "coeffs.csv");
    write_text_file(path, t.to_string());
    if (svg)
        write_chart(path, coeffs_chart, 3);
    return path;
}

std::filesystem::path run_case_a(const RunConfig& config, bool svg)
{
    const CsvTable t = case_a_table(config);
    const auto path = prepare_output(config, "case_a.csv");
    write_text_file(path, t.to_string());
    if (svg)
        write_chart(path, case_a_chart, 1);
    return path;
}

std::filesystem::path run_case_b(const RunConfig& config, bool svg, CaseBResult* result)
{
    CaseBResult r = case_b(config);
    const auto path = prepare_output(config, "case_b.csv");
    write_text_file(path, r.table.to_string());
    write_text_file(config.output_dir / "case_b_summary.csv", case_b_summary_table(r).to_string());
    if (svg)
        write_chart(path, case_b_chart, 2);
    if (result)
        *result = std::move(r);
    return path;
}

std::filesystem::path run_sense(const RunConfig& config, const std::filesystem::path& log)
{
    std::ifstream in(log);
    if (!in)
        throw IoError("cannot open wrench log '" + log.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const CsvTable t = sense_table(ss.str(), log.string(), config.surface);
    const auto path = prepare_output(config, "contacts.csv");
    write_text_file(path, t.to_string());
    return path;
}

} // namespace gstk::harness
