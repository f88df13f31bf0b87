#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gstk/contact_sensing.hpp"
#include "gstk/error.hpp"
#include "gstk/harness/config.hpp"
#include "gstk/harness/csv.hpp"
#include "gstk/harness/runs.hpp"
#include "gstk/harness/svg.hpp"
#include "oracles.hpp"

using namespace gstk;
using namespace gstk::harness;

namespace {

constexpr double kPi = std::numbers::pi;

int parse_error_line(const std::string& text)
{
    try {
        RunConfig::from_file(KeyValueFile::parse(text, "cfg"));
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

int grasp_error_line(const std::string& text)
{
    try {
        GraspFile::from_file(KeyValueFile::parse(text, "grasp"));
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

std::filesystem::path scratch_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("gstk_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

grasp::GraspConfiguration circle_grasp(const std::array<double, 3>& angles)
{
    RunConfig cfg;
    return grasp::three_finger_sphere_config(sphere_grasp_spec(cfg, cfg.object_radius, 5.0, angles));
}

} // namespace

TEST_CASE("number formatting")
{
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(-40.0) == "-40");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("config defaults and overrides")
{
    const RunConfig def;
    CHECK(def.fingertip_radius_mm == 10.0);
    CHECK(def.contact_distance_mm == 40.0);
    CHECK(def.spring_model == grasp::SpringVariant::Extended);
    CHECK(def.object_radius.is_flat());

    const auto cfg = RunConfig::from_file(KeyValueFile::parse(
        "# comment\n"
        "grasp.force_n = 2.5   # trailing\n"
        "object.signed_radius_mm = -40\n"
        "object.material = polyethylene\n"
        "grasp.spring_model = literal\n"
        "seed = 18446744073709551615\n",
        "cfg"));
    CHECK(cfg.force_n == 2.5);
    CHECK(cfg.object_radius.meters_value() == doctest::Approx(-0.040));
    CHECK(cfg.object().name == "polyethylene");
    CHECK(cfg.spring_model == grasp::SpringVariant::Literal);
    CHECK(cfg.seed == 18446744073709551615ull);
}

TEST_CASE("config errors carry line numbers")
{
    CHECK(parse_error_line("seed = 1\nnot a pair\n") == 2);
    CHECK(parse_error_line("seed = 1\n = 3\n") == 2);
    CHECK(parse_error_line("\n\nseed =\n") == 3);
    CHECK(parse_error_line("seed = 1\nseed = 2\n") == 2);
    CHECK(parse_error_line("grasp.force_n = 5\nbogus.key = 1\n") == 2);
    CHECK(parse_error_line("grasp.force_n = five\n") == 1);
    CHECK(parse_error_line("\nsweep.steps = 2.5\n") == 2);
    CHECK(parse_error_line("object.signed_radius_mm = 0\n") == 1);
    CHECK(parse_error_line("seed = -1\n") == 1);
    CHECK(parse_error_line("grasp.spring_model = full\n") == 1);
    CHECK_THROWS_AS(RunConfig::from_file(KeyValueFile::parse("sweep.steps = 1\n", "cfg")), Error);
    CHECK_THROWS_AS(RunConfig::from_file(KeyValueFile::parse("object.material = steel\n", "cfg")), Error);
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/gstk.cfg"), IoError);
}

TEST_CASE("grasp files")
{
    const auto g = GraspFile::from_file(KeyValueFile::parse("contact.2.angle_deg = 210\n"
                                                            "contact.1.angle_deg = 90\n"
                                                            "contact.1.force_n = 5\n"
                                                            "contact.2.force_n = 4\n"
                                                            "contact.3.angle_deg = 330\n"
                                                            "contact.3.force_n = 5\n",
                                                            "grasp"));
    REQUIRE(g.grasp.contacts.size() == 3);
    CHECK(g.ids == std::vector<int>{1, 2, 3});
    CHECK(g.grasp.contacts[1].load == 4.0);
    CHECK((g.grasp.contacts[0].frame.R - screw::rot_y(kPi / 2)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(evaluate_stability(g).exit_code == 0);

    const auto single = GraspFile::from_file(KeyValueFile::parse("contact.1.angle_deg = 0\ncontact.1.force_n = 1\n", "g"));
    CHECK(evaluate_stability(single).exit_code == 2);

    CHECK(grasp_error_line("seed = 4\n") == 0);
    CHECK(grasp_error_line("contact.1.angle_deg = 90\ncontact.1.force = 5\n") == 2);
    CHECK(grasp_error_line("contact.x.angle_deg = 90\n") == 1);
    CHECK(grasp_error_line("contact.1.angle_deg = 90\n") == 1);
    CHECK(grasp_error_line("contact.1.force_n = 5\n") == 1);
    CHECK(grasp_error_line("contact.1.angle_deg = 90\ncontact.1.force_n = -5\n") == 2);
}

TEST_CASE("grasp area index")
{
    const double side = 0.04 * std::sqrt(3.0);
    CHECK(grasp_area_index(circle_grasp(grasp::symmetric_angles())) ==
          doctest::Approx(std::sqrt(3.0) / 4.0 * side * side).epsilon(1e-12));
    CHECK(grasp_area_index(circle_grasp(grasp::symmetric_angles())) == doctest::Approx(2.078e-3).epsilon(1e-3));

    // Three collinear points.
    grasp::GraspConfiguration line = circle_grasp(grasp::symmetric_angles());
    for (int i = 0; i < 3; ++i)
        line.contacts[i].frame.p = Vector3(0.01 * i, 0, 0);
    CHECK(grasp_area_index(line) == 0.0);

    line.contacts.pop_back();
    CHECK_THROWS_AS(grasp_area_index(line), DomainError);

    // Grid search over inscribed triangles.
    const double best = grasp_area_index(circle_grasp(grasp::symmetric_angles()));
    double grid_max = 0.0;
    for (int i = 0; i < 72; ++i)
        for (int j = i + 3; j < 72; ++j)
            for (int k = j + 3; k < 72; ++k) {
                if (72 - k + i < 3)
                    continue;
                const double a = grasp_area_index(circle_grasp({i * kPi / 36, j * kPi / 36, k * kPi / 36}));
                grid_max = std::max(grid_max, a);
            }
    CHECK(grid_max <= best * (1 + 1e-12));
    CHECK(grid_max >= best * (1 - 1e-12)); // the grid contains 90/210/330
}

TEST_CASE("spearman correlation")
{
    const std::vector<double> a{1, 2, 3, 4, 5};
    const std::vector<double> b{10, 20, 30, 40, 50};
    const std::vector<double> c{5, 4, 3, 2, 1};
    CHECK(spearman(a, b) == doctest::Approx(1.0));
    CHECK(spearman(a, c) == doctest::Approx(-1.0));
    CHECK(spearman(a, std::vector<double>(5, 2.0)) == 0.0);
    // Ties take average ranks: ranks (1.5, 1.5, 3) vs (1, 2, 3).
    CHECK(spearman(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 3}) == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK_THROWS_AS(spearman(a, std::vector<double>{1, 2}), DomainError);
}

TEST_CASE("angle sampler")
{
    AngleSampler s1(5), s2(5);
    for (int i = 0; i < 100; ++i) {
        const double u = s1.uniform();
        CHECK(u == s2.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    AngleSampler s(9);
    const double sep = 10.0 * kPi / 180.0;
    for (int i = 0; i < 200; ++i) {
        const auto t = s.sample_triple(sep);
        CHECK(grasp::circular_separation(t[0], t[1]) >= sep);
        CHECK(grasp::circular_separation(t[1], t[2]) >= sep);
        CHECK(grasp::circular_separation(t[0], t[2]) >= sep);
    }
    // Three points cannot be pairwise 121° apart.
    CHECK_THROWS_AS(s.sample_triple(121.0 * kPi / 180.0), Error);
}

TEST_CASE("coefficient sweep table")
{
    RunConfig cfg;
    cfg.steps = 5;
    const CsvTable t = coeff_sweep_table(cfg);
    CHECK(t.to_string().rfind(kCoeffsHeader + "\n", 0) == 0);
    CHECK(t.rows.size() == 3 * 5 * 5);
    const auto P = t.column("P_N");
    CHECK(t.rows.front()[P] == "0.01");
    CHECK(t.rows[4][P] == "1");
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (std::size_t c = 2; c < t.header.size(); ++c)
            CHECK(std::isfinite(t.number(r, c)));
}

TEST_CASE("case A table")
{
    const CsvTable t = case_a_table(RunConfig{});
    REQUIRE(t.rows.size() == 303);
    const auto lam = t.column("lambda_min");
    CHECK(t.rows[0][0] == "convex");
    CHECK(t.rows[0][1] == "40");
    CHECK(t.rows[101][1] == "inf");
    CHECK(t.rows[202][1] == "-40");
    for (int g = 0; g < 3; ++g) {
        CHECK(t.number(101 * g, lam) == 0.0);
        for (int i = 2; i <= 100; ++i)
            CHECK(t.number(101 * g + i, lam) > t.number(101 * g + i - 1, lam));
    }
    for (int i = 1; i <= 100; ++i) {
        CHECK(t.number(202 + i, lam) > t.number(101 + i, lam));
        CHECK(t.number(101 + i, lam) > t.number(i, lam));
    }
}

TEST_CASE("case B determinism and anchoring")
{
    RunConfig cfg;
    const CaseBResult r1 = case_b(cfg);
    const CaseBResult r2 = case_b(cfg);
    CHECK(r1.table.to_string() == r2.table.to_string());
    REQUIRE(r1.table.rows.size() == 6 * 31);
    REQUIRE(r1.groups.size() == 6);

    cfg.seed = 77;
    const CaseBResult r3 = case_b(cfg);
    CHECK(r3.table.to_string() != r1.table.to_string());
    for (int g = 0; g < 6; ++g)
        CHECK(r1.table.rows[31 * g] == r3.table.rows[31 * g]);

    const auto area = r1.table.column("area_m2");
    const auto norm = r1.table.column("lambda_min_normalized");
    for (int g = 0; g < 6; ++g) {
        CHECK(r1.table.rows[31 * g][area] == r1.table.rows[31 * g][norm]);
        CHECK(r1.groups[g].symmetric_is_area_max);
        CHECK(r1.groups[g].symmetric_is_lambda_max);
        CHECK(r1.groups[g].spearman > 0.0);
    }

    RunConfig literal;
    literal.spring_model = grasp::SpringVariant::Literal;
    CHECK_THROWS_AS(case_b(literal), DomainError);
}

TEST_CASE("case B files are byte identical across runs")
{
    RunConfig cfg;
    cfg.output_dir = scratch_dir("caseb_a");
    const auto p1 = run_case_b(cfg, true);
    cfg.output_dir = scratch_dir("caseb_b");
    const auto p2 = run_case_b(cfg, true);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1.parent_path() / "case_b.svg") == slurp(p2.parent_path() / "case_b.svg"));
    CHECK(std::filesystem::exists(p1.parent_path() / "case_b_summary.csv"));
}

TEST_CASE("wrench log sensing")
{
    const auto sphere = sensing::FingertipSurface::sphere(0.01);
    const auto pole = sense_table("t,fx,fy,fz,mx,my,mz\n# comment\n\n0.5,0,0,-1,0,0,0\n1,0,0,0,0,0,0\n", "log", sphere);
    REQUIRE(pole.rows.size() == 2);
    CHECK(pole.header.size() == 14);
    CHECK(pole.rows[0][pole.column("status")] == "ok");
    CHECK(pole.number(0, pole.column("cz_m")) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(pole.number(0, pole.column("gamma_rad")) == 0.0);
    CHECK(pole.rows[1][pole.column("status")] == "no_contact");
    CHECK(pole.rows[1][pole.column("cx_m")].empty());

    // Round trip through the text log.
    oracle::Rng rng(21);
    const sensing::FingertipSurface ell{1.5, 1.0, 2.0, 0.01};
    std::ostringstream log;
    std::vector<Vector3> truth;
    std::vector<double> spins;
    for (int i = 0; i < 40; ++i) {
        const Vector3 c = ell.point_along(rng.unit_vector());
        const Vector3 n = sensing::surface_normal(ell, c);
        Vector3 t = rng.unit_vector();
        t = (t - t.dot(n) * n).normalized();
        const Vector3 f = -2.0 * n + rng.uniform(0, 1) * t;
        const double sigma = rng.uniform(-0.01, 0.01);
        const auto w = sensing::synthesize_wrench(ell, c, f, sigma);
        log << format_number(0.01 * i);
        for (int k = 0; k < 3; ++k)
            log << ',' << format_number(w.f(k));
        for (int k = 0; k < 3; ++k)
            log << ',' << format_number(w.m(k));
        log << '\n';
        truth.push_back(c);
        spins.push_back(sigma);
    }
    const CsvTable t = sense_table(log.str(), "log", ell);
    REQUIRE(t.rows.size() == truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const Vector3 c(t.number(i, 1), t.number(i, 2), t.number(i, 3));
        CHECK((c - truth[i]).norm() <= 1e-8);
        CHECK(std::abs(t.number(i, t.column("sigma_Nm")) - spins[i]) <= 1e-10);
    }

    auto bad_line = [&](const std::string& text) {
        try {
            sense_table(text, "log", sphere);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(bad_line("0,0,0,-1,0,0,0\n1,0,0,-1,0,0\n") == 2);
    CHECK(bad_line("# c\n0,0,0,-1,0,0,x\n") == 2);
    CHECK(bad_line("0,0,0,-1,0,0,0\nt,fx,fy,fz,mx,my,mz\n") == 2);
    CHECK(bad_line("0,0,0,-1,0,0,nan\n") == 1);
}

TEST_CASE("charts render from CSV content only")
{
    const CsvTable a = case_a_table(RunConfig{});
    const std::string svg = render_svg(case_a_chart(a));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("concave") != std::string::npos);
    CHECK(render_svg(case_a_chart(CsvTable::parse(a.to_string(), "x"))) == svg);
}
