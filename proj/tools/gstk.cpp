// gstk: command-line front end for the stiffness toolkit.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gstk/error.hpp"
#include "gstk/harness/config.hpp"
#include "gstk/harness/runs.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool svg = false;
    std::string out_dir;
    std::string input;
};

void add_common(CLI::App* sub, CommonArgs& args)
{
    sub->add_option("--config", args.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", args.seed, "64-bit seed for random sampling");
    sub->add_flag("--svg", args.svg, "also render an SVG chart from the CSV");
    sub->add_option("--out", args.out_dir, "output directory");
}

gstk::harness::RunConfig resolve(const CommonArgs& args, const gstk::harness::RunConfig& base)
{
    gstk::harness::RunConfig cfg = base;
    if (args.seed)
        cfg.seed = *args.seed;
    if (!args.out_dir.empty())
        cfg.output_dir = args.out_dir;
    cfg.validate();
    for (const auto& w : cfg.warnings())
        std::cerr << "warning: " << w << '\n';
    return cfg;
}

gstk::harness::RunConfig load_base(const CommonArgs& args)
{
    if (args.config_path.empty())
        return {};
    return gstk::harness::RunConfig::load(args.config_path);
}

} // namespace

int main(int argc, char** argv)
{
    using namespace gstk::harness;

    CLI::App app{"Soft-finger contact stiffness and grasp stability toolkit"};
    app.require_subcommand(1);
    CommonArgs args;

    auto* coeffs = app.add_subcommand("coeffs", "stiffness coefficient sweep -> coeffs.csv");
    auto* case_a = app.add_subcommand("case-a", "lambda_min vs contact force -> case_a.csv");
    auto* case_b = app.add_subcommand("case-b", "random grasp configurations -> case_b.csv");
    auto* stability = app.add_subcommand("stability", "classify a grasp file");
    auto* sense = app.add_subcommand("sense", "contact sensing over a wrench log -> contacts.csv");
    for (auto* sub : {coeffs, case_a, case_b, stability, sense})
        add_common(sub, args);
    stability->add_option("grasp", args.input, "grasp file")->required()->check(CLI::ExistingFile);
    sense->add_option("log", args.input, "wrench log: t,fx,fy,fz,mx,my,mz per line")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (stability->parsed()) {
            GraspFile file = GraspFile::load(args.input);
            file.config = resolve(args, file.config);
            const auto outcome = evaluate_stability(file);
            std::cout << stability_report_text(file, outcome);
            return outcome.exit_code;
        }

        const RunConfig cfg = resolve(args, load_base(args));
        std::filesystem::path written;
        if (coeffs->parsed()) {
            written = run_coeff_sweep(cfg, args.svg);
        } else if (case_a->parsed()) {
            written = run_case_a(cfg, args.svg);
        } else if (case_b->parsed()) {
            CaseBResult result;
            written = run_case_b(cfg, args.svg, &result);
            std::cout << case_b_summary_text(result);
        } else if (sense->parsed()) {
            if (args.svg)
                std::cerr << "warning: --svg has no chart for sense output\n";
            written = run_sense(cfg, args.input);
        }
        std::cout << "wrote " << written.string() << '\n';
        return 0;
    } catch (const gstk::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const gstk::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
