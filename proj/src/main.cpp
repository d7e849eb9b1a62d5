#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "trunksim/svg_plot.hpp"
#include "trunksim/sweep.hpp"
#include "trunksim/validate.hpp"

namespace {

using namespace trunksim;

struct cli_options {
    std::string config_path;
    std::string lambda_text;
    std::string r_text = "10";
    std::string k_text = "1";
    std::string mode_text = "trunked";
    std::string out_path = "-";
    std::uint64_t iters = 100000;
    std::uint64_t seed = 42;
    int workers = 0; // 0 = hardware concurrency
    bool approx = false;
    double tolerance = 0.05;
    std::string metric;
    std::string in_path;
};

void add_common_flags(CLI::App* cmd, cli_options& opt, bool lambda_required) {
    cmd->add_option("--config", opt.config_path, "key=value parameter file (defaults built in)");
    auto* lam = cmd->add_option("--lambda", opt.lambda_text,
                                "arrival-rate grid: start:stop:step or comma list");
    if (lambda_required) lam->required();
    cmd->add_option("--R", opt.r_text, "mini-slot counts, comma list");
    cmd->add_option("--K", opt.k_text, "trunking slot counts, comma list");
    cmd->add_option("--mode", opt.mode_text, "trunked|baseline|both");
    cmd->add_option("--out", opt.out_path, "output path, '-' for stdout");
}

void add_sim_flags(CLI::App* cmd, cli_options& opt) {
    cmd->add_option("--iters", opt.iters, "Monte Carlo frames per grid point");
    cmd->add_option("--seed", opt.seed, "master RNG seed");
    cmd->add_option("--workers", opt.workers, "worker threads (0 = hardware)");
    cmd->add_flag("--approx,!--exact", opt.approx,
                  "use the binomial occupancy approximation in analytic companions");
}

raw_config load_config(const cli_options& opt) {
    if (opt.config_path.empty()) return raw_config{};
    return parse_config_file(opt.config_path);
}

sweep_spec build_spec(const cli_options& opt) {
    sweep_spec spec;
    spec.lambda_grid = parse_lambda_grid(opt.lambda_text);
    spec.R_list = parse_int_list(opt.r_text);
    spec.K_list = parse_int_list(opt.k_text);
    spec.modes = parse_modes(opt.mode_text);
    spec.iters = opt.iters;
    spec.seed = opt.seed;
    spec.workers = opt.workers > 0
                       ? opt.workers
                       : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    spec.exact = !opt.approx;
    return spec;
}

int write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 2;
    }
    out << content;
    return out ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"framed slotted ALOHA reservation + D2D aggregation + trunked uplink:\n"
                 "closed-form metrics and frame-level Monte Carlo simulation"};
    app.require_subcommand(1);
    cli_options opt;

    auto* analytic = app.add_subcommand("analytic", "closed-form metric sweep to CSV");
    add_common_flags(analytic, opt, true);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo sweep to CSV");
    add_common_flags(simulate, opt, true);
    add_sim_flags(simulate, opt);

    auto* validate = app.add_subcommand("validate", "analysis-vs-simulation gate");
    add_common_flags(validate, opt, false);
    add_sim_flags(validate, opt);
    validate->add_option("--tolerance", opt.tolerance, "relative tolerance (default 0.05)");

    auto* plot = app.add_subcommand("plot", "render a metric column of a CSV as SVG");
    plot->add_option("--in", opt.in_path, "input CSV path")->required();
    plot->add_option("--metric", opt.metric, "metric column to plot")->required();
    plot->add_option("--out", opt.out_path, "output SVG path, '-' for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analytic->parsed()) {
            sweep_spec spec = build_spec(opt);
            return write_output(opt.out_path, to_csv(analytic_sweep(load_config(opt), spec)));
        }
        if (simulate->parsed()) {
            sweep_spec spec = build_spec(opt);
            if (spec.iters == 1)
                std::cerr << "note: iters=1, confidence intervals unavailable\n";
            return write_output(opt.out_path, to_csv(simulate_sweep(load_config(opt), spec)));
        }
        if (validate->parsed()) {
            sweep_spec spec;
            if (opt.lambda_text.empty()) {
                spec = default_validate_spec();
                spec.iters = opt.iters;
                spec.seed = opt.seed;
                if (opt.workers > 0) spec.workers = opt.workers;
                spec.exact = !opt.approx;
            } else {
                spec = build_spec(opt);
            }
            validate_result res = run_validate(load_config(opt), spec, opt.tolerance);
            int rc = write_output(opt.out_path, res.report);
            if (rc != 0) return 2;
            return res.all_pass ? 0 : 1;
        }
        if (plot->parsed()) {
            std::ifstream in(opt.in_path, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot open input file: " << opt.in_path << "\n";
                return 2;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            return write_output(opt.out_path, plot_csv_to_svg(buf.str(), opt.metric));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
