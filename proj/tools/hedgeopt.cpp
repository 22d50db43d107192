// hedgeopt command line: solve | run | plot

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hedgeopt/hedgeopt.hpp"

namespace {

int cmd_solve(const std::string& input, bool as_json) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open '" + input + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const hedgeopt::SymMatrix c = hedgeopt::matrix_from_json_text(buf.str(), input);
    const hedgeopt::GammaSolution sol = hedgeopt::solve_gamma_matrix(c);
    if (as_json)
        std::cout << hedgeopt::solution_json(sol).dump(2) << '\n';
    else
        std::cout << hedgeopt::format_solution(sol);
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& preset, const std::string& out_dir, int workers) {
    hedgeopt::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = hedgeopt::config_from_json(hedgeopt::read_json_file(config_path));
    if (!preset.empty()) hedgeopt::apply_preset(cfg, hedgeopt::parse_preset(preset));
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.validate();
    const int n_workers = hedgeopt::resolve_workers(workers);

    std::fprintf(stderr, "running %d paths, n_bar = %d, epsilon = %g, mu = %g, workers = %d\n", cfg.n_paths, cfg.n_bar,
                 cfg.epsilon, cfg.mu, n_workers);
    const auto t0 = std::chrono::steady_clock::now();
    const hedgeopt::ExperimentResult res = hedgeopt::run_experiment(cfg, n_workers);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!res.rows.empty()) hedgeopt::write_experiment(res, cfg.output_dir);
    std::cout << hedgeopt::summary_json(res).dump(2) << '\n';
    std::fprintf(stderr, "done in %.1f s; results in %s\n", secs, cfg.output_dir.c_str());
    if (res.failed()) {
        std::fprintf(stderr, "error: %zu of %d paths failed (limit 1%%); see errors.csv\n", res.failures.size(), cfg.n_paths);
        return 1;
    }
    return 0;
}

int cmd_plot(const std::string& csv, const std::string& x, const std::vector<std::string>& ys, const std::string& out) {
    hedgeopt::write_svg_scatter(hedgeopt::read_csv(csv), x, ys, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal discrete hedging along random ellipsoid hitting times"};
    app.require_subcommand(1);

    std::string solve_input;
    bool solve_json = false;
    auto* solve = app.add_subcommand("solve", "Solve 2 tr(x) x + 4 x^2 = c^2 for a symmetric matrix c (JSON)");
    solve->add_option("--input", solve_input, "JSON file holding c as an array of rows")->required();
    solve->add_flag("--json", solve_json, "Print the solution as JSON");

    std::string config_path, preset, out_dir;
    int workers = 0;
    auto* run = app.add_subcommand("run", "Run the hedging experiment and write rows.csv, errors.csv, summary.json");
    run->add_option("--config", config_path, "Experiment configuration (JSON)")->required();
    run->add_option("--preset", preset, "paper (n_bar 50000, 1000 paths) or desk (n_bar 20000, 200 paths)")
        ->check(CLI::IsMember({"paper", "desk"}));
    run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    run->add_option("--workers", workers, "Worker threads (default: HEDGEOPT_WORKERS or hardware concurrency)");

    std::string csv, x_field, plot_out;
    std::vector<std::string> y_fields;
    auto* plot = app.add_subcommand("plot", "Scatter plot of rows.csv columns as SVG");
    plot->add_option("--csv", csv, "rows.csv file")->required();
    plot->add_option("--x", x_field, "Column for the x axis")->required();
    plot->add_option("--y", y_fields, "Column(s) for the y axis")->required()->delimiter(',');
    plot->add_option("--out", plot_out, "Output SVG file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(solve_input, solve_json);
        if (*run) return cmd_run(config_path, preset, out_dir, workers);
        if (*plot) return cmd_plot(csv, x_field, y_fields, plot_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
