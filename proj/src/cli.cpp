#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mstrang/bench.hpp"

namespace mstrang {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Convergence study of naive and lifted Strang splittings for "
                 "u_t = u_xx + u u_x with Dirichlet data"};

    std::string case_name;
    std::string config_path;
    double b1 = 0.0, b2 = 0.0, final_time = 0.0, dt_ref = 0.0;
    std::size_t grid_k = 0;
    std::vector<double> dt_list;
    std::vector<std::string> schemes;
    std::string ordering;
    std::string out_dir;

    auto* case_opt = app.add_option("--case", case_name, "case1, case2 or custom");
    app.add_option("--config", config_path, "flat JSON config; flags override its values");
    auto* b1_opt = app.add_option("--b1", b1, "left boundary value (case2/custom)");
    auto* b2_opt = app.add_option("--b2", b2, "right boundary value (case2/custom)");
    auto* k_opt = app.add_option("--grid-k", grid_k, "number of interior grid nodes");
    auto* t_opt = app.add_option("--final-time", final_time, "final time T");
    auto* dt_opt = app.add_option("--dt-list", dt_list, "comma-separated step sizes")
                       ->delimiter(',');
    auto* ref_opt = app.add_option("--dt-ref", dt_ref, "RK4 reference step size");
    auto* schemes_opt = app.add_option("--schemes", schemes, "comma-separated: naive,modified")
                            ->delimiter(',');
    auto* ordering_opt =
        app.add_option("--ordering", ordering, "linear-outside or nonlinear-outside");
    auto* out_opt = app.add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    BenchConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
        if (*case_opt) cfg.bench_case = parse_case(case_name);
        if (*b1_opt) cfg.b1 = b1;
        if (*b2_opt) cfg.b2 = b2;
        if (*k_opt) cfg.K = grid_k;
        if (*t_opt) cfg.T = final_time;
        if (*dt_opt) cfg.dt_list = dt_list;
        if (*ref_opt) cfg.dt_ref = dt_ref;
        if (*schemes_opt) {
            cfg.schemes.clear();
            for (const auto& s : schemes) cfg.schemes.push_back(parse_scheme(s));
        }
        if (*ordering_opt) cfg.ordering = parse_ordering(ordering);
        if (*out_opt) cfg.output = out_dir;
        validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    const ProblemSpec spec = make_problem(cfg);
    if (const double mismatch = initial_boundary_mismatch(spec); mismatch > 1e-12) {
        std::cerr << "warning: initial profile misses the boundary data by " << mismatch << "\n";
    }

    ErrorTable table;
    try {
        const Vector reference = run_reference(spec, cfg.dt_ref);
        table = convergence_study(cfg, spec, reference);
    } catch (const BlowUpError& e) {
        std::cerr << "reference solution failed: " << e.what() << "\n";
        return 3;
    }

    const bool any_success = std::any_of(table.rows.begin(), table.rows.end(),
                                         [](const ErrorRow& r) { return r.linf_error.has_value(); });

    const std::string report = format_report(table, cfg);
    try {
        const std::filesystem::path dir(cfg.output);
        std::filesystem::create_directories(dir);
        write_file(dir / (std::string(to_string(cfg.bench_case)) + ".csv"), to_csv(table));
        write_file(dir / "report.txt", report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cout << report;

    if (!any_success) {
        std::cerr << "every run blew up\n";
        return 3;
    }
    return 0;
}

}  // namespace mstrang
