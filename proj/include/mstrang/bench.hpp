#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mstrang/splitting.hpp"

namespace mstrang {

enum class BenchCase { Case1, Case2, Custom };

struct BenchConfig {
    BenchCase bench_case = BenchCase::Case1;
    double b1 = 1.0;
    double b2 = 3.0;
    std::size_t K = 199;
    double T = 0.1;
    std::vector<double> dt_list = {0.1,    0.05,      0.025,      0.0125,
                                   0.00625, 0.003125, 0.0015625, 0.00078125};
    double dt_ref = 5e-6;
    std::vector<Scheme> schemes = {Scheme::NaiveStrang, Scheme::ModifiedStrang};
    Ordering ordering = Ordering::LinearOutside;
    MatfunConfig matfun{};
    std::string output = "results";
};

/// Bad configuration value; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view to_string(BenchCase c);
std::string_view to_string(Scheme s);
std::string_view to_string(Ordering o);
BenchCase parse_case(std::string_view text);
Scheme parse_scheme(std::string_view text);
Ordering parse_ordering(std::string_view text);

/// Checks that every dt divides T and dt_ref <= min(dt_list) / 100.
void validate(const BenchConfig& cfg);

/// Applies the keys of a flat JSON object on top of `base`.
BenchConfig apply_config_json(std::string_view json_text, BenchConfig base = {});
BenchConfig load_config_file(const std::string& path, BenchConfig base = {});

ProblemSpec make_problem(const BenchConfig& cfg);

/// Classical RK4 on the unsplit semi-discrete system from t = 0 to T.
Vector run_reference(const ProblemSpec& spec, double dt_ref);

double linf_error(const Vector& u, const Vector& v);

struct ErrorRow {
    Scheme scheme = Scheme::ModifiedStrang;
    double dt = 0.0;
    std::optional<double> linf_error;  // empty when the run blew up
    std::optional<double> observed_order;
};

struct ErrorTable {
    std::vector<ErrorRow> rows;

    std::vector<ErrorRow> rows_for(Scheme s) const;
};

/// log2(e[i-1] / e[i]) between consecutive rows of one scheme whose step
/// sizes halve; other rows are left empty.
void fill_observed_orders(ErrorTable& table);

ErrorTable convergence_study(const BenchConfig& cfg);
ErrorTable convergence_study(const BenchConfig& cfg, const ProblemSpec& spec,
                             const Vector& reference);

/// Least-squares slope of log(error) against log(dt).
double fit_order(const std::vector<double>& dts, const std::vector<double>& errors);

/// Per-scheme slope over the last `tail` successful rows.
std::map<Scheme, double> estimate_order(const ErrorTable& table, std::size_t tail);

std::string to_csv(const ErrorTable& table);
ErrorTable parse_csv(std::string_view text);

std::string format_report(const ErrorTable& table, const BenchConfig& cfg,
                          std::size_t tail = 5);

/// Command-line entry point of the benchmark tool.
int cli_main(int argc, const char* const* argv);

}  // namespace mstrang
