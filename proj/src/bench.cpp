#include "mstrang/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace mstrang {

std::string_view to_string(BenchCase c) {
    switch (c) {
    case BenchCase::Case1: return "case1";
    case BenchCase::Case2: return "case2";
    case BenchCase::Custom: return "custom";
    }
    return "unknown";
}

std::string_view to_string(Scheme s) {
    return s == Scheme::NaiveStrang ? "naive_strang" : "modified_strang";
}

std::string_view to_string(Ordering o) {
    return o == Ordering::LinearOutside ? "linear-outside" : "nonlinear-outside";
}

BenchCase parse_case(std::string_view text) {
    if (text == "case1") return BenchCase::Case1;
    if (text == "case2") return BenchCase::Case2;
    if (text == "custom") return BenchCase::Custom;
    throw ConfigError("case: unknown value '" + std::string(text) +
                      "' (expected case1, case2 or custom)");
}

Scheme parse_scheme(std::string_view text) {
    if (text == "naive" || text == "naive_strang") return Scheme::NaiveStrang;
    if (text == "modified" || text == "modified_strang") return Scheme::ModifiedStrang;
    throw ConfigError("schemes: unknown scheme '" + std::string(text) +
                      "' (expected naive or modified)");
}

Ordering parse_ordering(std::string_view text) {
    if (text == "linear-outside") return Ordering::LinearOutside;
    if (text == "nonlinear-outside") return Ordering::NonlinearOutside;
    throw ConfigError("ordering: unknown value '" + std::string(text) +
                      "' (expected linear-outside or nonlinear-outside)");
}

void validate(const BenchConfig& cfg) {
    if (cfg.K == 0) throw ConfigError("K: grid needs at least one interior node");
    if (!(cfg.T > 0.0)) throw ConfigError("T: final time must be positive");
    if (cfg.dt_list.empty()) throw ConfigError("dt_list: at least one step size is required");
    if (cfg.schemes.empty()) throw ConfigError("schemes: at least one scheme is required");
    for (double dt : cfg.dt_list) {
        try {
            step_count(cfg.T, dt);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("dt_list: ") + e.what());
        }
    }
    try {
        step_count(cfg.T, cfg.dt_ref);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("dt_ref: ") + e.what());
    }
    const double smallest = *std::min_element(cfg.dt_list.begin(), cfg.dt_list.end());
    if (cfg.dt_ref > smallest / 100.0 * (1.0 + 1e-12)) {
        throw ConfigError("dt_ref: reference step must be at most min(dt_list)/100");
    }
}

namespace {

using nlohmann::json;

template <typename T>
T get_as(const json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key + ": value has the wrong type");
    }
}

}  // namespace

BenchConfig apply_config_json(std::string_view json_text, BenchConfig base) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    for (const auto& [key, value] : doc.items()) {
        if (key == "case") {
            base.bench_case = parse_case(get_as<std::string>(value, key));
        } else if (key == "b1") {
            base.b1 = get_as<double>(value, key);
        } else if (key == "b2") {
            base.b2 = get_as<double>(value, key);
        } else if (key == "K") {
            const auto k = get_as<long long>(value, key);
            if (k < 1) throw ConfigError("K: must be a positive integer");
            base.K = static_cast<std::size_t>(k);
        } else if (key == "T") {
            base.T = get_as<double>(value, key);
        } else if (key == "dt_list") {
            base.dt_list = get_as<std::vector<double>>(value, key);
        } else if (key == "dt_ref") {
            base.dt_ref = get_as<double>(value, key);
        } else if (key == "schemes") {
            base.schemes.clear();
            for (const auto& name : get_as<std::vector<std::string>>(value, key)) {
                base.schemes.push_back(parse_scheme(name));
            }
        } else if (key == "ordering") {
            base.ordering = parse_ordering(get_as<std::string>(value, key));
        } else if (key == "output") {
            base.output = get_as<std::string>(value, key);
        } else {
            throw ConfigError(key + ": unknown config key");
        }
    }
    return base;
}

BenchConfig load_config_file(const std::string& path, BenchConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return apply_config_json(buffer.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

ProblemSpec make_problem(const BenchConfig& cfg) {
    switch (cfg.bench_case) {
    case BenchCase::Case1: return case1_problem(cfg.K, cfg.T);
    case BenchCase::Case2: return case2_problem(cfg.b1, cfg.b2, cfg.K, cfg.T);
    case BenchCase::Custom: return custom_problem(cfg.b1, cfg.b2, cfg.K, cfg.T);
    }
    throw ConfigError("case: unsupported");
}

Vector run_reference(const ProblemSpec& spec, double dt_ref) {
    const std::size_t n_steps = step_count(spec.final_time, dt_ref);
    const RhsFunction rhs = [&spec](const Vector& u, double t) { return full_rhs(u, t, spec); };
    Vector u = initial_state(spec);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t = static_cast<double>(n) * dt_ref;
        u = rk4_step(rhs, u, StepContext{.t = t, .dt = dt_ref});
        check_state(u, 1e8, n + 1, t + dt_ref);
    }
    return u;
}

double linf_error(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("linf_error: vector lengths differ");
    }
    if (u.size() == 0) return 0.0;
    return (u - v).cwiseAbs().maxCoeff();
}

std::vector<ErrorRow> ErrorTable::rows_for(Scheme s) const {
    std::vector<ErrorRow> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
                 [s](const ErrorRow& r) { return r.scheme == s; });
    return out;
}

void fill_observed_orders(ErrorTable& table) {
    const ErrorRow* previous = nullptr;
    for (ErrorRow& row : table.rows) {
        row.observed_order.reset();
        if (previous != nullptr && previous->scheme == row.scheme && previous->linf_error &&
            row.linf_error && std::abs(previous->dt / row.dt - 2.0) <= 1e-12) {
            row.observed_order = std::log2(*previous->linf_error / *row.linf_error);
        }
        previous = &row;
    }
}

ErrorTable convergence_study(const BenchConfig& cfg, const ProblemSpec& spec,
                             const Vector& reference) {
    validate(cfg);
    std::vector<double> dts = cfg.dt_list;
    std::sort(dts.begin(), dts.end(), std::greater<>());

    ErrorTable table;
    const Vector u0 = initial_state(spec);
    for (Scheme scheme : cfg.schemes) {
        SchemeConfig scheme_cfg{.scheme = scheme, .ordering = cfg.ordering, .matfun = cfg.matfun};
        for (double dt : dts) {
            ErrorRow row;
            row.scheme = scheme;
            row.dt = dt;
            try {
                const Vector u = advance(u0, spec, scheme_cfg, dt, step_count(spec.final_time, dt));
                row.linf_error = linf_error(u, reference);
            } catch (const BlowUpError&) {
                row.linf_error.reset();
            }
            table.rows.push_back(row);
        }
    }
    fill_observed_orders(table);
    return table;
}

ErrorTable convergence_study(const BenchConfig& cfg) {
    validate(cfg);
    const ProblemSpec spec = make_problem(cfg);
    const Vector reference = run_reference(spec, cfg.dt_ref);
    return convergence_study(cfg, spec, reference);
}

double fit_order(const std::vector<double>& dts, const std::vector<double>& errors) {
    if (dts.size() != errors.size() || dts.size() < 2) {
        throw std::invalid_argument("order fit needs at least two (dt, error) pairs");
    }
    const auto n = static_cast<double>(dts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < dts.size(); ++i) {
        const double x = std::log(dts[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("order fit needs at least two distinct step sizes");
    }
    return (n * sxy - sx * sy) / denom;
}

std::map<Scheme, double> estimate_order(const ErrorTable& table, std::size_t tail) {
    if (tail < 2) throw std::invalid_argument("order estimate needs tail >= 2");
    std::map<Scheme, std::vector<const ErrorRow*>> by_scheme;
    for (const ErrorRow& row : table.rows) {
        auto& list = by_scheme[row.scheme];
        if (row.linf_error) list.push_back(&row);
    }
    std::map<Scheme, double> orders;
    for (const auto& [scheme, list] : by_scheme) {
        if (list.size() < tail) {
            throw std::invalid_argument("order estimate for " + std::string(to_string(scheme)) +
                                        ": only " + std::to_string(list.size()) +
                                        " successful rows");
        }
        std::vector<double> dts, errors;
        for (std::size_t i = list.size() - tail; i < list.size(); ++i) {
            dts.push_back(list[i]->dt);
            errors.push_back(*list[i]->linf_error);
        }
        orders[scheme] = fit_order(dts, errors);
    }
    return orders;
}

namespace {

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.16e", value);
    return buffer;
}

double parse_number(const std::string& field, std::size_t line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (field.empty() || end != begin + field.size()) {
        throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" +
                                    field + "'");
    }
    return value;
}

}  // namespace

std::string to_csv(const ErrorTable& table) {
    std::string out = "scheme,dt,linf_error,observed_order\n";
    for (const ErrorRow& row : table.rows) {
        out += to_string(row.scheme);
        out += ',';
        out += format_number(row.dt);
        out += ',';
        out += row.linf_error ? format_number(*row.linf_error) : std::string("failed");
        out += ',';
        if (row.observed_order) out += format_number(*row.observed_order);
        out += '\n';
    }
    return out;
}

ErrorTable parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "scheme,dt,linf_error,observed_order") {
        throw std::invalid_argument("csv: missing or unexpected header");
    }
    ErrorTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream cells(line);
        while (std::getline(cells, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        if (fields.size() != 4) {
            throw std::invalid_argument("csv line " + std::to_string(line_no) +
                                        ": expected 4 fields");
        }
        ErrorRow row;
        try {
            row.scheme = parse_scheme(fields[0]);
        } catch (const ConfigError&) {
            throw std::invalid_argument("csv line " + std::to_string(line_no) +
                                        ": unknown scheme '" + fields[0] + "'");
        }
        row.dt = parse_number(fields[1], line_no);
        if (fields[2] != "failed") row.linf_error = parse_number(fields[2], line_no);
        if (!fields[3].empty()) row.observed_order = parse_number(fields[3], line_no);
        table.rows.push_back(row);
    }
    return table;
}

std::string format_report(const ErrorTable& table, const BenchConfig& cfg, std::size_t tail) {
    std::ostringstream os;
    os << "case: " << to_string(cfg.bench_case);
    if (cfg.bench_case != BenchCase::Case1) os << " (b1 = " << cfg.b1 << ", b2 = " << cfg.b2 << ")";
    os << "\nK = " << cfg.K << ", T = " << cfg.T << ", dt_ref = " << cfg.dt_ref
       << ", ordering = " << to_string(cfg.ordering) << "\n\n";

    os << std::left << std::setw(18) << "scheme" << std::setw(14) << "dt" << std::setw(16)
       << "linf_error" << "order\n";
    for (const ErrorRow& row : table.rows) {
        os << std::setw(18) << to_string(row.scheme) << std::setw(14) << std::setprecision(6)
           << row.dt << std::setw(16);
        if (row.linf_error) {
            os << std::scientific << std::setprecision(4) << *row.linf_error << std::defaultfloat;
        } else {
            os << "failed";
        }
        if (row.observed_order) os << std::fixed << std::setprecision(3) << *row.observed_order;
        os << std::defaultfloat << "\n";
    }

    os << "\nleast-squares order over the last " << tail << " rows:\n";
    for (Scheme scheme : cfg.schemes) {
        ErrorTable single{table.rows_for(scheme)};
        os << "  " << to_string(scheme) << ": ";
        try {
            const double order = estimate_order(single, tail).at(scheme);
            os << std::fixed << std::setprecision(3) << order << std::defaultfloat << "\n";
        } catch (const std::invalid_argument&) {
            os << "insufficient rows\n";
        }
    }
    return os.str();
}

}  // namespace mstrang
