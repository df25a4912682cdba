#include "mstrang/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mstrang {

namespace {

ScalarFunction constant(double c) {
    return [c](double) { return c; };
}

void check_length(const Vector& v, const ProblemSpec& spec, const char* what) {
    if (static_cast<std::size_t>(v.size()) != spec.grid.interior_count()) {
        throw std::invalid_argument(std::string(what) + ": vector length " +
                                    std::to_string(v.size()) + " does not match grid size " +
                                    std::to_string(spec.grid.interior_count()));
    }
}

}  // namespace

ProblemSpec case1_problem(std::size_t interior_count, double final_time) {
    return ProblemSpec{
        .grid = build_grid(1.0, interior_count),
        .b1 = constant(1.0),
        .b2 = constant(1.0),
        .b1_dot = constant(0.0),
        .b2_dot = constant(0.0),
        .initial_profile = [](double x) { return 2.0 * std::sin(std::numbers::pi * x) + 1.0; },
        .final_time = final_time,
        .constant_boundary = true,
    };
}

ProblemSpec case2_problem(double b1, double b2, std::size_t interior_count, double final_time) {
    return ProblemSpec{
        .grid = build_grid(1.0, interior_count),
        .b1 = constant(b1),
        .b2 = constant(b2),
        .b1_dot = constant(0.0),
        .b2_dot = constant(0.0),
        .initial_profile = [b1, b2](double x) { return (b2 - b1) * x + b1; },
        .final_time = final_time,
        .constant_boundary = true,
    };
}

ProblemSpec custom_problem(double b1, double b2, std::size_t interior_count, double final_time) {
    return ProblemSpec{
        .grid = build_grid(1.0, interior_count),
        .b1 = constant(b1),
        .b2 = constant(b2),
        .b1_dot = constant(0.0),
        .b2_dot = constant(0.0),
        .initial_profile =
            [b1, b2](double x) {
                return 2.0 * std::sin(std::numbers::pi * x) + (b2 - b1) * x + b1;
            },
        .final_time = final_time,
        .constant_boundary = true,
    };
}

ProblemSpec time_dependent_problem(std::size_t interior_count, double final_time) {
    return ProblemSpec{
        .grid = build_grid(1.0, interior_count),
        .b1 = [](double t) { return std::sin(t); },
        .b2 = constant(0.0),
        .b1_dot = [](double t) { return std::cos(t); },
        .b2_dot = constant(0.0),
        .initial_profile = [](double x) { return std::sin(std::numbers::pi * x); },
        .final_time = final_time,
        .constant_boundary = false,
    };
}

Vector initial_state(const ProblemSpec& spec) {
    const auto n = static_cast<Eigen::Index>(spec.grid.interior_count());
    Vector u(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        u[k] = spec.initial_profile(spec.grid.node(static_cast<std::size_t>(k) + 1));
    }
    return u;
}

double initial_boundary_mismatch(const ProblemSpec& spec) {
    const double left = std::abs(spec.initial_profile(0.0) - spec.b1(0.0));
    const double right = std::abs(spec.initial_profile(spec.grid.length()) - spec.b2(0.0));
    return std::max(left, right);
}

LiftingProfile lifting_profile(const ProblemSpec& spec, double t) {
    const double length = spec.grid.length();
    const double left = spec.b1(t);
    const double right = spec.b2(t);
    const double left_dot = spec.b1_dot(t);
    const double slope = (right - left) / length;
    const double slope_dot = (spec.b2_dot(t) - left_dot) / length;

    const auto n = static_cast<Eigen::Index>(spec.grid.interior_count());
    LiftingProfile lift{
        .z_nodes = Vector(n),
        .z_left = left,
        .z_right = right,
        .z_slope = slope,
        .zt_nodes = Vector(n),
    };
    for (Eigen::Index k = 0; k < n; ++k) {
        const double x = spec.grid.node(static_cast<std::size_t>(k) + 1);
        lift.z_nodes[k] = slope * x + left;
        lift.zt_nodes[k] = slope_dot * x + left_dot;
    }
    return lift;
}

Vector homogenize(const Vector& u, const LiftingProfile& lift) {
    if (u.size() != lift.z_nodes.size()) {
        throw std::invalid_argument("homogenize: state and lift lengths differ");
    }
    return u - lift.z_nodes;
}

Vector dehomogenize(const Vector& ut, const LiftingProfile& lift) {
    if (ut.size() != lift.z_nodes.size()) {
        throw std::invalid_argument("dehomogenize: state and lift lengths differ");
    }
    return ut + lift.z_nodes;
}

void Tridiagonal::apply(const Vector& x, Vector& out) const {
    const Eigen::Index n = size();
    if (x.size() != n || out.size() != n) {
        throw std::invalid_argument("tridiagonal apply: length mismatch");
    }
    if (n == 1) {
        out[0] = diag[0] * x[0];
        return;
    }
    out[0] = diag[0] * x[0] + upper[0] * x[1];
    for (Eigen::Index k = 1; k + 1 < n; ++k) {
        out[k] = lower[k] * x[k - 1] + diag[k] * x[k] + upper[k] * x[k + 1];
    }
    out[n - 1] = lower[n - 1] * x[n - 2] + diag[n - 1] * x[n - 1];
}

Vector Tridiagonal::apply(const Vector& x) const {
    Vector out(size());
    apply(x, out);
    return out;
}

Matrix Tridiagonal::to_dense() const {
    const Eigen::Index n = size();
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        m(k, k) = diag[k];
        if (k > 0) m(k, k - 1) = lower[k];
        if (k + 1 < n) m(k, k + 1) = upper[k];
    }
    return m;
}

LinearPart naive_heat_parts(const ProblemSpec& spec, double t) {
    const auto n = static_cast<Eigen::Index>(spec.grid.interior_count());
    const double dx = spec.grid.spacing();
    const double inv2 = 1.0 / (dx * dx);

    LinearPart lp{
        .A = {Vector::Constant(n, inv2), Vector::Constant(n, -2.0 * inv2), Vector::Constant(n, inv2)},
        .b = Vector::Zero(n),
    };
    lp.A.lower[0] = 0.0;
    lp.A.upper[n - 1] = 0.0;
    lp.b[0] += spec.b1(t) * inv2;
    lp.b[n - 1] += spec.b2(t) * inv2;
    return lp;
}

Vector naive_w_rhs(const Vector& w, double t, const ProblemSpec& spec) {
    check_length(w, spec, "naive_w_rhs");
    Vector out = diff1(w, spec.b1(t), spec.b2(t), spec.grid.spacing());
    return w.cwiseProduct(out);
}

LinearPart modified_linear_parts(const ProblemSpec& spec, double t) {
    const LiftingProfile lift = lifting_profile(spec, t);
    const auto n = static_cast<Eigen::Index>(spec.grid.interior_count());
    const double dx = spec.grid.spacing();
    const double inv2 = 1.0 / (dx * dx);
    const double half_inv = 1.0 / (2.0 * dx);

    LinearPart lp{
        .A = {Vector(n), Vector::Constant(n, -2.0 * inv2), Vector(n)},
        .b = Vector(n),
    };
    for (Eigen::Index k = 0; k < n; ++k) {
        const double z = lift.z_nodes[k];
        lp.A.lower[k] = k > 0 ? inv2 - z * half_inv : 0.0;
        lp.A.upper[k] = k + 1 < n ? inv2 + z * half_inv : 0.0;
        lp.b[k] = z * lift.z_slope - lift.zt_nodes[k];
    }
    return lp;
}

Vector modified_w_rhs(const Vector& wt, double t, const ProblemSpec& spec) {
    check_length(wt, spec, "modified_w_rhs");
    const LiftingProfile lift = lifting_profile(spec, t);
    Vector slope = diff1(wt, 0.0, 0.0, spec.grid.spacing());
    slope.array() += lift.z_slope;
    return wt.cwiseProduct(slope);
}

Vector full_rhs(const Vector& u, double t, const ProblemSpec& spec) {
    check_length(u, spec, "full_rhs");
    const double left = spec.b1(t);
    const double right = spec.b2(t);
    const double dx = spec.grid.spacing();
    return diff2(u, left, right, dx) + u.cwiseProduct(diff1(u, left, right, dx));
}

std::pair<double, double> compat_residual(const ProblemSpec& spec, double t, const Vector& wt) {
    check_length(wt, spec, "compat_residual");
    const LiftingProfile lift = lifting_profile(spec, t);
    const double dx = spec.grid.spacing();
    const Eigen::Index n = wt.size();
    // Homogenized boundary values.
    constexpr double w_left = 0.0;
    constexpr double w_right = 0.0;
    const double wx_left = (wt[0] - w_left) / dx;
    const double wx_right = (w_right - wt[n - 1]) / dx;
    return {w_left * (wx_left + lift.z_slope), w_right * (wx_right + lift.z_slope)};
}

std::pair<double, double> compat_residual(const ProblemSpec& spec, double t) {
    return compat_residual(spec, t,
                           Vector::Zero(static_cast<Eigen::Index>(spec.grid.interior_count())));
}

}  // namespace mstrang
