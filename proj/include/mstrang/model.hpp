#pragma once

#include <functional>
#include <utility>

#include "mstrang/grid.hpp"

namespace mstrang {

using ScalarFunction = std::function<double(double)>;

/// Burgers-type problem u_t = u_xx + u*u_x on (0, L) with Dirichlet data
/// u(t,0) = b1(t), u(t,L) = b2(t). The derivative callbacks must be the exact
/// time derivatives of b1 and b2; they feed the lifting source term.
struct ProblemSpec {
    Grid1D grid;
    ScalarFunction b1;
    ScalarFunction b2;
    ScalarFunction b1_dot;
    ScalarFunction b2_dot;
    ScalarFunction initial_profile;
    double final_time = 0.1;
    // True when b1 and b2 do not depend on t, so the linear parts are fixed.
    bool constant_boundary = true;
};

/// u(t,0) = u(t,1) = 1, u0(x) = 2 sin(pi x) + 1.
ProblemSpec case1_problem(std::size_t interior_count, double final_time = 0.1);

/// Constant data b1, b2 on (0, 1) with the affine initial profile (b2 - b1) x + b1.
ProblemSpec case2_problem(double b1, double b2, std::size_t interior_count,
                          double final_time = 0.1);

/// Constant data b1, b2 on (0, 1), initial profile 2 sin(pi x) + (b2 - b1) x + b1.
ProblemSpec custom_problem(double b1, double b2, std::size_t interior_count,
                           double final_time = 0.1);

/// b1(t) = sin t, b2 = 0 on (0, 1) with u0(x) = sin(pi x).
ProblemSpec time_dependent_problem(std::size_t interior_count, double final_time = 0.1);

/// Nodal values of the initial profile.
Vector initial_state(const ProblemSpec& spec);

/// Largest of |u0(0) - b1(0)| and |u0(L) - b2(0)|. Nonzero values are allowed
/// but break the zero-boundary assumption of the homogenized nonlinear flow.
double initial_boundary_mismatch(const ProblemSpec& spec);

/// Affine lift z(t,x) = (b2(t) - b1(t)) x / L + b1(t) sampled on the grid.
struct LiftingProfile {
    Vector z_nodes;
    double z_left = 0.0;
    double z_right = 0.0;
    double z_slope = 0.0;
    Vector zt_nodes;
};

LiftingProfile lifting_profile(const ProblemSpec& spec, double t);

Vector homogenize(const Vector& u, const LiftingProfile& lift);
Vector dehomogenize(const Vector& ut, const LiftingProfile& lift);

/// Tridiagonal K x K matrix. lower[k] couples row k to k-1 (lower[0] unused),
/// upper[k] couples row k to k+1 (upper[K-1] unused).
struct Tridiagonal {
    Vector lower;
    Vector diag;
    Vector upper;

    Eigen::Index size() const { return diag.size(); }
    Vector apply(const Vector& x) const;
    void apply(const Vector& x, Vector& out) const;
    Matrix to_dense() const;
};

/// Compact linear form y' = A y + b of a linear sub-equation.
struct LinearPart {
    Tridiagonal A;
    Vector b;

    Vector evaluate(const Vector& y) const { return A.apply(y) + b; }
};

/// Heat sub-equation of the naive splitting in physical variables.
/// A y + b reproduces diff2(y, b1(t), b2(t), dx).
LinearPart naive_heat_parts(const ProblemSpec& spec, double t);

/// W_k * diff1(W, b1(t), b2(t), dx)_k; both boundary values are imposed.
Vector naive_w_rhs(const Vector& w, double t, const ProblemSpec& spec);

/// Linear sub-equation of the lifted splitting:
/// A v = diff2(v,0,0) + Z * diff1(v,0,0), b = Z * z_x - z_t.
LinearPart modified_linear_parts(const ProblemSpec& spec, double t);

/// Nonlinear sub-equation of the lifted splitting: W_k (diff1(W,0,0)_k + z_x).
Vector modified_w_rhs(const Vector& wt, double t, const ProblemSpec& spec);

/// Unsplit semi-discrete right-hand side diff2(U) + U * diff1(U) with the
/// physical boundary values.
Vector full_rhs(const Vector& u, double t, const ProblemSpec& spec);

/// Right-hand side of the continuous lifted nonlinear sub-equation
/// w (w_x + z_x) at x = 0 and x = L. The homogenized state vanishes there, so
/// both entries are zero whenever the boundary slope is finite. The slope of
/// `wt` at each end is taken from a one-sided difference.
std::pair<double, double> compat_residual(const ProblemSpec& spec, double t,
                                          const Vector& wt);
std::pair<double, double> compat_residual(const ProblemSpec& spec, double t);

}  // namespace mstrang
