#pragma once

#include <functional>
#include <optional>

#include "mstrang/matfun.hpp"
#include "mstrang/model.hpp"

namespace mstrang {

struct StepContext {
    double t = 0.0;
    double dt = 0.0;
};

enum class MatfunMethod { Auto, Krylov, Dense };

/// How exp(tA) and phi1(tA) actions are evaluated. Auto runs Krylov first and
/// falls back to dense evaluation for K <= dense_cutoff.
struct MatfunConfig {
    MatfunMethod method = MatfunMethod::Auto;
    int m_max = 30;  // capped at K
    double tol = 1e-12;
    double breakdown_tol = 1e-14;
    std::size_t dense_cutoff = 256;
};

using RhsFunction = std::function<Vector(const Vector&, double)>;

/// Exact flow of y' = A y + b over dt for frozen (A, b):
/// exp(dt A) y + dt phi1(dt A) b, evaluated as y + dt phi1(dt A)(A y + b) so
/// that equilibria are reproduced exactly.
Vector exact_linear_flow(const LinearPart& lp, const Vector& y, double dt,
                         const MatfunConfig& cfg = {});

/// Affine flow map for one (A, b, dt) triple, reused across many states.
/// The dense propagator dt phi1(dt A) is built on first use and kept.
class AffineFlow {
public:
    AffineFlow(LinearPart lp, double dt, MatfunConfig cfg = {});

    Vector apply(const Vector& y);
    double dt() const { return dt_; }

private:
    Vector apply_krylov(const Vector& y) const;
    Vector apply_dense(const Vector& y);

    LinearPart lp_;
    double dt_;
    MatfunConfig cfg_;
    std::optional<Matrix> propagator_;
};

/// Exponential midpoint rule: (A, b) frozen at t + dt/2, then the exact flow.
Vector exponential_midpoint_step(const std::function<LinearPart(double)>& lin_at,
                                 const Vector& y, const StepContext& ctx,
                                 const MatfunConfig& cfg = {});

Vector heun_step(const RhsFunction& rhs, const Vector& y, const StepContext& ctx);

Vector rk4_step(const RhsFunction& rhs, const Vector& y, const StepContext& ctx);

}  // namespace mstrang
