#include "mstrang/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace mstrang {

namespace {

void check_step(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("time step must be positive and finite");
    }
}

}  // namespace

AffineFlow::AffineFlow(LinearPart lp, double dt, MatfunConfig cfg)
    : lp_(std::move(lp)), dt_(dt), cfg_(cfg) {
    check_step(dt);
    if (lp_.b.size() != lp_.A.size()) {
        throw std::invalid_argument("linear part: A and b sizes differ");
    }
}

Vector AffineFlow::apply(const Vector& y) {
    if (y.size() != lp_.A.size()) {
        throw std::invalid_argument("affine flow: state length mismatch");
    }
    const auto k = static_cast<std::size_t>(y.size());
    switch (cfg_.method) {
    case MatfunMethod::Dense:
        return apply_dense(y);
    case MatfunMethod::Krylov:
        return apply_krylov(y);
    case MatfunMethod::Auto:
        break;
    }
    if (propagator_) {
        return apply_dense(y);
    }
    try {
        return apply_krylov(y);
    } catch (const KrylovNotConverged&) {
        if (k > cfg_.dense_cutoff) throw;
    }
    return apply_dense(y);
}

Vector AffineFlow::apply_krylov(const Vector& y) const {
    const Tridiagonal& a = lp_.A;
    const LinearOperator op = [&a](const Vector& v) { return a.apply(v); };
    const int m_max = std::min(cfg_.m_max, static_cast<int>(y.size()));
    return y + dt_ * phi1_action(op, dt_, lp_.evaluate(y), m_max, cfg_.tol, cfg_.breakdown_tol);
}

Vector AffineFlow::apply_dense(const Vector& y) {
    if (!propagator_) {
        propagator_ = dt_ * dense_phi1(dt_ * lp_.A.to_dense());
    }
    return y + *propagator_ * lp_.evaluate(y);
}

Vector exact_linear_flow(const LinearPart& lp, const Vector& y, double dt,
                         const MatfunConfig& cfg) {
    return AffineFlow(lp, dt, cfg).apply(y);
}

Vector exponential_midpoint_step(const std::function<LinearPart(double)>& lin_at,
                                 const Vector& y, const StepContext& ctx,
                                 const MatfunConfig& cfg) {
    check_step(ctx.dt);
    return exact_linear_flow(lin_at(ctx.t + 0.5 * ctx.dt), y, ctx.dt, cfg);
}

Vector heun_step(const RhsFunction& rhs, const Vector& y, const StepContext& ctx) {
    check_step(ctx.dt);
    const Vector k1 = rhs(y, ctx.t);
    const Vector k2 = rhs(y + ctx.dt * k1, ctx.t + ctx.dt);
    return y + (0.5 * ctx.dt) * (k1 + k2);
}

Vector rk4_step(const RhsFunction& rhs, const Vector& y, const StepContext& ctx) {
    check_step(ctx.dt);
    const double h = ctx.dt;
    const double half = 0.5 * h;
    const Vector k1 = rhs(y, ctx.t);
    const Vector k2 = rhs(y + half * k1, ctx.t + half);
    const Vector k3 = rhs(y + half * k2, ctx.t + half);
    const Vector k4 = rhs(y + h * k3, ctx.t + h);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace mstrang
