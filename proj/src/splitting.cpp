#include "mstrang/splitting.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mstrang {

namespace {

std::string blowup_message(std::size_t step, double t, double magnitude) {
    std::ostringstream os;
    os << "solution blew up at step " << step << " (t = " << t << ", max |u| = " << magnitude
       << ")";
    return os.str();
}

}  // namespace

BlowUpError::BlowUpError(std::size_t step, double t, double magnitude)
    : std::runtime_error(blowup_message(step, t, magnitude)), step_(step), time_(t) {}

void check_state(const Vector& state, double threshold, std::size_t step, double t) {
    if (!state.allFinite()) {
        throw BlowUpError(step, t, std::numeric_limits<double>::infinity());
    }
    const double magnitude = state.cwiseAbs().maxCoeff();
    if (magnitude > threshold) {
        throw BlowUpError(step, t, magnitude);
    }
}

StrangStepper::StrangStepper(const ProblemSpec& spec, SchemeConfig cfg, double dt)
    : spec_(spec), cfg_(cfg), dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("Strang step size must be positive and finite");
    }
}

Vector StrangStepper::linear(const Vector& y, double t, double h,
                             std::optional<AffineFlow>& cache) {
    if (spec_.constant_boundary) {
        if (!cache) {
            LinearPart lp = cfg_.scheme == Scheme::NaiveStrang ? naive_heat_parts(spec_, t)
                                                               : modified_linear_parts(spec_, t);
            cache.emplace(std::move(lp), h, cfg_.matfun);
        }
        return cache->apply(y);
    }
    if (cfg_.scheme == Scheme::NaiveStrang) {
        // Boundary values frozen at the start of the sub-step.
        return exact_linear_flow(naive_heat_parts(spec_, t), y, h, cfg_.matfun);
    }
    return exponential_midpoint_step(
        [this](double s) { return modified_linear_parts(spec_, s); }, y,
        StepContext{.t = t, .dt = h}, cfg_.matfun);
}

Vector StrangStepper::nonlinear(const Vector& y, double t, double h) const {
    if (cfg_.skip_nonlinear) {
        return y;
    }
    const ProblemSpec& spec = spec_;
    RhsFunction rhs;
    if (cfg_.scheme == Scheme::NaiveStrang) {
        rhs = [&spec](const Vector& w, double s) { return naive_w_rhs(w, s, spec); };
    } else {
        rhs = [&spec](const Vector& w, double s) { return modified_w_rhs(w, s, spec); };
    }
    return heun_step(rhs, y, StepContext{.t = t, .dt = h});
}

Vector StrangStepper::step(const Vector& state, double t) {
    const double half = 0.5 * dt_;
    if (cfg_.ordering == Ordering::LinearOutside) {
        Vector y = linear(state, t, half, half_flow_);
        y = nonlinear(y, t, dt_);
        return linear(y, t + half, half, half_flow_);
    }
    Vector y = nonlinear(state, t, half);
    y = linear(y, t, dt_, full_flow_);
    return nonlinear(y, t + half, half);
}

Vector naive_strang_step(const Vector& u, const StepContext& ctx, const ProblemSpec& spec,
                         SchemeConfig cfg) {
    cfg.scheme = Scheme::NaiveStrang;
    StrangStepper stepper(spec, cfg, ctx.dt);
    Vector next = stepper.step(u, ctx.t);
    check_state(next, cfg.blowup_threshold, 1, ctx.t + ctx.dt);
    return next;
}

Vector modified_strang_step(const Vector& ut, const StepContext& ctx, const ProblemSpec& spec,
                            SchemeConfig cfg) {
    cfg.scheme = Scheme::ModifiedStrang;
    StrangStepper stepper(spec, cfg, ctx.dt);
    Vector next = stepper.step(ut, ctx.t);
    check_state(next, cfg.blowup_threshold, 1, ctx.t + ctx.dt);
    return next;
}

std::size_t step_count(double final_time, double dt) {
    if (!(dt > 0.0) || !(final_time > 0.0)) {
        throw std::invalid_argument("final time and step size must be positive");
    }
    const double ratio = final_time / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(rounded * dt - final_time) > 1e-12 * final_time) {
        std::ostringstream os;
        os << "step size " << dt << " does not divide final time " << final_time;
        throw std::invalid_argument(os.str());
    }
    return static_cast<std::size_t>(rounded);
}

Vector advance(const Vector& u0, const ProblemSpec& spec, const SchemeConfig& cfg, double dt,
               std::size_t n_steps) {
    if (n_steps == 0 ||
        std::abs(static_cast<double>(n_steps) * dt - spec.final_time) > 1e-12 * spec.final_time) {
        std::ostringstream os;
        os << n_steps << " steps of size " << dt << " do not reach final time "
           << spec.final_time;
        throw std::invalid_argument(os.str());
    }
    if (static_cast<std::size_t>(u0.size()) != spec.grid.interior_count()) {
        throw std::invalid_argument("advance: initial state length does not match the grid");
    }

    StrangStepper stepper(spec, cfg, dt);
    const bool lifted = cfg.scheme == Scheme::ModifiedStrang;
    // The homogenized equation carries -z_t, so u - z(t) stays consistent
    // with the moving lift and only the two ends of the loop need it.
    Vector state = lifted ? homogenize(u0, lifting_profile(spec, 0.0)) : u0;
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        state = stepper.step(state, t);
        check_state(state, cfg.blowup_threshold, n + 1, t + dt);
    }
    const double t_end = static_cast<double>(n_steps) * dt;
    return lifted ? dehomogenize(state, lifting_profile(spec, t_end)) : state;
}

}  // namespace mstrang
