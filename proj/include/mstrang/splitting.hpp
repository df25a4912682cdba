#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "mstrang/integrators.hpp"
#include "mstrang/model.hpp"

namespace mstrang {

enum class Scheme {
    NaiveStrang,     // heat + Burgers transport in physical variables
    ModifiedStrang,  // lifted linear part + boundary-compatible nonlinear part
};

enum class Ordering {
    LinearOutside,     // L(dt/2) N(dt) L(dt/2)
    NonlinearOutside,  // N(dt/2) L(dt) N(dt/2)
};

struct SchemeConfig {
    Scheme scheme = Scheme::ModifiedStrang;
    Ordering ordering = Ordering::LinearOutside;
    MatfunConfig matfun{};
    double blowup_threshold = 1e8;
    // Replaces the nonlinear sub-flow by the identity. Diagnostics only.
    bool skip_nonlinear = false;
};

class BlowUpError : public std::runtime_error {
public:
    BlowUpError(std::size_t step, double t, double magnitude);

    std::size_t step() const { return step_; }
    double time() const { return time_; }

private:
    std::size_t step_;
    double time_;
};

/// Throws BlowUpError if any entry is non-finite or exceeds the threshold.
void check_state(const Vector& state, double threshold, std::size_t step, double t);

/// One Strang step of fixed size. The stepper keeps the dense or Krylov
/// linear propagators for its step size when the boundary data is constant,
/// so reuse one instance per trajectory.
class StrangStepper {
public:
    StrangStepper(const ProblemSpec& spec, SchemeConfig cfg, double dt);

    /// Naive scheme: `state` holds physical values. Modified scheme: `state`
    /// holds the homogenized values u - z(t).
    Vector step(const Vector& state, double t);

    const SchemeConfig& config() const { return cfg_; }
    double dt() const { return dt_; }

private:
    Vector linear(const Vector& y, double t, double h, std::optional<AffineFlow>& cache);
    Vector nonlinear(const Vector& y, double t, double h) const;

    const ProblemSpec& spec_;
    SchemeConfig cfg_;
    double dt_;
    std::optional<AffineFlow> half_flow_;
    std::optional<AffineFlow> full_flow_;
};

Vector naive_strang_step(const Vector& u, const StepContext& ctx, const ProblemSpec& spec,
                         SchemeConfig cfg);

Vector modified_strang_step(const Vector& ut, const StepContext& ctx, const ProblemSpec& spec,
                            SchemeConfig cfg);

/// Number of steps of size dt covering [0, T]; rejects dt that does not
/// divide T to 1e-12 relative.
std::size_t step_count(double final_time, double dt);

/// Runs n_steps of the configured scheme from the physical state u0 at t = 0
/// and returns the physical state at n_steps * dt, which must equal T.
Vector advance(const Vector& u0, const ProblemSpec& spec, const SchemeConfig& cfg, double dt,
               std::size_t n_steps);

}  // namespace mstrang
