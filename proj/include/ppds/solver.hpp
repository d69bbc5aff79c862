#pragma once

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "ppds/operators.hpp"

namespace ppds {

/// Monotone inclusion with a constraint map T and a subspace projector PV:
/// find x with 0 in A x + L* (B box D)(L x) + C x restricted to Fix T,
/// where B enters through the resolvent of B^{-1} and D through D^{-1}.
/// Requires ran L contained in the subspace V that PV projects onto.
struct InclusionProblem {
    MonotoneOp A;       // strong_modulus = rho
    MonotoneOp Binv;    // resolvent of B^{-1}; strong_modulus = chi
    CocoerciveOp C;     // modulus = beta
    CocoerciveOp Dinv;  // modulus = delta
    LinearMap L;
    FixedPointMap T;
    FixedPointMap PV;
    std::size_t primal_dim = 0;
    std::size_t dual_dim = 0;

    double rho() const { return A.strong_modulus; }
    double chi() const { return Binv.strong_modulus; }
    double beta() const { return C.modulus; }
    double delta() const { return Dinv.modulus; }
};

// Cheap sampled sanity check: dimensions agree and PV fixes L x for a few
// seeded random x (ran L in V). Throws InvalidProblem / DimensionMismatch.
void check_problem(const InclusionProblem& problem, std::uint64_t seed = 0,
                   int samples = 3);

enum class StepsizeCheck { StrictlySatisfied, SatisfiedWithEquality, Violated };

/// Classifies ||L||^2 against (1/tau - 1/(2 beta)) (1/gamma - 1/(2 delta)).
/// Equality is decided at 1e-12 relative tolerance. Requires tau < 2 beta and
/// gamma < 2 delta, otherwise Violated.
StepsizeCheck validate_stepsizes(double tau, double gamma, double beta, double delta,
                                 double L_norm);

struct RegionMembership {
    bool in_rb = false;
    bool in_sb = false;
};

/// Membership of (tau, gamma) in the two step-size regions for a cocoercivity
/// constant b and a unit-norm coupling:
///   R_b: min{(1 - sqrt(tau gamma))/tau, (1 - sqrt(tau gamma))/gamma} > 1/(2b)
///   S_b: (1 - tau/(2b)) (1 - gamma/(2b)) > tau gamma
/// R_b is contained in S_b; the two coincide on the diagonal tau = gamma.
RegionMembership stepsize_region_membership(double tau, double gamma, double b);

struct Static {
    double tau = 0.0;
    double gamma = 0.0;
    double theta = 1.0;
};

/// theta_k = 1/sqrt(1 + 2 rho tau_k), tau_{k+1} = theta_k tau_k,
/// gamma_{k+1} = gamma_k / theta_k. Needs rho > 0, chi = 0, D^{-1} = 0 and
/// the step-size condition tight at (tau0, gamma0).
struct Accelerated {
    double tau0 = 0.0;
    double gamma0 = 0.0;
    double rho = 0.0;
};

/// Constant steps with linear convergence under double strong monotonicity.
/// Built by linear_rate_params; omega is the contraction factor.
struct LinearRate {
    double tau = 0.0;
    double gamma = 0.0;
    double theta = 1.0;
    double mu = 0.0;
    double alpha = 0.0;
    double omega = 1.0;
};

using StepSchedule = std::variant<Static, Accelerated, LinearRate>;

/// mu = 2 sqrt(rho chi)/||L||,
/// alpha = min{mu rho/(rho + mu/(4 beta)), mu chi/(chi + mu/(4 delta))},
/// tau = 2 beta mu/(mu + 4 beta rho), gamma = 2 mu delta/(mu + 4 delta chi),
/// omega = (1 + theta)/(2 + alpha) for theta in ((1+alpha)^{-1}, 1].
/// The returned steps satisfy the step-size condition with equality.
LinearRate linear_rate_params(double rho, double chi, double beta, double delta,
                              double L_norm, double theta = 1.0);

/// Accelerated schedule whose (tau0, gamma0) hit the step-size condition with
/// equality. tau0 <= 0 picks 1/L_norm (clamped below 2 beta).
Accelerated accelerated_schedule(double rho, double L_norm,
                                 double beta = kInfiniteModulus, double tau0 = 0.0);

struct IterationState {
    std::size_t k = 0;
    Vector x, x_bar, u;
    double tau_k = 0.0;
    double gamma_k = 0.0;
    double theta_k = 1.0;
    // Diagnostics: the unprojected primal and dual points of the last step.
    Vector last_p, last_eta;
};

IterationState make_initial_state(const InclusionProblem& problem, Vector x0, Vector u0,
                                  const StepSchedule& schedule);

/// One iteration:
///   eta  = J_{gamma B^{-1}}(u + gamma (L x_bar - D^{-1} u))
///   u+   = PV eta
///   p    = J_{tau A}(x - tau (L* u+ + C x))
///   x+   = T p
///   xbar+ = x+ + theta (p - x)
/// Uses the state's (tau_k, gamma_k, theta_k) throughout.
IterationState step(const InclusionProblem& problem, const IterationState& state);

struct ScheduleParams {
    double tau_next = 0.0;
    double gamma_next = 0.0;
    double theta_now = 1.0;
};

/// Parameters for the upcoming step: theta_now belongs to the current
/// (tau_k, gamma_k); tau_next/gamma_next take effect afterwards.
ScheduleParams schedule_advance(const StepSchedule& schedule, const IterationState& state);

/// sqrt((||u - u_prev||^2 + ||x - x_prev||^2) / (||u_prev||^2 + ||x_prev||^2)),
/// +inf when the denominator vanishes.
double relative_error(const Vector& x_prev, const Vector& u_prev, const Vector& x_curr,
                      const Vector& u_curr);

enum class StopReason { ToleranceReached, MaxIterations };

struct StopRule {
    double tol = 1e-5;
    std::size_t max_iter = 1000000;
};

struct SolveReport {
    std::size_t iterations = 0;
    Vector final_x, final_u;
    std::vector<double> residuals;  // relative error after every step
    StopReason stop_reason = StopReason::MaxIterations;
    double wall_time = 0.0;  // seconds
};

using StepObserver = std::function<void(const IterationState&)>;

/// Runs the iteration under the given schedule until the relative error drops
/// below stop.tol or max_iter is reached. Validates the schedule against the
/// problem up front (StepsizeRegimeMismatch): Static needs the step-size
/// condition strictly, Accelerated and LinearRate need it with equality, and
/// Accelerated additionally needs rho > 0, chi = 0, D^{-1} = 0.
/// Deterministic: identical inputs produce bit-identical reports apart from
/// wall_time.
SolveReport solve(const InclusionProblem& problem, const StepSchedule& schedule,
                  const Vector& x0, const Vector& u0, const StopRule& stop,
                  const StepObserver& observer = nullptr);

/// (chi + mu/(4 delta)) ||u - u_hat||^2 + (rho + mu/(4 beta)) ||x - x_hat||^2.
double omega_lyapunov(const Vector& x, const Vector& u, const Vector& x_hat,
                      const Vector& u_hat, double rho, double chi, double mu,
                      double beta, double delta);

}  // namespace ppds
