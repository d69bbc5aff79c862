#include "ppds/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "ppds/rng.hpp"

namespace ppds {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double inv_or_zero(double twice) {
    return std::isinf(twice) ? 0.0 : 1.0 / twice;
}

}  // namespace

void check_problem(const InclusionProblem& problem, std::uint64_t seed, int samples) {
    if (problem.primal_dim == 0)
        throw InvalidProblem("check_problem: primal_dim is zero");
    if (problem.dual_dim == 0)
        throw InvalidProblem("check_problem: dual_dim is zero");
    if (!problem.A.resolvent || !problem.Binv.resolvent)
        throw InvalidProblem("check_problem: missing resolvent");
    if (!problem.L.forward || !problem.L.adjoint)
        throw InvalidProblem("check_problem: missing linear map");
    if (!problem.T.apply || !problem.PV.apply)
        throw InvalidProblem("check_problem: missing fixed-point map");

    CounterRng rng(seed, 0xc4ecu);
    for (int s = 0; s < samples; ++s) {
        Vector x = gaussian_vector(rng, problem.primal_dim);
        Vector lx = problem.L.forward(x);
        if (lx.size() != problem.dual_dim)
            throw DimensionMismatch("check_problem: L maps to dimension " +
                                    std::to_string(lx.size()) + ", expected " +
                                    std::to_string(problem.dual_dim));
        Vector projected = problem.PV.apply(lx);
        const double drift = norm2(sub(projected, lx));
        if (drift > 1e-10 * (1.0 + norm2(lx)))
            throw InvalidProblem("check_problem: ran L not inside V (drift " +
                                 std::to_string(drift) + ")");
    }
    Vector u = gaussian_vector(rng, problem.dual_dim);
    if (problem.L.adjoint(u).size() != problem.primal_dim)
        throw DimensionMismatch("check_problem: L* output dimension mismatch");
}

StepsizeCheck validate_stepsizes(double tau, double gamma, double beta, double delta,
                                 double L_norm) {
    if (!(tau > 0.0) || !(gamma > 0.0)) return StepsizeCheck::Violated;
    if (!(tau < 2.0 * beta) || !(gamma < 2.0 * delta)) return StepsizeCheck::Violated;
    const double lhs = L_norm * L_norm;
    const double rhs = (1.0 / tau - inv_or_zero(2.0 * beta)) *
                       (1.0 / gamma - inv_or_zero(2.0 * delta));
    const double scale = std::max(lhs, rhs);
    if (std::abs(lhs - rhs) <= 1e-12 * scale) return StepsizeCheck::SatisfiedWithEquality;
    return lhs < rhs ? StepsizeCheck::StrictlySatisfied : StepsizeCheck::Violated;
}

RegionMembership stepsize_region_membership(double tau, double gamma, double b) {
    RegionMembership out;
    const double top = 2.0 * b;
    if (tau < 0.0 || gamma < 0.0 || tau > top || gamma > top) return out;

    out.in_sb = (1.0 - tau / top) * (1.0 - gamma / top) > tau * gamma;

    const double num = 1.0 - std::sqrt(tau * gamma);
    // Open region: a zero step admits any ratio, so treat num/0 as a signed
    // infinity instead of NaN.
    const auto ratio = [](double n, double d) {
        if (d > 0.0) return n / d;
        return n > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    };
    out.in_rb = std::min(ratio(num, tau), ratio(num, gamma)) > 1.0 / top;
    return out;
}

LinearRate linear_rate_params(double rho, double chi, double beta, double delta,
                              double L_norm, double theta) {
    if (!(rho > 0.0) || !(chi > 0.0))
        throw StepsizeRegimeMismatch("linear_rate_params: needs rho > 0 and chi > 0");
    if (!(beta > 0.0) || !(delta > 0.0))
        throw StepsizeRegimeMismatch("linear_rate_params: needs beta, delta > 0");
    if (!(L_norm > 0.0))
        throw StepsizeRegimeMismatch("linear_rate_params: needs a nonzero coupling");

    LinearRate p;
    p.mu = 2.0 * std::sqrt(rho * chi) / L_norm;
    // mu/(4 beta) collapses to 0 when beta is infinite.
    const double mu4b = std::isinf(beta) ? 0.0 : p.mu / (4.0 * beta);
    const double mu4d = std::isinf(delta) ? 0.0 : p.mu / (4.0 * delta);
    p.alpha = std::min(p.mu * rho / (rho + mu4b), p.mu * chi / (chi + mu4d));
    if (!(theta > 1.0 / (1.0 + p.alpha)) || !(theta <= 1.0))
        throw ThetaOutOfRange("linear_rate_params: theta must lie in (" +
                              std::to_string(1.0 / (1.0 + p.alpha)) + ", 1]");
    p.theta = theta;
    p.tau = p.mu / (inv_or_zero(2.0 * beta) * p.mu + 2.0 * rho);
    p.gamma = p.mu / (inv_or_zero(2.0 * delta) * p.mu + 2.0 * chi);
    p.omega = (1.0 + theta) / (2.0 + p.alpha);
    return p;
}

Accelerated accelerated_schedule(double rho, double L_norm, double beta, double tau0) {
    if (!(rho > 0.0))
        throw StepsizeRegimeMismatch("accelerated_schedule: needs rho > 0");
    if (!(L_norm > 0.0))
        throw StepsizeRegimeMismatch("accelerated_schedule: needs a nonzero coupling");
    if (tau0 <= 0.0) {
        tau0 = 1.0 / L_norm;
        if (!(tau0 < 2.0 * beta)) tau0 = beta;  // clamp inside (0, 2 beta)
    }
    if (!(tau0 < 2.0 * beta))
        throw StepsizeRegimeMismatch("accelerated_schedule: tau0 must be below 2 beta");
    const double gamma0 = (1.0 / tau0 - inv_or_zero(2.0 * beta)) / (L_norm * L_norm);
    return {tau0, gamma0, rho};
}

IterationState make_initial_state(const InclusionProblem& problem, Vector x0, Vector u0,
                                  const StepSchedule& schedule) {
    if (x0.size() != problem.primal_dim)
        throw DimensionMismatch("make_initial_state: x0 size != primal_dim");
    if (u0.size() != problem.dual_dim)
        throw DimensionMismatch("make_initial_state: u0 size != dual_dim");

    IterationState st;
    st.x = std::move(x0);
    st.x_bar = st.x;
    st.u = std::move(u0);
    st.last_p = st.x;
    st.last_eta = st.u;
    std::visit(overloaded{[&](const Static& s) { st.tau_k = s.tau; st.gamma_k = s.gamma; },
                          [&](const Accelerated& a) { st.tau_k = a.tau0; st.gamma_k = a.gamma0; },
                          [&](const LinearRate& l) { st.tau_k = l.tau; st.gamma_k = l.gamma; }},
               schedule);
    return st;
}

ScheduleParams schedule_advance(const StepSchedule& schedule, const IterationState& state) {
    return std::visit(
        overloaded{
            [](const Static& s) { return ScheduleParams{s.tau, s.gamma, s.theta}; },
            [&](const Accelerated& a) {
                const double theta = 1.0 / std::sqrt(1.0 + 2.0 * a.rho * state.tau_k);
                return ScheduleParams{theta * state.tau_k, state.gamma_k / theta, theta};
            },
            [](const LinearRate& l) { return ScheduleParams{l.tau, l.gamma, l.theta}; }},
        schedule);
}

IterationState step(const InclusionProblem& problem, const IterationState& state) {
    if (state.x.size() != problem.primal_dim || state.u.size() != problem.dual_dim)
        throw DimensionMismatch("step: state does not match the problem dimensions");

    // eta = J_{gamma B^{-1}}(u + gamma (L x_bar - D^{-1} u))
    Vector w = problem.L.forward(state.x_bar);
    if (!problem.Dinv.is_zero()) {
        Vector dinv_u = problem.Dinv.eval(state.u);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= dinv_u[i];
    }
    Vector eta_arg(state.u.size());
    for (std::size_t i = 0; i < eta_arg.size(); ++i)
        eta_arg[i] = state.u[i] + state.gamma_k * w[i];
    Vector eta = problem.Binv.resolvent(eta_arg, state.gamma_k);
    Vector u_next = problem.PV.apply(eta);

    // p = J_{tau A}(x - tau (L* u+ + C x))
    Vector g = problem.L.adjoint(u_next);
    if (!problem.C.is_zero()) {
        Vector cx = problem.C.eval(state.x);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += cx[i];
    }
    Vector p_arg(state.x.size());
    for (std::size_t i = 0; i < p_arg.size(); ++i)
        p_arg[i] = state.x[i] - state.tau_k * g[i];
    Vector p = problem.A.resolvent(p_arg, state.tau_k);

    Vector x_next = problem.T.apply(p);

    // x_bar+ = x+ + theta (p - x), with the pre-step x.
    Vector xbar_next(x_next.size());
    for (std::size_t i = 0; i < xbar_next.size(); ++i)
        xbar_next[i] = x_next[i] + state.theta_k * (p[i] - state.x[i]);

    if (!all_finite(u_next) || !all_finite(x_next) || !all_finite(xbar_next))
        throw NonFiniteIterate("step: non-finite entry at iteration " +
                               std::to_string(state.k + 1));

    IterationState next;
    next.k = state.k + 1;
    next.x = std::move(x_next);
    next.x_bar = std::move(xbar_next);
    next.u = std::move(u_next);
    next.tau_k = state.tau_k;
    next.gamma_k = state.gamma_k;
    next.theta_k = state.theta_k;
    next.last_p = std::move(p);
    next.last_eta = std::move(eta);
    return next;
}

double relative_error(const Vector& x_prev, const Vector& u_prev, const Vector& x_curr,
                      const Vector& u_curr) {
    if (x_prev.size() != x_curr.size() || u_prev.size() != u_curr.size())
        throw DimensionMismatch("relative_error: prev and curr sizes differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x_prev.size(); ++i) {
        const double d = x_curr[i] - x_prev[i];
        num += d * d;
        den += x_prev[i] * x_prev[i];
    }
    for (std::size_t i = 0; i < u_prev.size(); ++i) {
        const double d = u_curr[i] - u_prev[i];
        num += d * d;
        den += u_prev[i] * u_prev[i];
    }
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

namespace {

void validate_schedule(const InclusionProblem& problem, const StepSchedule& schedule) {
    const double beta = problem.beta();
    const double delta = problem.delta();
    const double L_norm = problem.L.norm_bound;

    std::visit(
        overloaded{
            [&](const Static& s) {
                if (!(s.theta > 0.0) || !(s.theta <= 1.0))
                    throw StepsizeRegimeMismatch("solve: Static theta must lie in (0, 1]");
                if (validate_stepsizes(s.tau, s.gamma, beta, delta, L_norm) !=
                    StepsizeCheck::StrictlySatisfied)
                    throw StepsizeRegimeMismatch(
                        "solve: Static schedule needs the step-size condition strictly");
            },
            [&](const Accelerated& a) {
                if (!(problem.rho() > 0.0))
                    throw StepsizeRegimeMismatch(
                        "solve: Accelerated schedule needs a strongly monotone A");
                if (!(a.rho > 0.0) || a.rho > problem.rho() * (1.0 + 1e-12))
                    throw StepsizeRegimeMismatch(
                        "solve: Accelerated rho must lie in (0, rho of A]");
                if (problem.chi() != 0.0)
                    throw StepsizeRegimeMismatch("solve: Accelerated schedule needs chi = 0");
                if (!problem.Dinv.is_zero())
                    throw StepsizeRegimeMismatch("solve: Accelerated schedule needs D^{-1} = 0");
                if (validate_stepsizes(a.tau0, a.gamma0, beta, delta, L_norm) !=
                    StepsizeCheck::SatisfiedWithEquality)
                    throw StepsizeRegimeMismatch(
                        "solve: Accelerated schedule needs the step-size condition "
                        "with equality at (tau0, gamma0)");
            },
            [&](const LinearRate& l) {
                if (validate_stepsizes(l.tau, l.gamma, beta, delta, L_norm) !=
                    StepsizeCheck::SatisfiedWithEquality)
                    throw StepsizeRegimeMismatch(
                        "solve: LinearRate schedule needs the step-size condition "
                        "with equality");
                if (!(l.theta > 1.0 / (1.0 + l.alpha)) || !(l.theta <= 1.0))
                    throw ThetaOutOfRange("solve: LinearRate theta outside ((1+alpha)^{-1}, 1]");
                const double omega = (1.0 + l.theta) / (2.0 + l.alpha);
                if (std::abs(l.omega - omega) > 1e-12 * omega)
                    throw StepsizeRegimeMismatch("solve: LinearRate omega inconsistent");
            }},
        schedule);
}

}  // namespace

SolveReport solve(const InclusionProblem& problem, const StepSchedule& schedule,
                  const Vector& x0, const Vector& u0, const StopRule& stop,
                  const StepObserver& observer) {
    check_problem(problem);
    validate_schedule(problem, schedule);
    if (stop.max_iter == 0) throw ConfigError("solve: max_iter must be positive");
    if (!(stop.tol >= 0.0)) throw ConfigError("solve: tol must be nonnegative");

    IterationState state = make_initial_state(problem, x0, u0, schedule);

    SolveReport report;
    report.residuals.reserve(std::min<std::size_t>(stop.max_iter, 1 << 20));
    const auto t0 = std::chrono::steady_clock::now();

    while (state.k < stop.max_iter) {
        const ScheduleParams params = schedule_advance(schedule, state);
        state.theta_k = params.theta_now;

        Vector x_prev = state.x;
        Vector u_prev = state.u;
        state = step(problem, state);
        const double r = relative_error(x_prev, u_prev, state.x, state.u);
        report.residuals.push_back(r);
        if (observer) observer(state);

        state.tau_k = params.tau_next;
        state.gamma_k = params.gamma_next;

        if (r < stop.tol) {
            report.stop_reason = StopReason::ToleranceReached;
            break;
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    report.wall_time = std::chrono::duration<double>(t1 - t0).count();
    report.iterations = state.k;
    report.final_x = std::move(state.x);
    report.final_u = std::move(state.u);
    return report;
}

double omega_lyapunov(const Vector& x, const Vector& u, const Vector& x_hat,
                      const Vector& u_hat, double rho, double chi, double mu,
                      double beta, double delta) {
    const double mu4b = std::isinf(beta) ? 0.0 : mu / (4.0 * beta);
    const double mu4d = std::isinf(delta) ? 0.0 : mu / (4.0 * delta);
    double du = 0.0, dx = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - u_hat[i];
        du += d * d;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - x_hat[i];
        dx += d * d;
    }
    return (chi + mu4d) * du + (rho + mu4b) * dx;
}

}  // namespace ppds
