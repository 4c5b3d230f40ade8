#include "klbody/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace klbody {

namespace {

// Flattened state: L row-major (9) + (alpha, xi, zeta, rho) + the seven
// canonical momenta.
using StateVec = Eigen::Matrix<double, 20, 1>;

StateVec pack(const Mat3& l, const PolarDeformation& def,
              const PolarMomenta& mom) {
    StateVec y;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) y(3 * r + c) = l(r, c);
    y(9) = def.alpha;
    y(10) = def.xi;
    y(11) = def.zeta;
    y(12) = def.rho;
    y(13) = mom.pi1;
    y(14) = mom.pi2;
    y(15) = mom.pi3;
    y(16) = mom.p_alpha;
    y(17) = mom.p_xi;
    y(18) = mom.p_zeta;
    y(19) = mom.p_rho;
    return y;
}

void unpack(const StateVec& y, Mat3& l, PolarDeformation& def,
            PolarMomenta& mom) {
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) l(r, c) = y(3 * r + c);
    def.alpha = y(9);
    def.xi = y(10);
    def.zeta = y(11);
    def.rho = y(12);
    mom.pi1 = y(13);
    mom.pi2 = y(14);
    mom.pi3 = y(15);
    mom.p_alpha = y(16);
    mom.p_xi = y(17);
    mom.p_zeta = y(18);
    mom.p_rho = y(19);
}

// Vector field on the flattened state. Stage values drift off SO(3) by
// O(dt^2); the rotation block is propagated raw and reprojected by the
// caller, never inside a stage.
StateVec rhs(const StateVec& y, const InertiaTensor& J,
             const PotentialModel& pot) {
    Mat3 l;
    PolarDeformation def;
    PolarMomenta mom;
    unpack(y, l, def, mom);
    def.require_valid();

    const CanonicalRates rates = canonical_rates(def, mom, J, pot);
    const Mat3 l_dot = l * rates.velocities.nu.to_matrix();
    PolarDeformation def_dot;
    def_dot.alpha = rates.velocities.alpha_dot;
    def_dot.xi = rates.velocities.xi_dot;
    def_dot.zeta = rates.velocities.zeta_dot;
    def_dot.rho = rates.velocities.rho_dot;
    return pack(l_dot, def_dot, rates.momenta_dot);
}

StateVec rk4_step(const StateVec& y, double dt, const InertiaTensor& J,
                  const PotentialModel& pot) {
    const StateVec k1 = rhs(y, J, pot);
    const StateVec k2 = rhs(y + 0.5 * dt * k1, J, pot);
    const StateVec k3 = rhs(y + 0.5 * dt * k2, J, pot);
    const StateVec k4 = rhs(y + dt * k3, J, pot);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Cash-Karp embedded 4(5) pair. Returns the 5th-order solution and the
// scaled error estimate of the 4th-order one.
struct EmbeddedResult {
    StateVec y5;
    double error = 0.0;
};

EmbeddedResult cash_karp_step(const StateVec& y, double dt,
                              const InertiaTensor& J, const PotentialModel& pot,
                              double rel_tol, double abs_tol) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 3.0 / 10.0, a42 = -9.0 / 10.0, a43 = 6.0 / 5.0;
    static constexpr double a51 = -11.0 / 54.0, a52 = 5.0 / 2.0,
                            a53 = -70.0 / 27.0, a54 = 35.0 / 27.0;
    static constexpr double a61 = 1631.0 / 55296.0, a62 = 175.0 / 512.0,
                            a63 = 575.0 / 13824.0, a64 = 44275.0 / 110592.0,
                            a65 = 253.0 / 4096.0;
    static constexpr double b1 = 37.0 / 378.0, b3 = 250.0 / 621.0,
                            b4 = 125.0 / 594.0, b6 = 512.0 / 1771.0;
    static constexpr double d1 = 2825.0 / 27648.0, d3 = 18575.0 / 48384.0,
                            d4 = 13525.0 / 55296.0, d5 = 277.0 / 14336.0,
                            d6 = 1.0 / 4.0;

    const StateVec k1 = rhs(y, J, pot);
    const StateVec k2 = rhs(y + dt * (a21 * k1), J, pot);
    const StateVec k3 = rhs(y + dt * (a31 * k1 + a32 * k2), J, pot);
    const StateVec k4 = rhs(y + dt * (a41 * k1 + a42 * k2 + a43 * k3), J, pot);
    const StateVec k5 =
        rhs(y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), J, pot);
    const StateVec k6 = rhs(
        y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), J,
        pot);

    EmbeddedResult out;
    out.y5 = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b6 * k6);
    const StateVec y4 =
        y + dt * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);

    double err = 0.0;
    for (int i = 0; i < y.size(); ++i) {
        const double sc =
            abs_tol + rel_tol * std::max(std::abs(y(i)), std::abs(out.y5(i)));
        const double e = (out.y5(i) - y4(i)) / sc;
        err += e * e;
    }
    out.error = std::sqrt(err / static_cast<double>(y.size()));
    return out;
}

void renormalize(StateVec& y) {
    Mat3 l;
    PolarDeformation def;
    PolarMomenta mom;
    unpack(y, l, def, mom);
    l = RotationMatrix::project(l);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) y(3 * r + c) = l(r, c);
}

PhasePoint to_phase_point(const StateVec& y, double t) {
    Mat3 l;
    PhasePoint p;
    unpack(y, l, p.def, p.mom);
    p.L = RotationMatrix::from_matrix(l);
    p.t = t;
    return p;
}

MonitorSample monitor(const PhasePoint& p, const InertiaTensor& J,
                      const PotentialModel& pot) {
    MonitorSample m;
    m.t = p.t;
    m.energy = hamiltonian(p.def, p.mom, J, pot);
    m.spin_squared = p.mom.spin_squared();
    const DeformationInvariants k = deformation_invariants(p.def);
    m.k1 = k.k1;
    m.k2 = k.k2;
    m.k3 = k.k3;
    m.orthogonality_defect = p.L.orthogonality_defect();
    return m;
}

// One accepted adaptive step; dt is updated in place for the next attempt.
StateVec adaptive_step(const StateVec& y, double& dt, double dt_max,
                       const IntegratorConfig& cfg, const InertiaTensor& J,
                       const PotentialModel& pot, double& dt_taken) {
    constexpr double kSafety = 0.9;
    constexpr double kMinShrink = 0.2;
    constexpr double kMaxGrow = 5.0;
    constexpr double kMinStep = 1e-12;

    double h = std::min(dt, dt_max);
    for (;;) {
        const EmbeddedResult r =
            cash_karp_step(y, h, J, pot, cfg.rel_tol, cfg.abs_tol);
        if (r.error <= 1.0) {
            dt_taken = h;
            const double grow =
                r.error == 0.0
                    ? kMaxGrow
                    : std::clamp(kSafety * std::pow(r.error, -0.2), kMinShrink,
                                 kMaxGrow);
            dt = h * grow;
            return r.y5;
        }
        h *= std::clamp(kSafety * std::pow(r.error, -0.2), kMinShrink, 1.0);
        if (h < kMinStep) {
            std::ostringstream msg;
            msg << "adaptive step size underflow (h=" << h << ")";
            throw Error(msg.str());
        }
    }
}

} // namespace

bool IntegratorConfig::valid() const {
    return dt > 0.0 && n_steps > 0 && rel_tol > 0.0 && abs_tol > 0.0 &&
           renorm_interval >= 0;
}

void IntegratorConfig::require_valid() const {
    if (valid()) return;
    std::ostringstream msg;
    msg << "invalid integrator config: dt=" << dt << " n_steps=" << n_steps
        << " rel_tol=" << rel_tol << " abs_tol=" << abs_tol
        << " renorm_interval=" << renorm_interval;
    throw DomainError(msg.str());
}

PhasePoint step(const PhasePoint& p, const IntegratorConfig& cfg,
                const InertiaTensor& J, const PotentialModel& pot) {
    cfg.require_valid();
    p.def.require_valid();
    StateVec y = pack(p.L.matrix(), p.def, p.mom);
    double t = p.t;

    if (cfg.scheme == Scheme::rk4) {
        y = rk4_step(y, cfg.dt, J, pot);
        t += cfg.dt;
    } else {
        double dt = cfg.dt;
        double taken = 0.0;
        y = adaptive_step(y, dt, cfg.dt, cfg, J, pot, taken);
        t += taken;
    }
    if (cfg.renorm_interval == 1) renormalize(y);

    PhasePoint out = to_phase_point(y, t);
    out.def.require_valid();
    return out;
}

Trajectory simulate(const PhasePoint& p0, const IntegratorConfig& cfg,
                    const InertiaTensor& J, const PotentialModel& pot) {
    cfg.require_valid();
    p0.def.require_valid();
    J.require_valid();

    Trajectory traj;
    traj.points.push_back(p0);
    traj.monitors.push_back(monitor(p0, J, pot));

    StateVec y = pack(p0.L.matrix(), p0.def, p0.mom);
    double t = p0.t;
    const double t_end = p0.t + cfg.dt * static_cast<double>(cfg.n_steps);
    double dt = cfg.dt;
    long accepted = 0;

    try {
        if (cfg.scheme == Scheme::rk4) {
            for (long i = 0; i < cfg.n_steps; ++i) {
                y = rk4_step(y, cfg.dt, J, pot);
                t = p0.t + cfg.dt * static_cast<double>(i + 1);
                ++accepted;
                if (cfg.renorm_interval > 0 &&
                    accepted % cfg.renorm_interval == 0) {
                    renormalize(y);
                }
                const PhasePoint p = to_phase_point(y, t);
                p.def.require_valid();
                traj.points.push_back(p);
                traj.monitors.push_back(monitor(p, J, pot));
            }
        } else {
            while (t < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
                double taken = 0.0;
                y = adaptive_step(y, dt, t_end - t, cfg, J, pot, taken);
                t += taken;
                ++accepted;
                if (cfg.renorm_interval > 0 &&
                    accepted % cfg.renorm_interval == 0) {
                    renormalize(y);
                }
                const PhasePoint p = to_phase_point(y, t);
                p.def.require_valid();
                traj.points.push_back(p);
                traj.monitors.push_back(monitor(p, J, pot));
            }
        }
    } catch (const PositivityViolation& e) {
        traj.failed = true;
        traj.failure = e.what();
    }
    return traj;
}

} // namespace klbody
