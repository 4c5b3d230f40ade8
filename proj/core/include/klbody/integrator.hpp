#pragma once

#include <string>
#include <vector>

#include "klbody/dynamics_polar.hpp"

namespace klbody {

enum class Scheme {
    rk4,          // classical fixed-step 4th order
    rk45_adaptive // embedded 4(5) pair with step-size control
};

struct IntegratorConfig {
    double dt = 1e-3;    // fixed step (rk4) or initial step (adaptive)
    long n_steps = 1000; // rk4 step count; adaptive integrates to n_steps*dt
    Scheme scheme = Scheme::rk4;
    double rel_tol = 1e-10; // adaptive only
    double abs_tol = 1e-12; // adaptive only
    int renorm_interval = 100; // steps between rotation reprojections; 0 = never

    bool valid() const;
    void require_valid() const;
};

/// Conserved-quantity record taken at every stored sample.
struct MonitorSample {
    double t = 0.0;
    double energy = 0.0;
    double spin_squared = 0.0; // pi1^2 + pi2^2 + pi3^2
    double k1 = 0.0, k2 = 0.0, k3 = 0.0;
    double orthogonality_defect = 0.0;
};

/// Time-ordered simulation output. When the flow leaves the valid
/// deformation domain the trajectory is returned up to the failure point
/// with `failed` set and the diagnostic in `failure`.
struct Trajectory {
    std::vector<PhasePoint> points;
    std::vector<MonitorSample> monitors;
    bool failed = false;
    std::string failure;
};

/// One integration step (one rk4 step, or one accepted adaptive step
/// starting from trial size cfg.dt). Throws PositivityViolation when the
/// step leaves the valid deformation domain: the step size is too large or
/// the potential does not confine.
PhasePoint step(const PhasePoint& p, const IntegratorConfig& cfg,
                const InertiaTensor& J, const PotentialModel& pot);

/// Integrates p0 over n_steps (rk4) or to t0 + n_steps*dt (adaptive),
/// recording every accepted step and its monitors.
Trajectory simulate(const PhasePoint& p0, const IntegratorConfig& cfg,
                    const InertiaTensor& J, const PotentialModel& pot);

} // namespace klbody
