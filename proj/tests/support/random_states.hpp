#pragma once

#include <random>

#include "klbody/dynamics_polar.hpp"
#include "klbody/dynamics_two_polar.hpp"
#include "klbody/kinematics.hpp"

// Shared draw helpers for randomized tests. Every suite seeds its own
// std::mt19937_64 so runs are reproducible.
namespace klbody::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Interior of the valid domain: stretches in [0.5, 2], shear bounded away
// from the positivity boundary.
inline PolarDeformation random_polar_deformation(std::mt19937_64& rng) {
    PolarDeformation def;
    def.xi = uniform(rng, 0.5, 2.0);
    def.zeta = uniform(rng, 0.5, 2.0);
    def.alpha = uniform(rng, -0.7, 0.7) * std::sqrt(def.xi * def.zeta);
    def.rho = uniform(rng, 0.5, 2.0);
    return def;
}

inline PolarMomenta random_polar_momenta(std::mt19937_64& rng) {
    PolarMomenta m;
    m.pi1 = uniform(rng, -1.0, 1.0);
    m.pi2 = uniform(rng, -1.0, 1.0);
    m.pi3 = uniform(rng, -1.0, 1.0);
    m.p_alpha = uniform(rng, -1.0, 1.0);
    m.p_xi = uniform(rng, -1.0, 1.0);
    m.p_zeta = uniform(rng, -1.0, 1.0);
    m.p_rho = uniform(rng, -1.0, 1.0);
    return m;
}

inline PolarVelocities random_polar_velocities(std::mt19937_64& rng) {
    PolarVelocities v;
    v.nu.nu1 = uniform(rng, -1.0, 1.0);
    v.nu.nu2 = uniform(rng, -1.0, 1.0);
    v.nu.nu3 = uniform(rng, -1.0, 1.0);
    v.alpha_dot = uniform(rng, -1.0, 1.0);
    v.xi_dot = uniform(rng, -1.0, 1.0);
    v.zeta_dot = uniform(rng, -1.0, 1.0);
    v.rho_dot = uniform(rng, -1.0, 1.0);
    return v;
}

// Generic anisotropic inertia: J1 and J2 kept apart so the general-J code
// paths are exercised.
inline InertiaTensor random_inertia(std::mt19937_64& rng) {
    InertiaTensor J;
    J.j1 = uniform(rng, 0.5, 2.5);
    do {
        J.j2 = uniform(rng, 0.5, 2.5);
    } while (std::abs(J.j1 - J.j2) < 0.1);
    J.j3 = uniform(rng, 0.5, 2.5);
    return J;
}

inline RotationMatrix random_rotation(std::mt19937_64& rng) {
    Vec3 axis(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0),
              uniform(rng, -1.0, 1.0));
    if (axis.norm() < 1e-8) axis = Vec3::UnitX();
    axis.normalize();
    return RotationMatrix::from_rotation_vector(axis * uniform(rng, 0.0, 3.1));
}

// lambda > mu strictly, so the two-polar chart is away from its
// degenerate locus.
inline TwoPolarDeformation random_two_polar_deformation(std::mt19937_64& rng) {
    TwoPolarDeformation def;
    def.lambda = uniform(rng, 1.1, 2.5);
    def.mu = uniform(rng, 0.3, def.lambda - 0.05);
    def.rho = uniform(rng, 0.5, 2.0);
    def.theta = uniform(rng, 0.0, 3.1);
    return def;
}

inline TwoPolarVelocities random_two_polar_velocities(std::mt19937_64& rng) {
    TwoPolarVelocities v;
    v.omega.nu1 = uniform(rng, -1.0, 1.0);
    v.omega.nu2 = uniform(rng, -1.0, 1.0);
    v.omega.nu3 = uniform(rng, -1.0, 1.0);
    v.lambda_dot = uniform(rng, -1.0, 1.0);
    v.mu_dot = uniform(rng, -1.0, 1.0);
    v.rho_dot = uniform(rng, -1.0, 1.0);
    v.theta_dot = uniform(rng, -1.0, 1.0);
    return v;
}

} // namespace klbody::testing
