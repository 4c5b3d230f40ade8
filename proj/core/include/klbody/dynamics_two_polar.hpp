#pragma once

#include "klbody/dynamics_polar.hpp"
#include "klbody/kinematics.hpp"

namespace klbody {

/// Generalized velocities of the two-polar chart: the R-top spin omega and
/// the diagonal-deformation / in-plane-angle rates.
struct TwoPolarVelocities {
    SpinVector omega;
    double lambda_dot = 0.0;
    double mu_dot = 0.0;
    double rho_dot = 0.0;
    double theta_dot = 0.0;
};

/// Canonical momenta of the isotropic two-polar chart: s conjugate to
/// omega, p's conjugate to (lambda, mu, rho, theta).
struct TwoPolarMomenta {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double p_lambda = 0.0;
    double p_mu = 0.0;
    double p_rho = 0.0;
    double p_theta = 0.0;
};

/// Kinetic energy in two-polar variables for general diagonal inertia
/// (J1 != J2 allowed). Used as an independent check of the polar-chart
/// kinetic energy: the two must agree after conversion.
double kinetic_energy_two_polar(const TwoPolarDeformation& def,
                                const TwoPolarVelocities& vel,
                                const InertiaTensor& J);

/// Canonical kinetic energy of the isotropic (J1 == J2 == j_plane) chart.
/// The chart degenerates at lambda == mu; within 1e-10 of that locus a
/// DegenerateDeformation is thrown rather than dividing by (lambda^2 -
/// mu^2)^2.
double kinetic_energy_canonical_isotropic(const TwoPolarDeformation& def,
                                          const TwoPolarMomenta& mom,
                                          double j_plane, double j3);

} // namespace klbody
