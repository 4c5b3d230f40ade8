#pragma once

#include "klbody/kinematics.hpp"
#include "klbody/potentials.hpp"

namespace klbody {

/// Diagonal inertia coefficients, all strictly positive.
struct InertiaTensor {
    double j1 = 1.0;
    double j2 = 1.0;
    double j3 = 1.0;

    bool valid() const { return j1 > 0.0 && j2 > 0.0 && j3 > 0.0; }
    void require_valid() const;
};

/// Generalized velocities of the polar chart: the L-top spin nu and the
/// deformation rates.
struct PolarVelocities {
    SpinVector nu;
    double alpha_dot = 0.0;
    double xi_dot = 0.0;
    double zeta_dot = 0.0;
    double rho_dot = 0.0;
};

/// Canonical momenta conjugate to (nu1, nu2, nu3; alpha, xi, zeta, rho).
/// pi1..pi3 are the spin momenta.
struct PolarMomenta {
    double pi1 = 0.0;
    double pi2 = 0.0;
    double pi3 = 0.0;
    double p_alpha = 0.0;
    double p_xi = 0.0;
    double p_zeta = 0.0;
    double p_rho = 0.0;

    /// pi1^2 + pi2^2 + pi3^2
    double spin_squared() const { return pi1 * pi1 + pi2 * pi2 + pi3 * pi3; }
};

/// Full phase-space state of the polar-chart dynamics.
struct PhasePoint {
    RotationMatrix L;
    PolarDeformation def;
    PolarMomenta mom;
    double t = 0.0;
};

/**
 * The symbols Xi, Omega, Upsilon that organize the canonical kinetic energy:
 *
 *   Xi      = J1 J2 (alpha^2 - xi zeta)^2
 *             + [J1 xi^2 + J2 zeta^2 + (J1+J2) alpha^2] J3 rho^2
 *             + J3^2 rho^4                          (> 0 on valid states)
 *   Omega   = quadratic form in (pi1, pi2)
 *   Upsilon = quadratic form in (pi3 + alpha (p_zeta - p_xi), p_alpha)
 */
struct AuxiliarySymbols {
    double Xi = 0.0;
    double Omega = 0.0;
    double Upsilon = 0.0;
};

/// Kinetic energy split into its three displayed pieces.
struct KineticEnergyParts {
    double total = 0.0;
    double rotational = 0.0;     // angular velocity coupled to the deformation state
    double coupling = 0.0;       // angular velocity coupled to deformation rates
    double deformational = 0.0;  // pure deformation oscillations
};

KineticEnergyParts kinetic_energy_velocities(const PolarDeformation& def,
                                             const PolarVelocities& vel,
                                             const InertiaTensor& J);

/// Velocities -> canonical momenta (linear in the velocities at fixed def).
PolarMomenta legendre_forward(const PolarDeformation& def,
                              const PolarVelocities& vel,
                              const InertiaTensor& J);

/// Canonical momenta -> velocities; exact inverse of legendre_forward.
/// Throws SingularMassMatrix if a denominator collapses (cannot happen on a
/// valid deformation).
PolarVelocities legendre_inverse(const PolarDeformation& def,
                                 const PolarMomenta& mom,
                                 const InertiaTensor& J);

AuxiliarySymbols auxiliary_symbols(const PolarDeformation& def,
                                   const PolarMomenta& mom,
                                   const InertiaTensor& J);

/// Kinetic energy in canonical variables; nonnegative, and equal to the
/// velocity form evaluated at legendre_inverse(mom).
double kinetic_energy_canonical(const PolarDeformation& def,
                                const PolarMomenta& mom,
                                const InertiaTensor& J);

/// H = T(canonical) + V_plane(alpha, xi, zeta) + V_rho(rho).
double hamiltonian(const PolarDeformation& def, const PolarMomenta& mom,
                   const InertiaTensor& J, const PotentialModel& pot);

/// The rotation-independent part of the equations of motion: coordinate
/// rates dH/dp and momentum rates (-dH/dq resp. the so(3) bracket for the
/// spin momenta).
struct CanonicalRates {
    PolarVelocities velocities;
    PolarMomenta momenta_dot;
};

CanonicalRates canonical_rates(const PolarDeformation& def,
                               const PolarMomenta& mom, const InertiaTensor& J,
                               const PotentialModel& pot);

/// Time derivative of a phase point. velocities holds d/dt of the
/// configuration variables (and the spin nu that generates L_dot = L nu).
struct PhaseDerivative {
    Mat3 L_dot;
    PolarVelocities velocities;
    PolarMomenta momenta_dot;
};

/// Right-hand side of the canonical equations of motion: canonical_rates
/// plus L_dot = L nu.
PhaseDerivative eom_rhs(const PhasePoint& p, const InertiaTensor& J,
                        const PotentialModel& pot);

} // namespace klbody
