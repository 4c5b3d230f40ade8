#pragma once

#include "klbody/dynamics_polar.hpp"

namespace klbody {

/// Which body axis carries the stationary rotation.
enum class Branch { axis1 = 1, axis2 = 2, axis3 = 3 };

/**
 * A stationary-rotation solution: the body spins at a constant rate about
 * one axis while the deformation state (hence the Green tensor) stays
 * constant. Spin and deformation are linked by the algebraic relations
 * solved by solve_stationary.
 *
 * Branches axis1/axis2 have pi3 = p_alpha = p_xi = p_zeta = p_rho = 0;
 * branch axis3 has pi1 = pi2 = p_rho = 0 with (p_alpha, p_xi, p_zeta)
 * derived from pi3.
 */
struct StationarySolution {
    Branch branch = Branch::axis3;
    PolarDeformation def;
    PolarMomenta momenta; // full momentum vector including derived entries
    double residual_norm = 0.0;
    bool converged = false;
    int iterations = 0;

    /// Assembles the full phase point (t = 0) for verification runs.
    PhasePoint phase_point(const RotationMatrix& L0 = RotationMatrix()) const;
};

/// Residual of the branch-1/2 stationary relations at (def, pi1, pi2):
/// components 0-3 are the four force-balance equations (in-plane gradient
/// and rho), component 4 the compatibility condition
///   (J1 xi + J2 zeta) alpha (pi1^2 - pi2^2)
///     + [J1 (alpha^2 - xi^2) + J2 (zeta^2 - alpha^2)] pi1 pi2.
/// All five vanish at a stationary solution.
Eigen::Matrix<double, 5, 1> residual_branch12(const PolarDeformation& def,
                                              double pi1, double pi2,
                                              const InertiaTensor& J,
                                              const PotentialModel& pot);

/// Branch-3 residual at (def, pi3), together with the momenta that a
/// constant deformation forces:
///   p_alpha = (J2 zeta - J1 xi) pi3 / den,   p_xi =  J1 alpha pi3 / den,
///   p_zeta  = -J2 alpha pi3 / den,           den  = J1 xi^2 + J2 zeta^2
///                                                   + (J1+J2) alpha^2.
struct Branch3Residual {
    Eigen::Matrix<double, 4, 1> residual;
    double p_alpha = 0.0;
    double p_xi = 0.0;
    double p_zeta = 0.0;
};

Branch3Residual residual_branch3(const PolarDeformation& def, double pi3,
                                 const InertiaTensor& J,
                                 const PotentialModel& pot);

struct SolverOptions {
    int max_iter = 200;
    double tol = 1e-12;      // residual norm for convergence
    double fd_step = 1e-6;   // Jacobian finite-difference step (scaled)
    double max_step = 5.0;   // trust bound on the Newton update (inf norm)
};

/**
 * Damped Newton solve of the stationary relations for the given branch.
 *
 * spin_value fixes pi1 (axis1), pi2 (axis2) or pi3 (axis3). For branches
 * 1-2 the other in-plane spin momentum joins (alpha, xi, zeta, rho) as an
 * unknown, making the five-equation system square; for branch 3 the four
 * deformation variables solve the four relations.
 *
 * Non-convergence is reported through the returned `converged` flag and
 * best iterate, not an exception. Throws PositivityViolation only for an
 * invalid initial guess.
 */
StationarySolution solve_stationary(Branch branch, double spin_value,
                                    const InertiaTensor& J,
                                    const PotentialModel& pot,
                                    const PolarDeformation& guess,
                                    const SolverOptions& opts = {});

/// Branch-1/2 solve with both spin momenta fixed by the caller: the square
/// system is the four force-balance relations over (alpha, xi, zeta, rho);
/// the reported residual_norm still includes the compatibility component,
/// so inconsistent (pi1, pi2) pairs come back non-converged.
StationarySolution solve_stationary_fixed_spins(Branch branch, double pi1,
                                                double pi2,
                                                const InertiaTensor& J,
                                                const PotentialModel& pot,
                                                const PolarDeformation& guess,
                                                const SolverOptions& opts = {});

/// Rigid orbit of a stationary solution: the configuration rotates about a
/// spatially fixed axis while Phi^T Phi stays constant.
struct StationaryOrbit {
    Mat3 phi0;   // L0 S
    Mat3 nu_hat; // spatial angular velocity, L0 nu L0^-1 (antisymmetric)

    /// exp(nu_hat t) phi0
    Mat3 at(double t) const;
};

StationaryOrbit make_stationary_orbit(const RotationMatrix& L0,
                                      const SpinVector& nu,
                                      const PolarDeformation& S);

/// Convenience: Phi(t) = exp(nu_hat t) L0 S.
Mat3 stationary_orbit(const RotationMatrix& L0, const SpinVector& nu,
                      const PolarDeformation& S, double t);

} // namespace klbody
