#include "klbody/dynamics_polar.hpp"

#include <cmath>
#include <sstream>

namespace klbody {

namespace {

constexpr double kSingularTol = 1e-14;

// Recurring coefficients of the kinetic-energy quadratic form. a, b, d are
// the diagonal spin blocks, c the nu1-nu2 cross coupling, e the nu3 to
// alpha-rate coupling, w the shared (xi + zeta)^2 denominator.
struct Coefficients {
    double a, b, c, d, e, w, xi_sym;

    Coefficients(const PolarDeformation& s, const InertiaTensor& J) {
        const double alpha2 = s.alpha * s.alpha;
        const double rho2 = s.rho * s.rho;
        a = J.j1 * alpha2 + J.j2 * s.zeta * s.zeta + J.j3 * rho2;
        b = J.j1 * s.xi * s.xi + J.j2 * alpha2 + J.j3 * rho2;
        c = (J.j1 * s.xi + J.j2 * s.zeta) * s.alpha;
        d = J.j1 * s.xi * s.xi + J.j2 * s.zeta * s.zeta +
            (J.j1 + J.j2) * alpha2;
        e = J.j1 * s.xi - J.j2 * s.zeta;
        const double sum = s.xi + s.zeta;
        w = J.j1 * J.j2 * sum * sum;
        const double planar = alpha2 - s.xi * s.zeta;
        xi_sym = J.j1 * J.j2 * planar * planar + d * J.j3 * rho2 +
                 J.j3 * J.j3 * rho2 * rho2;
    }
};

} // namespace

void InertiaTensor::require_valid() const {
    if (valid()) return;
    std::ostringstream msg;
    msg << "inertia coefficients must be > 0, got (" << j1 << ", " << j2
        << ", " << j3 << ")";
    throw PositivityViolation(msg.str());
}

KineticEnergyParts kinetic_energy_velocities(const PolarDeformation& def,
                                             const PolarVelocities& vel,
                                             const InertiaTensor& J) {
    def.require_valid();
    J.require_valid();
    const Coefficients k(def, J);
    const SpinVector& nu = vel.nu;

    KineticEnergyParts out;
    out.rotational = 0.5 * k.a * nu.nu1 * nu.nu1 +
                     0.5 * k.b * nu.nu2 * nu.nu2 +
                     0.5 * k.d * nu.nu3 * nu.nu3 - k.c * nu.nu1 * nu.nu2;
    out.coupling = (J.j1 * def.alpha * vel.xi_dot -
                    J.j2 * def.alpha * vel.zeta_dot - k.e * vel.alpha_dot) *
                   nu.nu3;
    out.deformational = 0.5 * (J.j1 + J.j2) * vel.alpha_dot * vel.alpha_dot +
                        0.5 * J.j1 * vel.xi_dot * vel.xi_dot +
                        0.5 * J.j2 * vel.zeta_dot * vel.zeta_dot +
                        0.5 * J.j3 * vel.rho_dot * vel.rho_dot;
    out.total = out.rotational + out.coupling + out.deformational;
    return out;
}

PolarMomenta legendre_forward(const PolarDeformation& def,
                              const PolarVelocities& vel,
                              const InertiaTensor& J) {
    def.require_valid();
    J.require_valid();
    const Coefficients k(def, J);
    const SpinVector& nu = vel.nu;

    PolarMomenta mom;
    mom.pi1 = k.a * nu.nu1 - k.c * nu.nu2;
    mom.pi2 = k.b * nu.nu2 - k.c * nu.nu1;
    mom.pi3 = k.d * nu.nu3 + J.j1 * def.alpha * vel.xi_dot -
              J.j2 * def.alpha * vel.zeta_dot - k.e * vel.alpha_dot;
    mom.p_alpha = (J.j1 + J.j2) * vel.alpha_dot - k.e * nu.nu3;
    mom.p_xi = J.j1 * (vel.xi_dot + def.alpha * nu.nu3);
    mom.p_zeta = J.j2 * (vel.zeta_dot - def.alpha * nu.nu3);
    mom.p_rho = J.j3 * vel.rho_dot;
    return mom;
}

PolarVelocities legendre_inverse(const PolarDeformation& def,
                                 const PolarMomenta& mom,
                                 const InertiaTensor& J) {
    def.require_valid();
    J.require_valid();
    const Coefficients k(def, J);
    if (std::abs(k.xi_sym) < kSingularTol || std::abs(k.w) < kSingularTol) {
        std::ostringstream msg;
        msg << "mass-matrix denominator collapsed (Xi=" << k.xi_sym
            << ", J1 J2 (xi+zeta)^2=" << k.w << ")";
        throw SingularMassMatrix(msg.str());
    }

    const double x = mom.pi3 + def.alpha * (mom.p_zeta - mom.p_xi);

    PolarVelocities vel;
    vel.nu.nu1 = (k.b * mom.pi1 + k.c * mom.pi2) / k.xi_sym;
    vel.nu.nu2 = (k.c * mom.pi1 + k.a * mom.pi2) / k.xi_sym;
    vel.nu.nu3 = ((J.j1 + J.j2) * x + k.e * mom.p_alpha) / k.w;
    vel.alpha_dot =
        (k.e * x + (J.j1 * def.xi * def.xi + J.j2 * def.zeta * def.zeta) *
                       mom.p_alpha) /
        k.w;
    vel.xi_dot = mom.p_xi / J.j1 - def.alpha * vel.nu.nu3;
    vel.zeta_dot = mom.p_zeta / J.j2 + def.alpha * vel.nu.nu3;
    vel.rho_dot = mom.p_rho / J.j3;
    return vel;
}

AuxiliarySymbols auxiliary_symbols(const PolarDeformation& def,
                                   const PolarMomenta& mom,
                                   const InertiaTensor& J) {
    def.require_valid();
    J.require_valid();
    const Coefficients k(def, J);
    const double x = mom.pi3 + def.alpha * (mom.p_zeta - mom.p_xi);

    AuxiliarySymbols out;
    out.Xi = k.xi_sym;
    out.Omega = k.b * mom.pi1 * mom.pi1 + 2.0 * k.c * mom.pi1 * mom.pi2 +
                k.a * mom.pi2 * mom.pi2;
    out.Upsilon =
        (J.j1 + J.j2) * x * x +
        (J.j1 * def.xi * def.xi + J.j2 * def.zeta * def.zeta) * mom.p_alpha *
            mom.p_alpha +
        2.0 * k.e * x * mom.p_alpha;
    return out;
}

double kinetic_energy_canonical(const PolarDeformation& def,
                                const PolarMomenta& mom,
                                const InertiaTensor& J) {
    const AuxiliarySymbols sym = auxiliary_symbols(def, mom, J);
    const Coefficients k(def, J);
    return 0.5 * sym.Omega / sym.Xi + 0.5 * sym.Upsilon / k.w +
           0.5 * mom.p_xi * mom.p_xi / J.j1 +
           0.5 * mom.p_zeta * mom.p_zeta / J.j2 +
           0.5 * mom.p_rho * mom.p_rho / J.j3;
}

double hamiltonian(const PolarDeformation& def, const PolarMomenta& mom,
                   const InertiaTensor& J, const PotentialModel& pot) {
    return kinetic_energy_canonical(def, mom, J) +
           pot.plane(def.alpha, def.xi, def.zeta).value +
           pot.rho(def.rho).value;
}

CanonicalRates canonical_rates(const PolarDeformation& s,
                               const PolarMomenta& m, const InertiaTensor& J,
                               const PotentialModel& pot) {
    const Coefficients k(s, J);
    const AuxiliarySymbols sym = auxiliary_symbols(s, m, J);
    const double xi2 = sym.Xi * sym.Xi;
    const double x = m.pi3 + s.alpha * (m.p_zeta - m.p_xi);
    const double planar = s.xi * s.zeta - s.alpha * s.alpha;
    const double sum = s.xi + s.zeta;
    const double w3 = k.w * sum; // J1 J2 (xi + zeta)^3

    CanonicalRates out;
    out.velocities = legendre_inverse(s, m, J);
    const SpinVector& nu = out.velocities.nu;

    // Spin-momentum rates: dpi/dt = pi x nu (so(3) bracket structure).
    out.momenta_dot.pi1 = m.pi2 * nu.nu3 - m.pi3 * nu.nu2;
    out.momenta_dot.pi2 = m.pi3 * nu.nu1 - m.pi1 * nu.nu3;
    out.momenta_dot.pi3 = m.pi1 * nu.nu2 - m.pi2 * nu.nu1;

    const PlaneEval v = pot.plane(s.alpha, s.xi, s.zeta);
    const RhoEval vr = pot.rho(s.rho);

    out.momenta_dot.p_alpha =
        -v.d_alpha -
        ((J.j2 * m.pi1 * m.pi1 + J.j1 * m.pi2 * m.pi2) * s.alpha +
         (J.j1 * s.xi + J.j2 * s.zeta) * m.pi1 * m.pi2) /
            sym.Xi +
        (2.0 * J.j1 * J.j2 * s.alpha * (s.alpha * s.alpha - s.xi * s.zeta) +
         (J.j1 + J.j2) * s.alpha * J.j3 * s.rho * s.rho) /
            xi2 * sym.Omega -
        nu.nu3 * (m.p_zeta - m.p_xi);

    out.momenta_dot.p_xi =
        -v.d_xi -
        (J.j1 * s.xi * m.pi1 * m.pi1 + J.j1 * s.alpha * m.pi1 * m.pi2) /
            sym.Xi +
        (J.j1 * J.j2 * s.zeta * planar + J.j1 * s.xi * J.j3 * s.rho * s.rho) /
            xi2 * sym.Omega -
        (J.j1 * s.xi * m.p_alpha * m.p_alpha + J.j1 * x * m.p_alpha) / k.w +
        sym.Upsilon / w3;

    out.momenta_dot.p_zeta =
        -v.d_zeta -
        (J.j2 * s.zeta * m.pi2 * m.pi2 + J.j2 * s.alpha * m.pi1 * m.pi2) /
            sym.Xi +
        (J.j1 * J.j2 * s.xi * planar + J.j2 * s.zeta * J.j3 * s.rho * s.rho) /
            xi2 * sym.Omega -
        (J.j2 * s.zeta * m.p_alpha * m.p_alpha - J.j2 * x * m.p_alpha) / k.w +
        sym.Upsilon / w3;

    out.momenta_dot.p_rho =
        -vr.derivative -
        J.j3 * s.rho * (m.pi1 * m.pi1 + m.pi2 * m.pi2) / sym.Xi +
        J.j3 * s.rho * (k.d + 2.0 * J.j3 * s.rho * s.rho) / xi2 * sym.Omega;

    return out;
}

PhaseDerivative eom_rhs(const PhasePoint& p, const InertiaTensor& J,
                        const PotentialModel& pot) {
    const CanonicalRates rates = canonical_rates(p.def, p.mom, J, pot);
    PhaseDerivative out;
    out.velocities = rates.velocities;
    out.momenta_dot = rates.momenta_dot;
    out.L_dot = p.L.matrix() * rates.velocities.nu.to_matrix();
    return out;
}

} // namespace klbody
