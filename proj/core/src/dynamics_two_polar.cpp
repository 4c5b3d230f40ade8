#include "klbody/dynamics_two_polar.hpp"

#include <cmath>
#include <sstream>

namespace klbody {

double kinetic_energy_two_polar(const TwoPolarDeformation& def,
                                const TwoPolarVelocities& vel,
                                const InertiaTensor& J) {
    def.require_valid();
    J.require_valid();
    const double c2 = std::cos(def.theta) * std::cos(def.theta);
    const double s2 = std::sin(def.theta) * std::sin(def.theta);
    const double sin2t = std::sin(2.0 * def.theta);
    const double jc = J.j1 * c2 + J.j2 * s2; // pairs with lambda
    const double js = J.j1 * s2 + J.j2 * c2; // pairs with mu
    const double lam = def.lambda;
    const double mu = def.mu;
    const double rho2 = def.rho * def.rho;
    const SpinVector& w = vel.omega;

    double t = 0.5 * jc * vel.lambda_dot * vel.lambda_dot +
               0.5 * js * vel.mu_dot * vel.mu_dot +
               0.5 * J.j3 * vel.rho_dot * vel.rho_dot;
    t += 0.5 * (js * mu * mu + J.j3 * rho2) * w.nu1 * w.nu1;
    t += 0.5 * (jc * lam * lam + J.j3 * rho2) * w.nu2 * w.nu2;
    t += (J.j1 + J.j2) * lam * mu * w.nu3 * vel.theta_dot;
    t += (J.j1 - J.j2) * sin2t *
         ((mu * vel.mu_dot - lam * vel.lambda_dot) * vel.theta_dot +
          (lam * vel.mu_dot - mu * vel.lambda_dot) * w.nu3 +
          lam * mu * w.nu1 * w.nu2);
    t += 0.5 * (jc * lam * lam + js * mu * mu) * w.nu3 * w.nu3;
    t += 0.5 * (js * lam * lam + jc * mu * mu) * vel.theta_dot * vel.theta_dot;
    return t;
}

double kinetic_energy_canonical_isotropic(const TwoPolarDeformation& def,
                                          const TwoPolarMomenta& mom,
                                          double j_plane, double j3) {
    def.require_valid();
    if (!(j_plane > 0.0) || !(j3 > 0.0)) {
        throw PositivityViolation("inertia coefficients must be > 0");
    }
    const double lam = def.lambda;
    const double mu = def.mu;
    if (std::abs(lam - mu) <= 1e-10) {
        std::ostringstream msg;
        msg << "two-polar chart degenerates at lambda == mu (lambda=" << lam
            << ", mu=" << mu << ")";
        throw DegenerateDeformation(msg.str());
    }
    const double rho2 = def.rho * def.rho;
    const double lm2 = lam * lam - mu * mu;

    double t = 0.5 * mom.s1 * mom.s1 / (j_plane * mu * mu + j3 * rho2);
    t += 0.5 * mom.s2 * mom.s2 / (j_plane * lam * lam + j3 * rho2);
    t += ((lam * lam + mu * mu) * (mom.s3 * mom.s3 + mom.p_theta * mom.p_theta) -
          4.0 * lam * mu * mom.p_theta * mom.s3) /
         (2.0 * j_plane * lm2 * lm2);
    t += 0.5 * (mom.p_lambda * mom.p_lambda + mom.p_mu * mom.p_mu) / j_plane;
    t += 0.5 * mom.p_rho * mom.p_rho / j3;
    return t;
}

} // namespace klbody
