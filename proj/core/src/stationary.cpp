#include "klbody/stationary.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace klbody {

namespace {

using Eigen::VectorXd;

PolarDeformation def_from(const VectorXd& x) {
    PolarDeformation def;
    def.alpha = x(0);
    def.xi = x(1);
    def.zeta = x(2);
    def.rho = x(3);
    return def;
}

// Damped Newton with central-difference Jacobian, step-norm trust bound and
// residual-halving backtracking. The residual callback must throw
// PositivityViolation outside the valid domain; trial points that leave it
// are rejected by the line search.
struct NewtonResult {
    VectorXd x;
    double norm = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
};

NewtonResult damped_newton(const std::function<VectorXd(const VectorXd&)>& f,
                           VectorXd x0, const SolverOptions& opts) {
    NewtonResult best;
    VectorXd x = std::move(x0);
    VectorXd r = f(x);
    double norm = r.norm();
    best.x = x;
    best.norm = norm;

    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd jac(r.size(), n);

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (norm < opts.tol) {
            best.converged = true;
            break;
        }

        bool jac_ok = true;
        for (int j = 0; j < n && jac_ok; ++j) {
            const double h = opts.fd_step * std::max(1.0, std::abs(x(j)));
            VectorXd xp = x, xm = x;
            xp(j) += h;
            xm(j) -= h;
            try {
                jac.col(j) = (f(xp) - f(xm)) / (2.0 * h);
            } catch (const PositivityViolation&) {
                // fall back to a one-sided difference at domain edges
                try {
                    jac.col(j) = (f(xp) - r) / h;
                } catch (const PositivityViolation&) {
                    try {
                        jac.col(j) = (r - f(xm)) / h;
                    } catch (const PositivityViolation&) {
                        jac_ok = false;
                    }
                }
            }
        }
        if (!jac_ok) break;

        VectorXd delta = jac.colPivHouseholderQr().solve(-r);
        if (!delta.allFinite()) break;
        const double dmax = delta.cwiseAbs().maxCoeff();
        if (dmax > opts.max_step) delta *= opts.max_step / dmax;

        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= 1e-4) {
            const VectorXd x_try = x + lambda * delta;
            try {
                const VectorXd r_try = f(x_try);
                const double n_try = r_try.norm();
                if (n_try < norm) {
                    x = x_try;
                    r = r_try;
                    norm = n_try;
                    accepted = true;
                    break;
                }
            } catch (const PositivityViolation&) {
                // trial left the valid domain; shrink
            }
            lambda *= 0.5;
        }
        best.iterations = iter + 1;
        if (!accepted) break;
        if (norm < best.norm) {
            best.x = x;
            best.norm = norm;
        }
    }

    if (norm < opts.tol) {
        best.x = x;
        best.norm = norm;
        best.converged = true;
    }
    return best;
}

} // namespace

PhasePoint StationarySolution::phase_point(const RotationMatrix& L0) const {
    PhasePoint p;
    p.L = L0;
    p.def = def;
    p.mom = momenta;
    p.t = 0.0;
    return p;
}

Eigen::Matrix<double, 5, 1> residual_branch12(const PolarDeformation& def,
                                              double pi1, double pi2,
                                              const InertiaTensor& J,
                                              const PotentialModel& pot) {
    def.require_valid();
    J.require_valid();

    PolarMomenta mom;
    mom.pi1 = pi1;
    mom.pi2 = pi2;
    const AuxiliarySymbols sym = auxiliary_symbols(def, mom, J);
    const double xi2 = sym.Xi * sym.Xi;

    const double alpha = def.alpha;
    const double xi = def.xi;
    const double zeta = def.zeta;
    const double rho = def.rho;
    const double planar = xi * zeta - alpha * alpha;
    const double j3rho2 = J.j3 * rho * rho;
    const double d_coef =
        J.j1 * xi * xi + J.j2 * zeta * zeta + (J.j1 + J.j2) * alpha * alpha;

    const PlaneEval v = pot.plane(alpha, xi, zeta);
    const RhoEval vr = pot.rho(rho);

    Eigen::Matrix<double, 5, 1> r;
    r(0) = v.d_alpha +
           ((J.j2 * pi1 * pi1 + J.j1 * pi2 * pi2) * alpha +
            (J.j1 * xi + J.j2 * zeta) * pi1 * pi2) /
               sym.Xi -
           (2.0 * J.j1 * J.j2 * alpha * (alpha * alpha - xi * zeta) +
            (J.j1 + J.j2) * alpha * j3rho2) /
               xi2 * sym.Omega;
    r(1) = v.d_xi +
           (J.j1 * xi * pi1 * pi1 + J.j1 * alpha * pi1 * pi2) / sym.Xi -
           (J.j1 * J.j2 * zeta * planar + J.j1 * xi * j3rho2) / xi2 * sym.Omega;
    r(2) = v.d_zeta +
           (J.j2 * zeta * pi2 * pi2 + J.j2 * alpha * pi1 * pi2) / sym.Xi -
           (J.j1 * J.j2 * xi * planar + J.j2 * zeta * j3rho2) / xi2 * sym.Omega;
    r(3) = vr.derivative + J.j3 * rho * (pi1 * pi1 + pi2 * pi2) / sym.Xi -
           J.j3 * rho * (d_coef + 2.0 * J.j3 * rho * rho) / xi2 * sym.Omega;
    r(4) = (J.j1 * xi + J.j2 * zeta) * alpha * (pi1 * pi1 - pi2 * pi2) +
           (J.j1 * (alpha * alpha - xi * xi) +
            J.j2 * (zeta * zeta - alpha * alpha)) *
               pi1 * pi2;
    return r;
}

Branch3Residual residual_branch3(const PolarDeformation& def, double pi3,
                                 const InertiaTensor& J,
                                 const PotentialModel& pot) {
    def.require_valid();
    J.require_valid();

    const double alpha = def.alpha;
    const double xi = def.xi;
    const double zeta = def.zeta;
    const double den =
        J.j1 * xi * xi + J.j2 * zeta * zeta + (J.j1 + J.j2) * alpha * alpha;

    Branch3Residual out;
    out.p_alpha = (J.j2 * zeta - J.j1 * xi) * pi3 / den;
    out.p_xi = J.j1 * alpha * pi3 / den;
    out.p_zeta = -J.j2 * alpha * pi3 / den;

    const double x = pi3 + alpha * (out.p_zeta - out.p_xi);
    const double sum = xi + zeta;
    const double w = J.j1 * J.j2 * sum * sum;
    const double w3 = w * sum;
    const double e = J.j1 * xi - J.j2 * zeta;
    const double upsilon = (J.j1 + J.j2) * x * x +
                           (J.j1 * xi * xi + J.j2 * zeta * zeta) * out.p_alpha *
                               out.p_alpha +
                           2.0 * e * x * out.p_alpha;
    const double nu3 = ((J.j1 + J.j2) * x + e * out.p_alpha) / w;

    const PlaneEval v = pot.plane(alpha, xi, zeta);
    const RhoEval vr = pot.rho(def.rho);

    out.residual(0) = v.d_alpha - nu3 * (out.p_xi - out.p_zeta);
    out.residual(1) =
        v.d_xi +
        (J.j1 * xi * out.p_alpha * out.p_alpha + J.j1 * x * out.p_alpha) / w -
        upsilon / w3;
    out.residual(2) =
        v.d_zeta +
        (J.j2 * zeta * out.p_alpha * out.p_alpha - J.j2 * x * out.p_alpha) / w -
        upsilon / w3;
    out.residual(3) = vr.derivative;
    return out;
}

StationarySolution solve_stationary(Branch branch, double spin_value,
                                    const InertiaTensor& J,
                                    const PotentialModel& pot,
                                    const PolarDeformation& guess,
                                    const SolverOptions& opts) {
    guess.require_valid();
    J.require_valid();

    StationarySolution sol;
    sol.branch = branch;

    if (branch == Branch::axis3) {
        VectorXd x0(4);
        x0 << guess.alpha, guess.xi, guess.zeta, guess.rho;
        auto f = [&](const VectorXd& x) -> VectorXd {
            return residual_branch3(def_from(x), spin_value, J, pot).residual;
        };
        const NewtonResult res = damped_newton(f, x0, opts);
        sol.def = def_from(res.x);
        const Branch3Residual rb = residual_branch3(sol.def, spin_value, J, pot);
        sol.momenta.pi3 = spin_value;
        sol.momenta.p_alpha = rb.p_alpha;
        sol.momenta.p_xi = rb.p_xi;
        sol.momenta.p_zeta = rb.p_zeta;
        sol.residual_norm = res.norm;
        sol.converged = res.converged;
        sol.iterations = res.iterations;
        return sol;
    }

    // Branches 1-2: the spin momentum of the rotation axis is fixed and the
    // other in-plane one joins the unknowns, starting from zero.
    const bool spin_is_pi1 = branch == Branch::axis1;
    VectorXd x0(5);
    x0 << guess.alpha, guess.xi, guess.zeta, guess.rho, 0.0;
    auto f = [&](const VectorXd& x) -> VectorXd {
        const double pi1 = spin_is_pi1 ? spin_value : x(4);
        const double pi2 = spin_is_pi1 ? x(4) : spin_value;
        return residual_branch12(def_from(x), pi1, pi2, J, pot);
    };
    const NewtonResult res = damped_newton(f, x0, opts);
    sol.def = def_from(res.x);
    sol.momenta.pi1 = spin_is_pi1 ? spin_value : res.x(4);
    sol.momenta.pi2 = spin_is_pi1 ? res.x(4) : spin_value;
    sol.residual_norm = res.norm;
    sol.converged = res.converged;
    sol.iterations = res.iterations;
    return sol;
}

StationarySolution solve_stationary_fixed_spins(Branch branch, double pi1,
                                                double pi2,
                                                const InertiaTensor& J,
                                                const PotentialModel& pot,
                                                const PolarDeformation& guess,
                                                const SolverOptions& opts) {
    if (branch == Branch::axis3) {
        throw DomainError(
            "fixed-spins mode applies to branches axis1/axis2 only");
    }
    guess.require_valid();
    J.require_valid();

    VectorXd x0(4);
    x0 << guess.alpha, guess.xi, guess.zeta, guess.rho;
    auto f = [&](const VectorXd& x) -> VectorXd {
        return residual_branch12(def_from(x), pi1, pi2, J, pot)
            .head<4>()
            .eval();
    };
    const NewtonResult res = damped_newton(f, x0, opts);

    StationarySolution sol;
    sol.branch = branch;
    sol.def = def_from(res.x);
    sol.momenta.pi1 = pi1;
    sol.momenta.pi2 = pi2;
    // Convergence is judged on the full residual including compatibility:
    // arbitrary (pi1, pi2) pairs need not admit a stationary solution.
    sol.residual_norm = residual_branch12(sol.def, pi1, pi2, J, pot).norm();
    sol.converged = res.converged && sol.residual_norm < opts.tol;
    sol.iterations = res.iterations;
    return sol;
}

Mat3 StationaryOrbit::at(double t) const {
    return exp_spin(SpinVector::from_matrix(nu_hat), t) * phi0;
}

StationaryOrbit make_stationary_orbit(const RotationMatrix& L0,
                                      const SpinVector& nu,
                                      const PolarDeformation& S) {
    S.require_valid();
    StationaryOrbit orbit;
    orbit.phi0 = L0.matrix() * S.matrix();
    orbit.nu_hat = L0.matrix() * nu.to_matrix() * L0.matrix().transpose();
    return orbit;
}

Mat3 stationary_orbit(const RotationMatrix& L0, const SpinVector& nu,
                      const PolarDeformation& S, double t) {
    return make_stationary_orbit(L0, nu, S).at(t);
}

} // namespace klbody
