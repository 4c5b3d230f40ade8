#pragma once

#include <functional>
#include <map>
#include <string>

#include "klbody/errors.hpp"

namespace klbody {

/// In-plane potential value and its gradient in (alpha, xi, zeta).
struct PlaneEval {
    double value = 0.0;
    double d_alpha = 0.0;
    double d_xi = 0.0;
    double d_zeta = 0.0;
};

/// Out-of-plane potential value and derivative in rho.
struct RhoEval {
    double value = 0.0;
    double derivative = 0.0;
};

/// Confining out-of-plane potential a/rho + (b/2) rho^2; the 1/rho term
/// blocks unlimited compression, the quadratic one unlimited stretching.
/// Minimum at rho = (a/b)^(1/3). Throws DomainError for rho <= 0.
RhoEval v_rho_paper(double rho, double a, double b);

/// (c/2) [(xi-1)^2 + (zeta-1)^2 + 2 alpha^2]; minimum exactly at the
/// identity deformation.
PlaneEval v_plane_harmonic(double alpha, double xi, double zeta, double c);

/// (c/2) [(K1-1)^2 + (K2-1)^2] on the in-plane deformation invariants,
/// so the value is insensitive to both spatial and material rotations.
/// Evaluated through the smooth symmetric functions K1+K2 and K1*K2,
/// which keeps the gradient regular across the K1 == K2 locus.
PlaneEval v_plane_invariant(double alpha, double xi, double zeta, double c);

/**
 * A separated potential V = V_plane(alpha, xi, zeta) + V_rho(rho).
 *
 * The in-plane part is selectable: the two built-in models carry analytic
 * gradients; custom value-only callables get central-difference gradients
 * with step 1e-7 * max(1, |q|).
 */
class PotentialModel {
public:
    using PlaneFn = std::function<double(double, double, double)>;

    /// Harmonic-in-S in-plane model with stiffness c; out-of-plane (a, b).
    static PotentialModel harmonic(double c, double a, double b);

    /// Invariant-based in-plane model with stiffness c; out-of-plane (a, b).
    static PotentialModel invariant(double c, double a, double b);

    /// Custom in-plane potential (value only); gradient by central
    /// differences.
    static PotentialModel custom(PlaneFn plane, double a, double b);

    /// Builds a model from a name ("harmonic" or "invariant") and a
    /// parameter map; all named parameters must be positive.
    /// Throws DomainError on unknown names or non-positive parameters.
    static PotentialModel from_name(const std::string& name,
                                    const std::map<std::string, double>& params);

    PlaneEval plane(double alpha, double xi, double zeta) const;
    RhoEval rho(double rho) const;

    const std::map<std::string, double>& params() const { return params_; }
    const std::string& name() const { return name_; }

private:
    enum class Kind { Harmonic, Invariant, Custom };

    PotentialModel(Kind kind, std::string name, double a, double b, double c);

    Kind kind_;
    std::string name_;
    double a_ = 1.0;
    double b_ = 1.0;
    double c_ = 1.0;
    PlaneFn custom_plane_;
    std::map<std::string, double> params_;
};

} // namespace klbody
