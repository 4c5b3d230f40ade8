#include "klbody/potentials.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace klbody {

RhoEval v_rho_paper(double rho, double a, double b) {
    if (rho <= 0.0) {
        std::ostringstream msg;
        msg << "v_rho requires rho > 0, got " << rho;
        throw DomainError(msg.str());
    }
    RhoEval out;
    out.value = a / rho + 0.5 * b * rho * rho;
    out.derivative = -a / (rho * rho) + b * rho;
    return out;
}

PlaneEval v_plane_harmonic(double alpha, double xi, double zeta, double c) {
    PlaneEval out;
    const double dx = xi - 1.0;
    const double dz = zeta - 1.0;
    out.value = 0.5 * c * (dx * dx + dz * dz + 2.0 * alpha * alpha);
    out.d_alpha = 2.0 * c * alpha;
    out.d_xi = c * dx;
    out.d_zeta = c * dz;
    return out;
}

PlaneEval v_plane_invariant(double alpha, double xi, double zeta, double c) {
    // (K1-1)^2 + (K2-1)^2 = P^2 - 2 D^2 - 2 P + 2 with the symmetric
    // functions P = K1 + K2 = xi^2 + zeta^2 + 2 alpha^2 and
    // D = sqrt(K1 K2) = xi zeta - alpha^2.
    const double p = xi * xi + zeta * zeta + 2.0 * alpha * alpha;
    const double d = xi * zeta - alpha * alpha;
    PlaneEval out;
    out.value = 0.5 * c * (p * p - 2.0 * d * d - 2.0 * p + 2.0);
    out.d_alpha = 4.0 * c * alpha * (p + d - 1.0);
    out.d_xi = 2.0 * c * (p * xi - d * zeta - xi);
    out.d_zeta = 2.0 * c * (p * zeta - d * xi - zeta);
    return out;
}

PotentialModel::PotentialModel(Kind kind, std::string name, double a, double b,
                               double c)
    : kind_(kind), name_(std::move(name)), a_(a), b_(b), c_(c) {
    params_ = {{"a", a_}, {"b", b_}, {"c", c_}};
}

PotentialModel PotentialModel::harmonic(double c, double a, double b) {
    return PotentialModel(Kind::Harmonic, "harmonic", a, b, c);
}

PotentialModel PotentialModel::invariant(double c, double a, double b) {
    return PotentialModel(Kind::Invariant, "invariant", a, b, c);
}

PotentialModel PotentialModel::custom(PlaneFn plane, double a, double b) {
    PotentialModel model(Kind::Custom, "custom", a, b, 0.0);
    model.custom_plane_ = std::move(plane);
    model.params_.erase("c");
    return model;
}

PotentialModel PotentialModel::from_name(
    const std::string& name, const std::map<std::string, double>& params) {
    for (const auto& [key, value] : params) {
        if (!(value > 0.0)) {
            std::ostringstream msg;
            msg << "potential parameter " << key << " must be > 0, got "
                << value;
            throw DomainError(msg.str());
        }
    }
    auto get = [&](const char* key) {
        auto it = params.find(key);
        return it == params.end() ? 1.0 : it->second;
    };
    if (name == "harmonic") {
        return harmonic(get("c"), get("a"), get("b"));
    }
    if (name == "invariant") {
        return invariant(get("c"), get("a"), get("b"));
    }
    throw DomainError("unknown potential model '" + name +
                      "' (expected harmonic or invariant)");
}

PlaneEval PotentialModel::plane(double alpha, double xi, double zeta) const {
    switch (kind_) {
        case Kind::Harmonic:
            return v_plane_harmonic(alpha, xi, zeta, c_);
        case Kind::Invariant:
            return v_plane_invariant(alpha, xi, zeta, c_);
        case Kind::Custom:
            break;
    }
    PlaneEval out;
    out.value = custom_plane_(alpha, xi, zeta);
    auto diff = [&](double q, auto eval) {
        const double h = 1e-7 * std::max(1.0, std::abs(q));
        return (eval(q + h) - eval(q - h)) / (2.0 * h);
    };
    out.d_alpha = diff(alpha, [&](double q) { return custom_plane_(q, xi, zeta); });
    out.d_xi = diff(xi, [&](double q) { return custom_plane_(alpha, q, zeta); });
    out.d_zeta = diff(zeta, [&](double q) { return custom_plane_(alpha, xi, q); });
    return out;
}

RhoEval PotentialModel::rho(double rho) const {
    return v_rho_paper(rho, a_, b_);
}

} // namespace klbody
