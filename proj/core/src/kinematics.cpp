#include "klbody/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace klbody {

namespace {

constexpr double kProjectThreshold = 1e-10;
constexpr double kRejectThreshold = 1e-6;

// Standard skew map: skew(k) v = k x v.
Mat3 skew(const Vec3& k) {
    Mat3 m;
    m << 0.0, -k(2), k(1),
         k(2), 0.0, -k(0),
        -k(1), k(0), 0.0;
    return m;
}

// exp(A) for antisymmetric A via the Rodrigues identity A^3 = -n^2 A,
// where n is the magnitude of A's axial vector.
Mat3 exp_antisymmetric(const Mat3& a) {
    const double n2 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    const double n = std::sqrt(n2);
    double c1, c2; // sin(n)/n, (1 - cos(n))/n^2
    if (n < 1e-4) {
        c1 = 1.0 - n2 / 6.0 * (1.0 - n2 / 20.0);
        c2 = 0.5 - n2 / 24.0 * (1.0 - n2 / 30.0);
    } else {
        c1 = std::sin(n) / n;
        c2 = (1.0 - std::cos(n)) / n2;
    }
    return Mat3::Identity() + c1 * a + c2 * (a * a);
}

double ortho_defect(const Mat3& m) {
    return (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
}

} // namespace

Mat3 SpinVector::to_matrix() const {
    Mat3 m;
    m << 0.0, nu3, -nu2,
        -nu3, 0.0, nu1,
         nu2, -nu1, 0.0;
    return m;
}

SpinVector SpinVector::from_matrix(const Mat3& m) {
    return SpinVector{m(1, 2), m(2, 0), m(0, 1)};
}

double SpinVector::norm() const {
    return std::sqrt(nu1 * nu1 + nu2 * nu2 + nu3 * nu3);
}

Mat3 exp_spin(const SpinVector& v, double t) {
    return exp_antisymmetric(v.to_matrix() * t);
}

RotationMatrix RotationMatrix::from_rotation_vector(const Vec3& k) {
    return RotationMatrix(exp_antisymmetric(skew(k)), Unchecked{});
}

RotationMatrix RotationMatrix::from_matrix(const Mat3& m) {
    const double defect = ortho_defect(m);
    if (defect > kRejectThreshold || m.determinant() < 0.0) {
        std::ostringstream msg;
        msg << "matrix is not a proper rotation (orthogonality defect "
            << defect << ", det " << m.determinant() << ")";
        throw DomainError(msg.str());
    }
    if (defect > kProjectThreshold) {
        return RotationMatrix(project(m), Unchecked{});
    }
    return RotationMatrix(m, Unchecked{});
}

Mat3 RotationMatrix::project(const Mat3& m) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 u = svd.matrixU();
    const Mat3 v = svd.matrixV();
    if ((u * v.transpose()).determinant() < 0.0) {
        u.col(2) *= -1.0;
    }
    return u * v.transpose();
}

double RotationMatrix::orthogonality_defect() const {
    return ortho_defect(m_);
}

Mat3 plane_rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat3 u;
    u << c, -s, 0.0,
         s, c, 0.0,
         0.0, 0.0, 1.0;
    return u;
}

bool PolarDeformation::valid() const {
    return xi > 0.0 && zeta > 0.0 && rho > 0.0 && planar_det() > 0.0 &&
           std::isfinite(alpha) && std::isfinite(xi) && std::isfinite(zeta) &&
           std::isfinite(rho);
}

void PolarDeformation::require_valid() const {
    if (valid()) return;
    std::ostringstream msg;
    msg << "polar deformation out of domain: alpha=" << alpha << " xi=" << xi
        << " zeta=" << zeta << " rho=" << rho
        << " (need xi, zeta, rho > 0 and xi*zeta - alpha^2 > 0; xi*zeta - alpha^2 = "
        << planar_det() << ")";
    throw PositivityViolation(msg.str());
}

Mat3 PolarDeformation::matrix() const {
    Mat3 s;
    s << xi, alpha, 0.0,
         alpha, zeta, 0.0,
         0.0, 0.0, rho;
    return s;
}

bool TwoPolarDeformation::valid() const {
    return lambda > 0.0 && mu > 0.0 && rho > 0.0 && std::isfinite(lambda) &&
           std::isfinite(mu) && std::isfinite(rho) && std::isfinite(theta);
}

void TwoPolarDeformation::require_valid() const {
    if (valid()) return;
    std::ostringstream msg;
    msg << "two-polar deformation out of domain: lambda=" << lambda
        << " mu=" << mu << " rho=" << rho << " (need all > 0)";
    throw PositivityViolation(msg.str());
}

Mat3 GreenTensor::matrix() const {
    Mat3 g;
    g << g11, g12, 0.0,
         g12, g22, 0.0,
         0.0, 0.0, g33;
    return g;
}

Mat3 kl_embed(const Mat32& phi_plane, double ell) {
    const Vec3 c1 = phi_plane.col(0);
    const Vec3 c2 = phi_plane.col(1);
    const Vec3 cross = c1.cross(c2);
    if (cross.norm() < 1e-12) {
        throw DegenerateConfiguration(
            "in-plane columns are collinear: |col1 x col2| < 1e-12");
    }
    Mat3 phi;
    phi.col(0) = c1;
    phi.col(1) = c2;
    phi.col(2) = ell * cross;
    return phi;
}

double ell_polar(const PolarDeformation& def) {
    const double d = def.planar_det();
    if (d <= 0.0) {
        std::ostringstream msg;
        msg << "xi*zeta - alpha^2 = " << d << " must be > 0";
        throw PositivityViolation(msg.str());
    }
    return def.rho / d;
}

double ell_two_polar(const TwoPolarDeformation& def) {
    def.require_valid();
    return def.rho / (def.lambda * def.mu);
}

PolarFactors polar_from_two_polar(const TwoPolarState& state) {
    state.def.require_valid();
    const double lambda = state.def.lambda;
    const double mu = state.def.mu;
    const double theta = state.def.theta;
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    PolarDeformation def;
    def.alpha = (lambda - mu) * s * c;
    def.xi = lambda * c * c + mu * s * s;
    def.zeta = lambda * s * s + mu * c * c;
    def.rho = state.def.rho;

    const Mat3 l = state.R.matrix() * plane_rotation(theta).transpose();
    return PolarFactors{RotationMatrix::from_matrix(l), def};
}

TwoPolarState two_polar_from_polar(const RotationMatrix& L,
                                   const PolarDeformation& def) {
    def.require_valid();
    const double diff = def.xi - def.zeta;
    const double disc = std::sqrt(diff * diff + 4.0 * def.alpha * def.alpha);
    const double sum = def.xi + def.zeta;

    TwoPolarDeformation out;
    out.lambda = 0.5 * (sum + disc);
    out.mu = 0.5 * (sum - disc);
    out.rho = def.rho;
    if (disc == 0.0) {
        out.theta = 0.0; // lambda == mu: any theta works, fix the convention
    } else {
        double theta = 0.5 * std::atan2(2.0 * def.alpha, diff);
        if (theta < 0.0) theta += std::numbers::pi;
        out.theta = theta;
    }

    const Mat3 r = L.matrix() * plane_rotation(out.theta);
    return TwoPolarState{RotationMatrix::from_matrix(r), out};
}

GreenTensor green_tensor(const PolarDeformation& def) {
    def.require_valid();
    GreenTensor g;
    g.g11 = def.xi * def.xi + def.alpha * def.alpha;
    g.g12 = (def.xi + def.zeta) * def.alpha;
    g.g22 = def.zeta * def.zeta + def.alpha * def.alpha;
    g.g33 = def.rho * def.rho;
    return g;
}

DeformationInvariants deformation_invariants(const PolarDeformation& def) {
    def.require_valid();
    const double sum_sq =
        def.xi * def.xi + def.zeta * def.zeta + 2.0 * def.alpha * def.alpha;
    const double diff = def.xi - def.zeta;
    const double spread = (def.xi + def.zeta) *
        std::sqrt(diff * diff + 4.0 * def.alpha * def.alpha);

    DeformationInvariants k;
    k.k1 = 0.5 * (sum_sq + spread);
    k.k2 = 0.5 * (sum_sq - spread);
    k.k3 = def.rho * def.rho;
    return k;
}

SpinVector nu_from_omega_theta(const SpinVector& omega, double theta,
                               double theta_dot) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    SpinVector nu;
    nu.nu1 = omega.nu1 * c - omega.nu2 * s;
    nu.nu2 = omega.nu1 * s + omega.nu2 * c;
    nu.nu3 = omega.nu3 + theta_dot;
    return nu;
}

} // namespace klbody
