#pragma once

#include <Eigen/Dense>

#include "klbody/errors.hpp"

namespace klbody {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using Mat32 = Eigen::Matrix<double, 3, 2>;

/**
 * Co-moving angular velocity components.
 *
 * The associated antisymmetric matrix uses the layout
 *
 *     [   0    nu3  -nu2 ]
 *     [ -nu3    0    nu1 ]
 *     [  nu2  -nu1    0  ]
 *
 * so that nu = L^-1 dL/dt for the rotation factor L of the polar
 * decomposition. The same type carries the omega (R-top) and theta-dot
 * (U-top) velocities of the two-polar decomposition.
 */
struct SpinVector {
    double nu1 = 0.0;
    double nu2 = 0.0;
    double nu3 = 0.0;

    /// Antisymmetric matrix in the layout documented above.
    Mat3 to_matrix() const;

    /// Reads the components back out of an antisymmetric matrix.
    static SpinVector from_matrix(const Mat3& m);

    double norm() const;
};

/// Closed-form exponential of t * (antisymmetric matrix of v).
Mat3 exp_spin(const SpinVector& v, double t = 1.0);

/// Proper rotation (orthogonal, det +1). Factories validate; matrices with
/// orthogonality defect above 1e-10 are projected back to the nearest
/// rotation, and anything with defect above 1e-6 is rejected outright.
class RotationMatrix {
public:
    RotationMatrix() : m_(Mat3::Identity()) {}

    static RotationMatrix identity() { return RotationMatrix(); }

    /// Rodrigues exponential map: k is codirectional with the rotation axis
    /// and |k| is the rotation angle.
    static RotationMatrix from_rotation_vector(const Vec3& k);

    /// Validating factory (projects small drift, rejects non-rotations).
    static RotationMatrix from_matrix(const Mat3& m);

    /// Nearest rotation in the Frobenius sense (symmetric orthogonalization).
    static Mat3 project(const Mat3& m);

    const Mat3& matrix() const { return m_; }

    /// max |(m^T m - I)_ij|
    double orthogonality_defect() const;

private:
    struct Unchecked {};
    RotationMatrix(const Mat3& m, Unchecked) : m_(m) {}

    Mat3 m_;
};

/// U(theta): rotation by theta about the out-of-plane (third) axis.
Mat3 plane_rotation(double theta);

/// Symmetric deformation factor S = [[xi, alpha, 0], [alpha, zeta, 0],
/// [0, 0, rho]] of the polar decomposition Phi = L S.
struct PolarDeformation {
    double alpha = 0.0;
    double xi = 1.0;
    double zeta = 1.0;
    double rho = 1.0;

    /// xi*zeta - alpha^2; must stay positive for S to be positive definite.
    double planar_det() const { return xi * zeta - alpha * alpha; }

    bool valid() const;
    void require_valid() const;

    Mat3 matrix() const;
};

/// Diagonal factor (lambda, mu, rho) and in-plane angle theta of the
/// two-polar decomposition Phi = R D U(theta)^-1.
struct TwoPolarDeformation {
    double lambda = 1.0;
    double mu = 1.0;
    double rho = 1.0;
    double theta = 0.0;

    bool valid() const;
    void require_valid() const;
};

struct TwoPolarState {
    RotationMatrix R;
    TwoPolarDeformation def;
};

/// G = Phi^T Phi = S^2, block diagonal: a 2x2 in-plane block and g33.
struct GreenTensor {
    double g11 = 1.0;
    double g12 = 0.0;
    double g22 = 1.0;
    double g33 = 1.0;

    Mat3 matrix() const;
};

/// Eigenvalues of the Green tensor, ordered k1 >= k2; k3 = rho^2.
struct DeformationInvariants {
    double k1 = 1.0;
    double k2 = 1.0;
    double k3 = 1.0;
};

/// Embeds a 3x2 in-plane configuration into a full 3x3 configuration whose
/// third column is ell times the cross product of the first two.
/// Throws DegenerateConfiguration when the in-plane columns are collinear.
Mat3 kl_embed(const Mat32& phi_plane, double ell);

/// ell = rho / (xi*zeta - alpha^2). Throws PositivityViolation when the
/// planar determinant is not positive.
double ell_polar(const PolarDeformation& def);

/// ell = rho / (lambda*mu).
double ell_two_polar(const TwoPolarDeformation& def);

struct PolarFactors {
    RotationMatrix L;
    PolarDeformation def;
};

/// Converts two-polar variables to polar ones:
///   L = R U(theta)^-1,  S = U(theta) D U(theta)^-1.
PolarFactors polar_from_two_polar(const TwoPolarState& state);

/// Inverse conversion. (lambda, mu) are the eigenvalues of the in-plane
/// block of S with lambda >= mu, theta in [0, pi), and theta = 0 by
/// convention when lambda == mu.
TwoPolarState two_polar_from_polar(const RotationMatrix& L,
                                   const PolarDeformation& def);

GreenTensor green_tensor(const PolarDeformation& def);

DeformationInvariants deformation_invariants(const PolarDeformation& def);

/// Angular velocity of the L-top combined from the R-top velocity omega and
/// the in-plane angle motion (theta, theta_dot):
///   nu1 = omega1 cos(theta) - omega2 sin(theta)
///   nu2 = omega1 sin(theta) + omega2 cos(theta)
///   nu3 = omega3 + theta_dot
SpinVector nu_from_omega_theta(const SpinVector& omega, double theta,
                               double theta_dot);

} // namespace klbody
