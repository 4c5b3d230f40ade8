#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "klbody/dynamics_two_polar.hpp"
#include "support/conversion.hpp"
#include "support/random_states.hpp"

using namespace klbody;
using namespace klbody::testing;

TEST_CASE("two-polar kinetic energy: worked values") {
    const InertiaTensor J{2.0, 1.0, 1.5};
    const TwoPolarDeformation def{1.8, 0.9, 1.2, 0.4};

    CHECK(kinetic_energy_two_polar(def, {}, J) == 0.0);

    TwoPolarVelocities only_rho;
    only_rho.rho_dot = 0.6;
    CHECK(kinetic_energy_two_polar(def, only_rho, J) ==
          doctest::Approx(0.5 * J.j3 * 0.36).epsilon(1e-14));
}

TEST_CASE("two-polar energy equals polar energy across the conversion") {
    std::mt19937_64 rng(301);
    double max_rel = 0.0;
    for (int i = 0; i < 500; ++i) {
        const TwoPolarDeformation def = random_two_polar_deformation(rng);
        const TwoPolarVelocities vel = random_two_polar_velocities(rng);
        const InertiaTensor J = random_inertia(rng); // general J1 != J2

        const double t_two = kinetic_energy_two_polar(def, vel, J);

        const PolarFactors polar =
            polar_from_two_polar({RotationMatrix::identity(), def});
        const PolarVelocities pvel =
            polar_velocities_from_two_polar(def, vel);
        const double t_polar =
            kinetic_energy_velocities(polar.def, pvel, J).total;

        max_rel = std::max(max_rel, std::abs(t_two - t_polar) /
                                        std::max(1.0, std::abs(t_two)));
    }
    CHECK(max_rel < 1e-10);
}

TEST_CASE("general form reduces to the isotropic one at J1 == J2") {
    std::mt19937_64 rng(302);
    for (int i = 0; i < 200; ++i) {
        const TwoPolarDeformation def = random_two_polar_deformation(rng);
        const TwoPolarVelocities vel = random_two_polar_velocities(rng);
        const double j = uniform(rng, 0.5, 2.5);
        const double j3 = uniform(rng, 0.5, 2.5);
        const InertiaTensor J{j, j, j3};

        const double lam = def.lambda, mu = def.mu, rho = def.rho;
        const SpinVector& w = vel.omega;
        double iso = 0.5 * j * (vel.lambda_dot * vel.lambda_dot +
                                vel.mu_dot * vel.mu_dot) +
                     0.5 * j3 * vel.rho_dot * vel.rho_dot +
                     0.5 * (j * mu * mu + j3 * rho * rho) * w.nu1 * w.nu1 +
                     0.5 * (j * lam * lam + j3 * rho * rho) * w.nu2 * w.nu2 +
                     2.0 * j * lam * mu * w.nu3 * vel.theta_dot +
                     0.5 * j * (lam * lam + mu * mu) *
                         (w.nu3 * w.nu3 + vel.theta_dot * vel.theta_dot);
        CHECK(kinetic_energy_two_polar(def, vel, J) ==
              doctest::Approx(iso).epsilon(1e-12));
    }
}

TEST_CASE("isotropic canonical kinetic energy") {
    const TwoPolarDeformation def{2.0, 1.0, 1.2, 0.3};

    CHECK(kinetic_energy_canonical_isotropic(def, {}, 1.0, 1.5) == 0.0);

    TwoPolarMomenta only_p_rho;
    only_p_rho.p_rho = 0.8;
    CHECK(kinetic_energy_canonical_isotropic(def, only_p_rho, 1.0, 1.5) ==
          doctest::Approx(0.64 / 3.0));

    SUBCASE("degenerate chart is an error") {
        const TwoPolarDeformation degen{1.0, 1.0, 1.0, 0.0};
        CHECK_THROWS_AS(
            kinetic_energy_canonical_isotropic(degen, {}, 1.0, 1.0),
            DegenerateDeformation);
    }
}

TEST_CASE("isotropic canonical form agrees with the Legendre dual of the "
          "velocity form") {
    // Momenta from the polarization identity p = M v applied to the
    // isotropic kinetic energy; the canonical expression must then return
    // the same energy.
    std::mt19937_64 rng(303);
    auto to_array = [](const TwoPolarVelocities& v) {
        return std::array<double, 7>{v.omega.nu1, v.omega.nu2, v.omega.nu3,
                                     v.lambda_dot, v.mu_dot, v.rho_dot,
                                     v.theta_dot};
    };
    auto from_array = [](const std::array<double, 7>& a) {
        TwoPolarVelocities v;
        v.omega.nu1 = a[0];
        v.omega.nu2 = a[1];
        v.omega.nu3 = a[2];
        v.lambda_dot = a[3];
        v.mu_dot = a[4];
        v.rho_dot = a[5];
        v.theta_dot = a[6];
        return v;
    };

    double max_rel = 0.0;
    for (int i = 0; i < 200; ++i) {
        TwoPolarDeformation def = random_two_polar_deformation(rng);
        if (def.lambda - def.mu < 0.2) def.lambda = def.mu + 0.2;
        const double j = uniform(rng, 0.5, 2.5);
        const double j3 = uniform(rng, 0.5, 2.5);
        const InertiaTensor J{j, j, j3};
        const TwoPolarVelocities vel = random_two_polar_velocities(rng);

        auto t_of = [&](const std::array<double, 7>& a) {
            return kinetic_energy_two_polar(def, from_array(a), J);
        };
        Eigen::Matrix<double, 7, 7> m;
        for (int r = 0; r < 7; ++r) {
            for (int c = 0; c < 7; ++c) {
                std::array<double, 7> er{}, ec{}, erc{};
                er[r] = 1.0;
                ec[c] = 1.0;
                erc[r] += 1.0;
                erc[c] += 1.0;
                m(r, c) = t_of(erc) - t_of(er) - t_of(ec);
            }
        }
        Eigen::Matrix<double, 7, 1> vvec;
        const auto va = to_array(vel);
        for (int k = 0; k < 7; ++k) vvec(k) = va[k];
        const Eigen::Matrix<double, 7, 1> pvec = m * vvec;

        TwoPolarMomenta mom;
        mom.s1 = pvec(0);
        mom.s2 = pvec(1);
        mom.s3 = pvec(2);
        mom.p_lambda = pvec(3);
        mom.p_mu = pvec(4);
        mom.p_rho = pvec(5);
        mom.p_theta = pvec(6);

        const double t_vel = kinetic_energy_two_polar(def, vel, J);
        const double t_canon =
            kinetic_energy_canonical_isotropic(def, mom, j, j3);
        max_rel = std::max(max_rel, std::abs(t_vel - t_canon) /
                                        std::max(1.0, std::abs(t_vel)));
    }
    CHECK(max_rel < 1e-9);
}

TEST_CASE("label-swap invariance through the conversion path") {
    // (lambda, mu, theta, R) and (mu, lambda, theta + pi/2, R Rz(pi/2))
    // describe the same configuration: identical polar factors, identical
    // kinetic energy.
    std::mt19937_64 rng(304);
    const double half_pi = std::numbers::pi / 2;
    for (int i = 0; i < 100; ++i) {
        const TwoPolarDeformation def = random_two_polar_deformation(rng);
        const TwoPolarVelocities vel = random_two_polar_velocities(rng);
        const InertiaTensor J = random_inertia(rng);
        const RotationMatrix r = random_rotation(rng);

        TwoPolarDeformation swapped;
        swapped.lambda = def.mu;
        swapped.mu = def.lambda;
        swapped.rho = def.rho;
        swapped.theta = def.theta + half_pi;

        const RotationMatrix r_swapped = RotationMatrix::from_matrix(
            r.matrix() * plane_rotation(half_pi));

        // omega conjugates with the axis relabeling
        const Mat3 rz = plane_rotation(half_pi);
        const Mat3 w_mat =
            rz.transpose() * vel.omega.to_matrix() * rz;
        TwoPolarVelocities vel_swapped;
        vel_swapped.omega = SpinVector::from_matrix(w_mat);
        vel_swapped.lambda_dot = vel.mu_dot;
        vel_swapped.mu_dot = vel.lambda_dot;
        vel_swapped.rho_dot = vel.rho_dot;
        vel_swapped.theta_dot = vel.theta_dot;

        const PolarFactors pa = polar_from_two_polar({r, def});
        const PolarFactors pb = polar_from_two_polar({r_swapped, swapped});
        CHECK((pa.L.matrix() - pb.L.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(pa.def.alpha - pb.def.alpha) < 1e-12);
        CHECK(std::abs(pa.def.xi - pb.def.xi) < 1e-12);
        CHECK(std::abs(pa.def.zeta - pb.def.zeta) < 1e-12);

        const double ta = kinetic_energy_two_polar(def, vel, J);
        const double tb = kinetic_energy_two_polar(swapped, vel_swapped, J);
        CHECK(std::abs(ta - tb) < 1e-10 * std::max(1.0, std::abs(ta)));
    }
}
