#include <doctest.h>

#include <cmath>
#include <random>

#include "spinpath/flow.hpp"

using namespace spinpath;

TEST_CASE("classical_symbol: pinned values") {
    CHECK(classical_symbol({0, 0, 2.0}, {0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(classical_symbol({0, 0, 2.0}, {0.5 * kPi, 0.0, 0.0})) <= 1e-14);
    CHECK(classical_symbol({0.8, 0, 0}, {0.5 * kPi, 0.0, 0.0}) ==
          doctest::Approx(0.4).epsilon(1e-14));
    // general direction: H = (1/2) B . n
    const Vec3 b{0.3, -0.7, 1.1};
    const double th = 1.234, ph = 2.345;
    const Vec3 n = bloch_vector(th, ph);
    CHECK(classical_symbol(b, th, ph) == doctest::Approx(0.5 * b.dot(n)).epsilon(1e-14));
}

TEST_CASE("hamiltonian_vector_field: pinned sign and values") {
    // B = B0 z: uniform precession, phi_dot = +B0 (orientation pin)
    const ChartVelocity vz = hamiltonian_vector_field({0, 0, 1.5}, 1.0, 2.0);
    CHECK(std::abs(vz.theta_dot) <= 1e-14);
    CHECK(vz.phi_dot == doctest::Approx(1.5).epsilon(1e-13));

    const ChartVelocity v0 = hamiltonian_vector_field({0, 0, 0}, 1.0, 2.0);
    CHECK(v0.theta_dot == 0.0);
    CHECK(v0.phi_dot == 0.0);

    // B = B0 x at (pi/2, pi/2): (theta_dot, phi_dot) = (-B0, 0)
    const double b0 = 0.9;
    const ChartVelocity vx = hamiltonian_vector_field({b0, 0, 0}, 0.5 * kPi, 0.5 * kPi);
    CHECK(vx.theta_dot == doctest::Approx(-b0).epsilon(1e-13));
    CHECK(std::abs(vx.phi_dot) <= 1e-13);

    CHECK_THROWS_AS((void)hamiltonian_vector_field({0, 0, 1}, 1e-12, 0.0), PoleChart);
}

TEST_CASE("chart flow matches the Bloch form n' = B x n") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double th = 0.05 + 0.9 * kPi * u(rng);
        const double ph = 2.0 * kPi * u(rng);
        const Vec3 b{2.0 * (u(rng) - 0.5), 2.0 * (u(rng) - 0.5), 2.0 * (u(rng) - 0.5)};
        const ChartVelocity v = hamiltonian_vector_field(b, th, ph);
        const Vec3 n = bloch_vector(th, ph);
        const Vec3 ndot = b.cross(n);
        // chart projection of ndot
        const double theta_dot = ndot.z / (-std::sin(th));
        const double phi_dot = (ndot.y * std::cos(ph) - ndot.x * std::sin(ph)) / std::sin(th);
        CHECK(std::abs(v.theta_dot - theta_dot) <= 1e-10);
        CHECK(std::abs(v.phi_dot - phi_dot) <= 1e-10);
    }
}

TEST_CASE("integrate_flow: z-precession endpoint, energy drift, norm") {
    const double b0 = 1.0;
    const auto f = FieldProtocol::constant({0, 0, b0}, kPi / b0);
    const ClassicalTrajectory tr = integrate_flow({0.5 * kPi, 0.0, 0.0}, f, 10000);
    const auto& last = tr.samples.back();
    CHECK(std::abs(last.theta - 0.5 * kPi) <= 1e-8);
    CHECK(std::abs(std::remainder(last.phi - kPi, 2.0 * kPi)) <= 1e-8);

    const double e0 = tr.samples.front().energy;
    const double scale = std::max(std::abs(e0), 0.5 * b0);
    for (const auto& s : tr.samples) {
        CHECK(std::abs(s.energy - e0) / scale <= 1e-10);
        CHECK(std::abs(s.n.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("integrate_flow: B = 0 is constant; pole is a fixed point") {
    const auto f0 = FieldProtocol::constant({0, 0, 0}, 1.0);
    const ClassicalTrajectory still = integrate_flow({1.1, 0.3, 0.0}, f0, 100);
    for (const auto& s : still.samples) {
        CHECK(std::abs(s.theta - 1.1) <= 1e-13);
        CHECK(std::abs(s.phi - 0.3) <= 1e-13);
    }
    const auto fz = FieldProtocol::constant({0, 0, 1.0}, 1.0);
    const ClassicalTrajectory pole = integrate_flow({0.0, 0.0, 0.0}, fz, 100);
    for (const auto& s : pole.samples) CHECK(s.theta <= 1e-12);
}

TEST_CASE("shoot_boundary: reachable circle vs overspecified targets") {
    const auto fz = FieldProtocol::constant({0, 0, 1.0}, 1.0);
    const ShootResult hit = shoot_boundary({0.5 * kPi, 0.0, 0.0}, {0.5 * kPi, 1.0, 0.0}, fz, 1e-6);
    CHECK(hit.status == ShootResult::Status::solution);
    CHECK(hit.residual < 1e-8);

    const ShootResult miss = shoot_boundary({0.5 * kPi, 0.0, 0.0}, {kPi / 3.0, 1.0, 0.0}, fz, 1e-6);
    CHECK(miss.status == ShootResult::Status::infeasible);
    CHECK(miss.residual == doctest::Approx(0.5 * kPi - kPi / 3.0).epsilon(1e-6));

    const auto f0 = FieldProtocol::constant({0, 0, 0}, 1.0);
    const ShootResult same = shoot_boundary({1.2, 0.8, 0.0}, {1.2, 0.8, 0.0}, f0, 1e-6);
    CHECK(same.status == ShootResult::Status::solution);
    CHECK(same.residual <= 1e-12);
}

TEST_CASE("overspecification: random endpoints are almost never reachable") {
    const auto fz = FieldProtocol::constant({0, 0, 1.0}, 1.0);
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int solutions = 0;
    for (int k = 0; k < 200; ++k) {
        const CoherentLabel from{std::acos(1.0 - 2.0 * u(rng)), 2.0 * kPi * u(rng), 0.0};
        const CoherentLabel to{std::acos(1.0 - 2.0 * u(rng)), 2.0 * kPi * u(rng), 0.0};
        const ShootResult r = shoot_boundary(from, to, fz, 1e-6, 2000);
        if (r.status == ShootResult::Status::solution) ++solutions;
    }
    CHECK(solutions == 0);
}
