#include <doctest.h>

#include <cmath>
#include <random>

#include "spinpath/su2.hpp"

using namespace spinpath;

namespace {

double cdist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("spin generators: algebra and spectrum") {
    const auto g = spin_generators();
    // [Sx, Sy] = i Sz and cyclic
    auto comm = [](const Mat2& a, const Mat2& b) { return a * b - b * a; };
    const cplx i{0.0, 1.0};
    CHECK((comm(g.sx, g.sy) - g.sz * i).frobenius() <= 1e-15);
    CHECK((comm(g.sy, g.sz) - g.sx * i).frobenius() <= 1e-15);
    CHECK((comm(g.sz, g.sx) - g.sy * i).frobenius() <= 1e-15);
    // Hermitian, eigenvalues +-1/2: tr = 0, det = -1/4
    for (const Mat2& s : {g.sx, g.sy, g.sz}) {
        CHECK((s - s.adjoint()).frobenius() <= 1e-15);
        CHECK(std::abs(s.a11 + s.a22) <= 1e-15);
        CHECK(cdist(s.det(), -0.25) <= 1e-15);
    }
}

TEST_CASE("coherent_state: pinned values") {
    const SpinorState up = coherent_state({0.0, 0.0, 0.0});
    CHECK(cdist(up.up, 1.0) <= 1e-15);
    CHECK(cdist(up.down, 0.0) <= 1e-15);

    const SpinorState down = coherent_state({kPi, 0.0, 0.0});
    CHECK(cdist(down.up, 0.0) <= 1e-15);
    CHECK(cdist(down.down, 1.0) <= 1e-15);

    // (pi/2, pi/2, 0) -> (e^{-i pi/4}, e^{+i pi/4}) / sqrt(2)
    const SpinorState eq = coherent_state({0.5 * kPi, 0.5 * kPi, 0.0});
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(cdist(eq.up, r * std::exp(cplx(0.0, -0.25 * kPi))) <= 1e-15);
    CHECK(cdist(eq.down, r * std::exp(cplx(0.0, 0.25 * kPi))) <= 1e-15);
}

TEST_CASE("coherent_state: unit norm everywhere") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const CoherentLabel l{std::acos(1.0 - 2.0 * u(rng)), 2.0 * kPi * u(rng),
                              4.0 * kPi * (u(rng) - 0.5)};
        const SpinorState s = coherent_state(l);
        CHECK(std::abs(std::norm(s.up) + std::norm(s.down) - 1.0) <= 1e-14);
    }
}

TEST_CASE("overlap: pinned values") {
    const CoherentLabel a{0.5 * kPi, 0.5 * kPi, 0.0};
    const CoherentLabel b{0.5 * kPi, 0.0, 0.0};
    CHECK(cdist(overlap(a, a), 1.0) <= 1e-15);
    CHECK(cdist(overlap({0.0, 0.0, 0.0}, {kPi, 0.0, 0.0}), 0.0) <= 1e-15);
    // (e^{+i pi/4} + e^{-i pi/4})/2 = cos(pi/4)
    CHECK(cdist(overlap(a, b), std::cos(0.25 * kPi)) <= 1e-12);
}

TEST_CASE("overlap: gauge covariance and Cauchy-Schwarz") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double t1 = std::acos(1.0 - 2.0 * u(rng)), p1 = 2.0 * kPi * u(rng);
        const double t2 = std::acos(1.0 - 2.0 * u(rng)), p2 = 2.0 * kPi * u(rng);
        const double c1 = 4.0 * kPi * (u(rng) - 0.5), c2 = 4.0 * kPi * (u(rng) - 0.5);
        const cplx base = overlap({t1, p1, 0.0}, {t2, p2, 0.0});
        const cplx gauged = overlap({t1, p1, c1}, {t2, p2, c2});
        CHECK(cdist(gauged, std::exp(cplx(0.0, 0.5 * (c1 - c2))) * base) <= 1e-13);
        CHECK(std::abs(gauged) <= 1.0 + 1e-14);
        CHECK(std::abs(std::abs(gauged) - std::abs(base)) <= 1e-14);
    }
    // equality iff same sphere point
    CHECK(std::abs(overlap({1.1, 2.0, 0.3}, {1.1, 2.0, -0.7})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(overlap({1.1, 2.0, 0.0}, {1.2, 2.0, 0.0})) < 1.0);
}

TEST_CASE("stereo_state: pinned values and Eq.-style section relation") {
    const SpinorState z0 = stereo_state({cplx{0.0, 0.0}});
    CHECK(cdist(z0.up, 1.0) <= 1e-15);
    CHECK(cdist(z0.down, 0.0) <= 1e-15);

    const double r = 1.0 / std::sqrt(2.0);
    const SpinorState z1 = stereo_state({cplx{1.0, 0.0}});
    CHECK(cdist(z1.up, r) <= 1e-15);
    CHECK(cdist(z1.down, r) <= 1e-15);

    const SpinorState zi = stereo_state({cplx{0.0, 1.0}});
    CHECK(cdist(zi.up, r) <= 1e-15);
    CHECK(cdist(zi.down, cplx(0.0, r)) <= 1e-15);
    // zi = e^{i pi/4} * coherent_state(pi/2, pi/2, 0)
    const SpinorState eq = coherent_state({0.5 * kPi, 0.5 * kPi, 0.0});
    const cplx ph = std::exp(cplx(0.0, 0.25 * kPi));
    CHECK(cdist(zi.up, ph * eq.up) <= 1e-14);
    CHECK(cdist(zi.down, ph * eq.down) <= 1e-14);
}

TEST_CASE("stereo section relation on a 32x32 grid") {
    for (int i = 0; i < 32; ++i) {
        const double theta = kPi * (i + 0.5) / 32.5;  // stays off theta = pi
        for (int j = 0; j < 32; ++j) {
            const double phi = 2.0 * kPi * j / 32.0;
            const StereoLabel z{std::tan(0.5 * theta) * std::exp(cplx(0.0, phi))};
            const SpinorState s = stereo_state(z);
            const SpinorState c = coherent_state({theta, phi, 0.0});
            const cplx ph = std::exp(cplx(0.0, 0.5 * phi));
            CHECK(cdist(s.up, ph * c.up) <= 1e-12);
            CHECK(cdist(s.down, ph * c.down) <= 1e-12);
        }
    }
}

TEST_CASE("stereo conversions: round trip and pole error") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double theta = 0.999 * kPi * u(rng);
        const double phi = 2.0 * kPi * u(rng);
        const StereoLabel z = to_stereo({theta, phi, 0.0});
        CHECK(cdist(z.zeta, std::tan(0.5 * theta) * std::exp(cplx(0.0, phi))) <= 1e-12);
        const CoherentLabel back = to_label(z);
        CHECK(std::abs(back.theta() - theta) <= 1e-12);
        CHECK(std::abs(std::remainder(back.phi() - phi, 2.0 * kPi)) <= 1e-12);
    }
    CHECK_THROWS_AS((void)to_stereo({kPi, 0.0, 0.0}), InfinitePole);
}

TEST_CASE("expectation: pinned values, hermiticity, degenerate overlap") {
    CHECK(cdist(expectation({0, 0, 0}, {0, 0, 0}, {0, 0, 2.0}), 1.0) <= 1e-14);
    CHECK(cdist(expectation({0.5 * kPi, 0, 0}, {0.5 * kPi, 0, 0}, {0, 0, 1.0}), 0.0) <= 1e-14);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const double theta = std::acos(1.0 - 2.0 * u(rng));
        const double phi = 2.0 * kPi * u(rng);
        const double b0 = 3.0 * (u(rng) - 0.5);
        const CoherentLabel a{theta, phi, 0.0};
        // <a| B0 Sx |a> = (B0/2) sin(theta) cos(phi)
        CHECK(cdist(expectation(a, a, {b0, 0.0, 0.0}), 0.5 * b0 * std::sin(theta) * std::cos(phi)) <=
              1e-13);
        const Vec3 b{3.0 * (u(rng) - 0.5), 3.0 * (u(rng) - 0.5), 3.0 * (u(rng) - 0.5)};
        CHECK(std::abs(expectation(a, a, b).imag()) <= 1e-13);
    }
    CHECK_THROWS_AS((void)expectation({0, 0, 0}, {kPi, 0, 0}, {0, 0, 1.0}), DegenerateOverlap);
}

TEST_CASE("label normalization: phi wrapped, theta clamped or rejected") {
    const CoherentLabel wrapped{1.0, 2.0 * kPi + 0.25, 0.0};
    CHECK(wrapped.phi() == doctest::Approx(0.25).epsilon(1e-14));
    const CoherentLabel clamped{-1e-13, 0.0, 0.0};
    CHECK(clamped.theta() == 0.0);
    CHECK_THROWS_AS((CoherentLabel{-0.5, 0.0, 0.0}), RangeError);
    CHECK_THROWS_AS((CoherentLabel{kPi + 0.5, 0.0, 0.0}), RangeError);
}

TEST_CASE("geodesic distance: axis cases and symmetry") {
    CHECK(geodesic_distance(CoherentLabel{0.0, 0.0, 0.0}, CoherentLabel{kPi, 0.0, 0.0}) ==
          doctest::Approx(kPi).epsilon(1e-14));
    CHECK(geodesic_distance(CoherentLabel{0.5 * kPi, 0.0, 0.0},
                            CoherentLabel{0.5 * kPi, 0.5 * kPi, 0.0}) ==
          doctest::Approx(0.5 * kPi).epsilon(1e-13));
    const CoherentLabel a{1.2, 0.4, 0.0}, b{2.2, 5.1, 0.0};
    CHECK(std::abs(geodesic_distance(a, b) - geodesic_distance(b, a)) <= 1e-14);
}
