#pragma once

#include <cmath>
#include <complex>

#include "spinpath/errors.hpp"

namespace spinpath {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
};

inline Vec3 operator*(double a, const Vec3& v) { return v * a; }

// 2x2 complex matrix, row-major.
struct Mat2 {
    cplx a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2 operator+(const Mat2& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    Mat2 operator-(const Mat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    Mat2 operator*(cplx c) const { return {c * a11, c * a12, c * a21, c * a22}; }
    Mat2 adjoint() const {
        return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
    }
    cplx det() const { return a11 * a22 - a12 * a21; }
    double frobenius() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
    }
};

// Normalized spin-1/2 state in the |up>, |down> basis.
struct SpinorState {
    cplx up{1.0};
    cplx down{0.0};
};

// Point on S^2 plus the fiber phase chi. Two labels differing only in chi
// describe the same physical ray; chi enters amplitudes as exp(-i chi/2).
class CoherentLabel {
public:
    CoherentLabel() = default;
    CoherentLabel(double theta, double phi, double chi = 0.0);

    double theta() const { return theta_; }
    double phi() const { return phi_; }
    double chi() const { return chi_; }

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
    double chi_ = 0.0;
};

// Stereographic coordinate from the south-pole projection, zeta = tan(theta/2) e^{i phi}.
struct StereoLabel {
    cplx zeta{0.0};
};

struct SpinGenerators {
    Mat2 sx, sy, sz;
};

// S_i = sigma_i / 2, hbar = 1.
SpinGenerators spin_generators();

// B.S as a 2x2 matrix.
Mat2 dot_spin(const Vec3& b);

// |Omega> = e^{-i chi/2} e^{-i phi Sz} e^{-i theta Sy} |up>.
SpinorState coherent_state(const CoherentLabel& label);

// <Psi_a | Psi_b>, gauge phases included.
cplx overlap(const CoherentLabel& a, const CoherentLabel& b);
cplx inner(const SpinorState& a, const SpinorState& b);

// |zeta> = (1, zeta)/sqrt(1+|zeta|^2) = e^{+i phi/2} |Omega(theta, phi, chi=0)>.
SpinorState stereo_state(const StereoLabel& z);

StereoLabel to_stereo(const CoherentLabel& label);  // throws InfinitePole at theta = pi
CoherentLabel to_label(const StereoLabel& z);       // chi = 0

// <Psi_a | B.S | Psi_b> / <Psi_a | Psi_b>; throws DegenerateOverlap below 1e-14.
cplx expectation(const CoherentLabel& a, const CoherentLabel& b, const Vec3& b_field);

Vec3 bloch_vector(double theta, double phi);
Vec3 bloch_vector(const CoherentLabel& label);

// Great-circle angle between two sphere points.
double geodesic_distance(const CoherentLabel& a, const CoherentLabel& b);
double geodesic_distance(const Vec3& a, const Vec3& b);

}  // namespace spinpath
