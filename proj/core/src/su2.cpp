#include "spinpath/su2.hpp"

#include <algorithm>

namespace spinpath {

namespace {
constexpr double kThetaClampTol = 1e-12;

double wrap_phi(double phi) {
    double p = std::fmod(phi, 2.0 * kPi);
    if (p < 0.0) p += 2.0 * kPi;
    if (p >= 2.0 * kPi) p = 0.0;  // fmod roundoff
    return p;
}
}  // namespace

CoherentLabel::CoherentLabel(double theta, double phi, double chi) : chi_(chi) {
    if (theta < -kThetaClampTol || theta > kPi + kThetaClampTol) {
        throw RangeError("CoherentLabel: theta outside [0, pi]");
    }
    theta_ = std::clamp(theta, 0.0, kPi);
    phi_ = wrap_phi(phi);
}

SpinGenerators spin_generators() {
    const cplx i{0.0, 1.0};
    SpinGenerators g;
    g.sx = {0.0, 0.5, 0.5, 0.0};
    g.sy = {0.0, -0.5 * i, 0.5 * i, 0.0};
    g.sz = {0.5, 0.0, 0.0, -0.5};
    return g;
}

Mat2 dot_spin(const Vec3& b) {
    const cplx i{0.0, 1.0};
    return {0.5 * b.z, 0.5 * (b.x - i * b.y), 0.5 * (b.x + i * b.y), -0.5 * b.z};
}

SpinorState coherent_state(const CoherentLabel& label) {
    const cplx i{0.0, 1.0};
    const double half_theta = 0.5 * label.theta();
    const cplx gauge = std::exp(-0.5 * i * label.chi());
    SpinorState s;
    s.up = gauge * std::cos(half_theta) * std::exp(-0.5 * i * label.phi());
    s.down = gauge * std::sin(half_theta) * std::exp(0.5 * i * label.phi());
    return s;
}

cplx inner(const SpinorState& a, const SpinorState& b) {
    return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

cplx overlap(const CoherentLabel& a, const CoherentLabel& b) {
    return inner(coherent_state(a), coherent_state(b));
}

SpinorState stereo_state(const StereoLabel& z) {
    const double n = std::sqrt(1.0 + std::norm(z.zeta));
    return {1.0 / n, z.zeta / n};
}

StereoLabel to_stereo(const CoherentLabel& label) {
    if (label.theta() >= kPi) {
        throw InfinitePole("to_stereo: theta = pi maps to infinity");
    }
    const cplx i{0.0, 1.0};
    return {std::tan(0.5 * label.theta()) * std::exp(i * label.phi())};
}

CoherentLabel to_label(const StereoLabel& z) {
    const double r = std::abs(z.zeta);
    const double theta = 2.0 * std::atan(r);
    const double phi = (r == 0.0) ? 0.0 : std::arg(z.zeta);
    return CoherentLabel(theta, phi, 0.0);
}

cplx expectation(const CoherentLabel& a, const CoherentLabel& b, const Vec3& b_field) {
    const SpinorState sa = coherent_state(a);
    const SpinorState sb = coherent_state(b);
    const cplx den = inner(sa, sb);
    if (std::abs(den) < 1e-14) {
        throw DegenerateOverlap("expectation: |<a|b>| < 1e-14");
    }
    const Mat2 h = dot_spin(b_field);
    const SpinorState hb{h.a11 * sb.up + h.a12 * sb.down, h.a21 * sb.up + h.a22 * sb.down};
    return inner(sa, hb) / den;
}

Vec3 bloch_vector(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 bloch_vector(const CoherentLabel& label) {
    return bloch_vector(label.theta(), label.phi());
}

double geodesic_distance(const Vec3& a, const Vec3& b) {
    // atan2 form is stable near 0 and pi.
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

double geodesic_distance(const CoherentLabel& a, const CoherentLabel& b) {
    return geodesic_distance(bloch_vector(a), bloch_vector(b));
}

}  // namespace spinpath
