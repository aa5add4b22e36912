#include "spinpath/oracle.hpp"

namespace spinpath {

Mat2 axis_angle_step(const Vec3& b, double eps) {
    const double bn = b.norm();
    if (bn == 0.0 || eps == 0.0) return Mat2::identity();
    const double half = 0.5 * eps * bn;
    const Vec3 n = b * (1.0 / bn);
    const cplx i{0.0, 1.0};
    const double c = std::cos(half);
    const double s = std::sin(half);
    // cos I - i sin (n.sigma)
    return {c - i * s * n.z, -i * s * (n.x - i * n.y), -i * s * (n.x + i * n.y), c + i * s * n.z};
}

PropagatorMatrix propagate_window(const FieldProtocol& field, double s0, double s1, int steps) {
    if (steps < 1) throw RangeError("propagate: steps >= 1 required");
    const double eps = (s1 - s0) / steps;
    Mat2 u = Mat2::identity();
    for (int k = 0; k < steps; ++k) {
        const double mid = s0 + (k + 0.5) * eps;
        u = axis_angle_step(field.at(mid), eps) * u;
    }
    return {u};
}

PropagatorMatrix propagate(const FieldProtocol& field, int steps) {
    return propagate_window(field, 0.0, field.duration(), steps);
}

cplx matrix_element(const CoherentLabel& bra, const PropagatorMatrix& u,
                    const CoherentLabel& ket) {
    const SpinorState b = coherent_state(bra);
    const SpinorState k = coherent_state(ket);
    const SpinorState uk{u.u.a11 * k.up + u.u.a12 * k.down, u.u.a21 * k.up + u.u.a22 * k.down};
    return inner(b, uk);
}

}  // namespace spinpath
