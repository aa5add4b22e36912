#include "spinpath/flow.hpp"

namespace spinpath {

double classical_symbol(const Vec3& b, double theta, double phi) {
    return 0.5 * b.dot(bloch_vector(theta, phi));
}

double classical_symbol(const Vec3& b, const CoherentLabel& label) {
    return classical_symbol(b, label.theta(), label.phi());
}

ChartVelocity hamiltonian_vector_field(const Vec3& b, double theta, double phi) {
    const double st = std::sin(theta);
    if (st < 1e-9) throw PoleChart("hamiltonian_vector_field: chart degenerates at the pole");
    const double ct = std::cos(theta);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    // dH = 1/2 (B . e_theta) dtheta + 1/2 (B . e_phi) sin(theta) dphi
    const double dh_dtheta = 0.5 * (b.x * ct * cp + b.y * ct * sp - b.z * st);
    const double dh_dphi = 0.5 * (-b.x * st * sp + b.y * st * cp);
    return {2.0 / st * dh_dphi, -2.0 / st * dh_dtheta};
}

ClassicalTrajectory integrate_flow(const CoherentLabel& start, const FieldProtocol& field,
                                   int steps) {
    if (steps < 1) throw RangeError("integrate_flow: steps >= 1 required");
    const double h = field.duration() / steps;
    auto rhs = [&](double s, const Vec3& n) { return field.at(s).cross(n); };

    ClassicalTrajectory traj;
    traj.samples.reserve(steps + 1);
    Vec3 n = bloch_vector(start);
    auto push = [&](double s, const Vec3& v) {
        const double theta = std::acos(std::clamp(v.z, -1.0, 1.0));
        double phi = std::atan2(v.y, v.x);
        if (phi < 0.0) phi += 2.0 * kPi;
        traj.samples.push_back({s, theta, phi, v, 0.5 * field.at(s).dot(v)});
    };
    push(0.0, n);
    for (int k = 0; k < steps; ++k) {
        const double s = k * h;
        const Vec3 k1 = rhs(s, n);
        const Vec3 k2 = rhs(s + 0.5 * h, n + 0.5 * h * k1);
        const Vec3 k3 = rhs(s + 0.5 * h, n + 0.5 * h * k2);
        const Vec3 k4 = rhs(s + h, n + h * k3);
        n = n + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        n = n.normalized();
        push((k + 1) * h, n);
    }
    return traj;
}

ShootResult shoot_boundary(const CoherentLabel& from, const CoherentLabel& to,
                           const FieldProtocol& field, double tol, int steps) {
    if (!(tol > 0.0)) throw RangeError("shoot_boundary: tol > 0 required");
    const ClassicalTrajectory traj = integrate_flow(from, field, steps);
    const Vec3 endpoint = traj.samples.back().n;
    const double residual = geodesic_distance(endpoint, bloch_vector(to));
    const auto status =
        residual <= tol ? ShootResult::Status::solution : ShootResult::Status::infeasible;
    return {status, residual, from};
}

}  // namespace spinpath
