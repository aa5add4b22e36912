#pragma once

#include <vector>

#include "spinpath/field.hpp"
#include "spinpath/su2.hpp"

namespace spinpath {

// omega = 1/2 sin(theta) dtheta ^ dphi, g = 1/4 (dtheta^2 + sin^2 theta dphi^2).
struct SymplecticStructure {
    static double omega_coeff(double theta) { return 0.5 * std::sin(theta); }
    static double g_theta_theta() { return 0.25; }
    static double g_phi_phi(double theta) {
        const double s = std::sin(theta);
        return 0.25 * s * s;
    }
};

struct ChartVelocity {
    double theta_dot;
    double phi_dot;
};

struct ClassicalTrajectory {
    struct Sample {
        double s;
        double theta;
        double phi;
        Vec3 n;
        double energy;
    };
    std::vector<Sample> samples;
};

struct ShootResult {
    enum class Status { solution, infeasible };
    Status status;
    double residual;  // geodesic distance between achieved and requested endpoint
    CoherentLabel initial_guess_used;
};

// H(theta, phi) = <Omega| B.S |Omega> = (1/2) B . n(theta, phi).
double classical_symbol(const Vec3& b, const CoherentLabel& label);
double classical_symbol(const Vec3& b, double theta, double phi);

// Unique solution of omega(X_H, .) = dH in the chart interior; throws PoleChart
// when sin(theta) < 1e-9.
ChartVelocity hamiltonian_vector_field(const Vec3& b, double theta, double phi);

// RK4 on the chart-free Bloch form n' = B x n, renormalized each step.
ClassicalTrajectory integrate_flow(const CoherentLabel& start, const FieldProtocol& field,
                                   int steps);

// Both angles of `from` fix the flow, so the reachable endpoint is unique:
// solution iff it lands within tol of `to`.
ShootResult shoot_boundary(const CoherentLabel& from, const CoherentLabel& to,
                           const FieldProtocol& field, double tol, int steps = 10000);

}  // namespace spinpath
