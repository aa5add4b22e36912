#pragma once

#include "spinpath/field.hpp"
#include "spinpath/su2.hpp"

namespace spinpath {

// 2x2 approximation of the time-ordered U(t); unitary with det 1.
struct PropagatorMatrix {
    Mat2 u = Mat2::identity();
};

inline constexpr int kOracleDefaultSteps = 4096;

// exp(-i theta n.S) = cos(theta/2) I - 2i sin(theta/2) n.S
Mat2 axis_angle_step(const Vec3& b, double eps);

// Fine-step time-ordered product with midpoint field sampling.
PropagatorMatrix propagate(const FieldProtocol& field, int steps = kOracleDefaultSteps);

// Same product restricted to [s0, s1].
PropagatorMatrix propagate_window(const FieldProtocol& field, double s0, double s1, int steps);

// <Psi_bra | U | Psi_ket>, gauge phases included.
cplx matrix_element(const CoherentLabel& bra, const PropagatorMatrix& u, const CoherentLabel& ket);

}  // namespace spinpath
