#pragma once

#include <vector>

#include "spinpath/field.hpp"
#include "spinpath/oracle.hpp"
#include "spinpath/su2.hpp"

namespace spinpath {

// Gauss-Legendre nodes in cos(theta) crossed with uniform phi nodes.
// Stored weights are normalized to sum to 1; the measure sin(theta) dtheta dphi / (2 pi)
// carries total mass 2, so every identity insertion uses measure_weight = 2 * weight.
struct SphereGrid {
    struct Node {
        double theta;
        double phi;
    };
    std::vector<Node> nodes;
    std::vector<double> weights;

    int n_theta = 0;
    int n_phi = 0;

    double measure_weight(std::size_t j) const { return 2.0 * weights[j]; }
};

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

SphereGrid build_grid(int n_theta, int n_phi);  // throws InvalidGrid

// Sum_j measure_weight_j |Omega_j><Omega_j| at chi = 0; approximates I.
Mat2 resolve_identity(const SphereGrid& grid);

// overlap(next, cur) * exp(-i eps <H>_ratio); exactly 0 for antipodal node pairs.
cplx slice_kernel(const CoherentLabel& next, const CoherentLabel& cur, double eps,
                  const Vec3& b_mid);

enum class FieldSampling { midpoint, left_endpoint };
enum class NodeSection { chi_zero, chi_minus_phi };

struct TrotterOptions {
    FieldSampling sampling = FieldSampling::midpoint;
    NodeSection section = NodeSection::chi_zero;
};

// Discrete path-integral amplitude <bra| U(t) |ket> with n slices on the grid.
cplx trotter_propagator(const FieldProtocol& field, int n, const SphereGrid& grid,
                        const CoherentLabel& bra, const CoherentLabel& ket,
                        const TrotterOptions& opts = {});

}  // namespace spinpath
