#pragma once

#include <cstdint>
#include <vector>

#include "spinpath/field.hpp"
#include "spinpath/su2.hpp"

namespace spinpath {

// Discrete path on S^2 with pinned endpoints; labels carry chi = 0.
struct SpherePath {
    std::vector<CoherentLabel> labels;  // length n+2 for n interior points
    double eps = 0.0;                   // time per segment
};

struct RegulatedEstimate {
    cplx mean{0.0};
    double std_error = 0.0;
    long n_samples = 0;
    double nu = 0.0;
    std::uint64_t seed = 0;
    bool high_variance = false;  // std_error > 0.1 |mean|
};

// exp{ -(1/nu) sum_k [ 1/4 dtheta^2 + 1/4 sin^2(theta_mid) dphi^2 ] / eps },
// dphi wrapped to the shorter arc.
double regulator_weight(const SpherePath& path, double nu);

// Sequential spherical Brownian bridge: per step a tangent Gaussian of
// variance ~ nu*eps around the geodesic interpolant toward the target,
// drawn through a tabulated inverse CDF so the sampling density is known
// exactly for importance weighting.
class BridgeSampler {
public:
    BridgeSampler(const CoherentLabel& from, const CoherentLabel& to, int n_interior, double nu,
                  double eps);

    struct Sample {
        SpherePath path;
        double log_is_weight;  // log prod_k [node measure / sampling density]
    };

    Sample draw(std::uint64_t seed) const;

    double step_sigma2() const { return sigma2_; }

private:
    Vec3 from_, to_;
    int n_ = 0;
    double eps_ = 0.0;
    double sigma2_ = 0.0;  // base per-step tangent variance

    struct StepTable {
        double h = 0.0;               // bin width; the table spans [0, bins*h]
        std::vector<double> cdf;      // size bins+1, cdf[0]=0, cdf[bins]=1
        std::vector<double> density;  // normalized density per bin (of gamma)
    };
    std::vector<StepTable> tables_;  // one per interior step (bridge variance shrinks)
};

// Convenience wrapper; deterministic for fixed seed.
SpherePath sample_bridge(const CoherentLabel& from, const CoherentLabel& to, int n, double nu,
                         double eps, std::uint64_t seed);

// Monte Carlo estimate of <bra| U(t) |ket> from regulated bridge paths,
// self-normalized against the same paths with B = 0 so that the field-free
// closed amplitude is exactly 1.
RegulatedEstimate regulated_propagator(const FieldProtocol& field, int n, double nu,
                                       long n_samples, const CoherentLabel& bra,
                                       const CoherentLabel& ket, std::uint64_t seed,
                                       int jobs = 1);

}  // namespace spinpath
