#pragma once

#include <functional>
#include <vector>

#include "spinpath/field.hpp"
#include "spinpath/flow.hpp"
#include "spinpath/su2.hpp"
#include "spinpath/trotter.hpp"

namespace spinpath {

// A section fixes the fiber phase chi(theta, phi) per coherent state.
struct GaugeSection {
    enum class Kind { chi_zero, chi_minus_phi, custom };

    Kind kind = Kind::chi_zero;
    std::function<double(double, double)> chi;
    std::function<double(double, double)> dchi_dtheta;
    std::function<double(double, double)> dchi_dphi;

    static GaugeSection chi_zero();
    static GaugeSection chi_minus_phi();
    static GaugeSection custom(std::function<double(double, double)> chi,
                               std::function<double(double, double)> dchi_dtheta,
                               std::function<double(double, double)> dchi_dphi);
};

// theta = 1/2 (cos(theta) dphi + dchi) restricted to the section.
struct PotentialComponents {
    double theta_theta;
    double theta_phi;
};

PotentialComponents potential_components(const GaugeSection& section, double theta, double phi);

// max over grid nodes of |theta(X_H) - H|; the necessary condition for
// self-evident stationary-phase exactness is a zero residual.
double dspa_residual(const Vec3& b, const GaugeSection& section, const SphereGrid& grid);

// Complexified stationary pair: zeta carries the initial condition forward
// by the Moebius action of U(s), zetabar carries the final condition backward.
// In general zetabar(s) != conj(zeta(s)).
struct ComplexPath {
    std::vector<double> s;
    std::vector<cplx> zeta;
    std::vector<cplx> zetabar;
    cplx zeta_start;
    cplx zetabar_end;
};

struct BvpOptions {
    int samples = 4096;   // even; Simpson intervals for the later quadrature
    int substeps = 16;    // oracle substeps per sample interval
};

ComplexPath solve_complex_bvp(cplx zeta_start, cplx zetabar_end, const FieldProtocol& field,
                              const BvpOptions& opts = {});  // throws PoleCrossing

// Semiclassical amplitude on the complexified stationary path, evaluated in the
// stereographic (chi = -phi) section and converted to the labels' gauge phases.
cplx dspa_element(const CoherentLabel& bra, const CoherentLabel& ket, const FieldProtocol& field,
                  const BvpOptions& opts = {});  // throws PoleCrossing, InfinitePole

}  // namespace spinpath
