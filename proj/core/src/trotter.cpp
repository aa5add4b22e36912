#include "spinpath/trotter.hpp"

namespace spinpath {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess, Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

SphereGrid build_grid(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 2) {
        throw InvalidGrid("build_grid: need n_theta >= 1 and n_phi >= 2");
    }
    std::vector<double> x, w;
    gauss_legendre(n_theta, x, w);

    SphereGrid grid;
    grid.n_theta = n_theta;
    grid.n_phi = n_phi;
    grid.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    grid.weights.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        const double theta = std::acos(x[i]);
        for (int j = 0; j < n_phi; ++j) {
            grid.nodes.push_back({theta, 2.0 * kPi * j / n_phi});
            // GL weight sums to 2 over cos(theta); normalize total to 1.
            grid.weights.push_back(w[i] / (2.0 * n_phi));
        }
    }
    return grid;
}

Mat2 resolve_identity(const SphereGrid& grid) {
    Mat2 acc;
    for (std::size_t j = 0; j < grid.nodes.size(); ++j) {
        const SpinorState s = coherent_state({grid.nodes[j].theta, grid.nodes[j].phi, 0.0});
        const double w = grid.measure_weight(j);
        acc.a11 += w * s.up * std::conj(s.up);
        acc.a12 += w * s.up * std::conj(s.down);
        acc.a21 += w * s.down * std::conj(s.up);
        acc.a22 += w * s.down * std::conj(s.down);
    }
    return acc;
}

cplx slice_kernel(const CoherentLabel& next, const CoherentLabel& cur, double eps,
                  const Vec3& b_mid) {
    const SpinorState sn = coherent_state(next);
    const SpinorState sc = coherent_state(cur);
    const cplx ov = inner(sn, sc);
    if (std::abs(ov) < 1e-14) return 0.0;  // antipodal pair, measure-zero contribution
    const Mat2 h = dot_spin(b_mid);
    const SpinorState hc{h.a11 * sc.up + h.a12 * sc.down, h.a21 * sc.up + h.a22 * sc.down};
    const cplx e = inner(sn, hc) / ov;
    const cplx i{0.0, 1.0};
    return ov * std::exp(-i * eps * e);
}

namespace {

CoherentLabel node_label(const SphereGrid::Node& n, NodeSection section) {
    const double chi = (section == NodeSection::chi_minus_phi) ? -n.phi : 0.0;
    return {n.theta, n.phi, chi};
}

SpinorState apply(const Mat2& h, const SpinorState& s) {
    return {h.a11 * s.up + h.a12 * s.down, h.a21 * s.up + h.a22 * s.down};
}

// Same kernel as slice_kernel, on precomputed spinors. Antipodal pairs keep
// their O(eps) matrix element: the overlap factor vanishes there but
// <next|H|cur> does not, and dropping it leaves a grid-dependent bias in the
// contraction that never decays with n.
cplx pair_kernel(const SpinorState& sn, const SpinorState& sc, double eps, const Mat2& h) {
    const cplx ov = inner(sn, sc);
    const cplx me = inner(sn, apply(h, sc));
    const cplx i{0.0, 1.0};
    if (std::abs(ov) < 1e-14) return -i * eps * me;
    return ov * std::exp(-i * eps * (me / ov));
}

}  // namespace

cplx trotter_propagator(const FieldProtocol& field, int n, const SphereGrid& grid,
                        const CoherentLabel& bra, const CoherentLabel& ket,
                        const TrotterOptions& opts) {
    if (n < 1) throw RangeError("trotter_propagator: n >= 1 required");
    const double eps = field.duration() / n;
    const double off = (opts.sampling == FieldSampling::midpoint) ? 0.5 : 0.0;
    auto b_at_slice = [&](int k) { return field.at((k + off) * eps); };  // slice k = 0..n-1

    if (n == 1) return slice_kernel(bra, ket, eps, b_at_slice(0));

    const std::size_t m = grid.nodes.size();
    std::vector<SpinorState> states;
    states.reserve(m);
    for (const auto& node : grid.nodes) states.push_back(coherent_state(node_label(node, opts.section)));
    const SpinorState sbra = coherent_state(bra);
    const SpinorState sket = coherent_state(ket);

    // First slice: ket -> grid nodes.
    std::vector<cplx> v(m);
    {
        const Mat2 h = dot_spin(b_at_slice(0));
        for (std::size_t j = 0; j < m; ++j) v[j] = pair_kernel(states[j], sket, eps, h);
    }
    // Interior slices: deterministic fixed-order matrix-vector sweeps.
    std::vector<cplx> next(m);
    for (int k = 1; k < n - 1; ++k) {
        const Mat2 h = dot_spin(b_at_slice(k));
        for (std::size_t a = 0; a < m; ++a) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                acc += grid.measure_weight(j) * pair_kernel(states[a], states[j], eps, h) * v[j];
            }
            next[a] = acc;
        }
        std::swap(v, next);
    }
    // Last slice: grid nodes -> bra.
    cplx amp = 0.0;
    {
        const Mat2 h = dot_spin(b_at_slice(n - 1));
        for (std::size_t j = 0; j < m; ++j) {
            amp += grid.measure_weight(j) * pair_kernel(sbra, states[j], eps, h) * v[j];
        }
    }
    return amp;
}

}  // namespace spinpath
