#include "spinpath/dspa.hpp"

#include "spinpath/oracle.hpp"

namespace spinpath {

GaugeSection GaugeSection::chi_zero() {
    GaugeSection s;
    s.kind = Kind::chi_zero;
    s.chi = [](double, double) { return 0.0; };
    s.dchi_dtheta = [](double, double) { return 0.0; };
    s.dchi_dphi = [](double, double) { return 0.0; };
    return s;
}

GaugeSection GaugeSection::chi_minus_phi() {
    GaugeSection s;
    s.kind = Kind::chi_minus_phi;
    s.chi = [](double, double phi) { return -phi; };
    s.dchi_dtheta = [](double, double) { return 0.0; };
    s.dchi_dphi = [](double, double) { return -1.0; };
    return s;
}

GaugeSection GaugeSection::custom(std::function<double(double, double)> chi,
                                  std::function<double(double, double)> dchi_dtheta,
                                  std::function<double(double, double)> dchi_dphi) {
    GaugeSection s;
    s.kind = Kind::custom;
    s.chi = std::move(chi);
    s.dchi_dtheta = std::move(dchi_dtheta);
    s.dchi_dphi = std::move(dchi_dphi);
    return s;
}

PotentialComponents potential_components(const GaugeSection& section, double theta, double phi) {
    return {0.5 * section.dchi_dtheta(theta, phi),
            0.5 * (std::cos(theta) + section.dchi_dphi(theta, phi))};
}

double dspa_residual(const Vec3& b, const GaugeSection& section, const SphereGrid& grid) {
    double worst = 0.0;
    for (const auto& node : grid.nodes) {
        const auto [tt, tp] = potential_components(section, node.theta, node.phi);
        const ChartVelocity v = hamiltonian_vector_field(b, node.theta, node.phi);
        const double h = classical_symbol(b, node.theta, node.phi);
        worst = std::max(worst, std::abs(tt * v.theta_dot + tp * v.phi_dot - h));
    }
    return worst;
}

namespace {

cplx moebius_forward(const Mat2& u, cplx zeta_start, double s) {
    const cplx den = u.a11 + u.a12 * zeta_start;
    if (std::abs(den) < 1e-12) {
        throw PoleCrossing("complex path crosses the chart's south pole", s);
    }
    return (u.a21 + u.a22 * zeta_start) / den;
}

// r(s) = (1, zetabar'') U(t) U(s)^{-1}; zetabar = r2 / r1. v = U(t) U(s)^{-1}.
cplx moebius_backward(const Mat2& v, cplx zetabar_end, double s) {
    const cplx den = v.a11 + zetabar_end * v.a21;
    if (std::abs(den) < 1e-12) {
        throw PoleCrossing("conjugate path crosses the chart's south pole", s);
    }
    return (v.a12 + zetabar_end * v.a22) / den;
}

}  // namespace

ComplexPath solve_complex_bvp(cplx zeta_start, cplx zetabar_end, const FieldProtocol& field,
                              const BvpOptions& opts) {
    if (opts.samples < 2 || opts.samples % 2 != 0 || opts.substeps < 1) {
        throw RangeError("solve_complex_bvp: samples must be even >= 2, substeps >= 1");
    }
    const int m = opts.samples;
    const double t = field.duration();
    const double ds = t / m;

    // Per-interval step matrices, then prefix products U(s_j) and suffix V(s_j) = U(t) U(s_j)^-1.
    std::vector<Mat2> step(m);
    for (int j = 0; j < m; ++j) {
        step[j] = propagate_window(field, j * ds, (j + 1) * ds, opts.substeps).u;
    }
    std::vector<Mat2> u_fwd(m + 1), v_bwd(m + 1);
    u_fwd[0] = Mat2::identity();
    for (int j = 0; j < m; ++j) u_fwd[j + 1] = step[j] * u_fwd[j];
    v_bwd[m] = Mat2::identity();
    for (int j = m - 1; j >= 0; --j) v_bwd[j] = v_bwd[j + 1] * step[j];

    ComplexPath path;
    path.zeta_start = zeta_start;
    path.zetabar_end = zetabar_end;
    path.s.resize(m + 1);
    path.zeta.resize(m + 1);
    path.zetabar.resize(m + 1);
    for (int j = 0; j <= m; ++j) {
        const double s = j * ds;
        path.s[j] = s;
        path.zeta[j] = moebius_forward(u_fwd[j], zeta_start, s);
        path.zetabar[j] = moebius_backward(v_bwd[j], zetabar_end, s);
    }
    return path;
}

cplx dspa_element(const CoherentLabel& bra, const CoherentLabel& ket, const FieldProtocol& field,
                  const BvpOptions& opts) {
    const cplx i{0.0, 1.0};
    const cplx zeta_start = to_stereo(ket).zeta;
    const cplx zetabar_end = std::conj(to_stereo(bra).zeta);
    const ComplexPath path = solve_complex_bvp(zeta_start, zetabar_end, field, opts);

    // Dynamical integrand along the stationary pair. The symmetric form
    //   1/2 [log(1+zb'' z(t)) + log(1+zb(0) z')] + int { 1/2 (zb' z - zb z')/(1+zb z) - i H }
    // is rearranged to a single boundary log plus int { zb' z/(1+zb z) - i H },
    // which is algebraically identical and needs no branch tracking.
    const int m = opts.samples;
    std::vector<cplx> f(m + 1);
    for (int j = 0; j <= m; ++j) {
        const Vec3 b = field.at(path.s[j]);
        const cplx bp{b.x, b.y};                 // B_+ = Bx + i By
        const cplx bm = std::conj(bp);           // B_- = Bx - i By
        const cplx z = path.zeta[j];
        const cplx zb = path.zetabar[j];
        const cplx den = 1.0 + zb * z;
        if (std::abs(den) < 1e-12) {
            throw PoleCrossing("covariant symbol pole on the stationary path", path.s[j]);
        }
        const cplx zb_dot = i * (0.5 * bm - b.z * zb - 0.5 * bp * zb * zb);
        const cplx h_cov = 0.5 * (b.z * (1.0 - zb * z) + bm * z + bp * zb) / den;
        f[j] = zb_dot * z / den - i * h_cov;
    }
    // Composite Simpson over the analytically propagated samples.
    const double ds = field.duration() / m;
    cplx integral = f[0] + f[m];
    for (int j = 1; j < m; ++j) integral += (j % 2 == 1 ? 4.0 : 2.0) * f[j];
    integral *= ds / 3.0;

    const cplx boundary = 1.0 + path.zetabar.front() * zeta_start;
    const double norm = std::sqrt((1.0 + std::norm(zetabar_end)) * (1.0 + std::norm(zeta_start)));
    const cplx a_stereo = boundary / norm * std::exp(integral);

    // |zeta> = e^{+i phi/2} |Omega(chi=0)>, then restore the labels' chi phases.
    const cplx gauge = std::exp(
        0.5 * i * ((bra.phi() - ket.phi()) + (bra.chi() - ket.chi())));
    return gauge * a_stereo;
}

}  // namespace spinpath
