#include "spinpath/wiener.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "spinpath/trotter.hpp"

namespace spinpath {

namespace {

constexpr int kStepBins = 1024;

double wrap_pm_pi(double x) {
    double p = std::fmod(x, 2.0 * kPi);
    if (p <= -kPi) p += 2.0 * kPi;
    if (p > kPi) p -= 2.0 * kPi;
    return p;
}

// log of the regulator factor; exponent kept separate to avoid underflow
double regulator_log(const SpherePath& path, double nu) {
    if (!(nu > 0.0)) throw RangeError("regulator: nu > 0 required");
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < path.labels.size(); ++k) {
        const double dtheta = path.labels[k + 1].theta() - path.labels[k].theta();
        const double dphi = wrap_pm_pi(path.labels[k + 1].phi() - path.labels[k].phi());
        const double mid = 0.5 * (path.labels[k + 1].theta() + path.labels[k].theta());
        const double s = std::sin(mid);
        acc += 0.25 * dtheta * dtheta + 0.25 * s * s * dphi * dphi;
    }
    return -acc / (nu * path.eps);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
};

Vec3 slerp(const Vec3& a, const Vec3& b, double u) {
    const double ang = geodesic_distance(a, b);
    if (ang < 1e-12) return a;
    Vec3 axis = a.cross(b);
    if (axis.norm() < 1e-12) {
        // antipodal: route through an arbitrary perpendicular
        Vec3 h = (std::abs(a.x) < 0.9) ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        axis = a.cross(h);
    }
    const Vec3 e = axis.normalized().cross(a);
    return (std::cos(u * ang) * a + std::sin(u * ang) * e).normalized();
}

CoherentLabel vec_to_label(const Vec3& v) {
    const double theta = std::acos(std::clamp(v.z, -1.0, 1.0));
    double phi = std::atan2(v.y, v.x);
    if (phi < 0.0) phi += 2.0 * kPi;
    return {theta, phi, 0.0};
}

}  // namespace

double regulator_weight(const SpherePath& path, double nu) {
    return std::exp(regulator_log(path, nu));
}

BridgeSampler::BridgeSampler(const CoherentLabel& from, const CoherentLabel& to, int n_interior,
                             double nu, double eps) {
    if (n_interior < 0) throw RangeError("BridgeSampler: n_interior >= 0 required");
    if (!(nu > 0.0) || !(eps > 0.0)) throw RangeError("BridgeSampler: nu, eps > 0 required");
    from_ = bloch_vector(from);
    to_ = bloch_vector(to);
    n_ = n_interior;
    eps_ = eps;
    sigma2_ = 2.0 * nu * eps;  // matches the regulator's per-step Gaussian width

    tables_.resize(n_);
    for (int k = 0; k < n_; ++k) {
        const int m = n_ + 1 - k;  // segments remaining before this draw
        const double bridge_var = sigma2_ * (m - 1.0) / m;
        // fold in a Gaussian surrogate of the overlap damping: cos(d/2) <=
        // exp(-d^2/8), so the proposal always dominates the integrand magnitude
        // and the importance weights stay bounded
        const double veff = 1.0 / (1.0 / bridge_var + 0.25);
        auto& tab = tables_[k];
        // span the table over the region carrying the Gaussian mass; a fixed
        // [0, pi] table both underflows and loses resolution at small veff
        const double gmax = std::min(kPi, 12.0 * std::sqrt(veff));
        const double h = gmax / kStepBins;
        tab.h = h;
        tab.cdf.assign(kStepBins + 1, 0.0);
        tab.density.assign(kStepBins, 0.0);
        double z = 0.0;
        for (int i = 0; i < kStepBins; ++i) {
            const double g = (i + 0.5) * h;
            // log-space with a shift so tight bridges do not underflow
            const double lr = std::log(std::sin(g)) - g * g / (2.0 * veff);
            tab.density[i] = lr;
        }
        const double lmax = *std::max_element(tab.density.begin(), tab.density.end());
        for (int i = 0; i < kStepBins; ++i) {
            tab.density[i] = std::exp(tab.density[i] - lmax);
            z += tab.density[i] * h;
        }
        for (int i = 0; i < kStepBins; ++i) {
            tab.density[i] /= z;
            tab.cdf[i + 1] = tab.cdf[i] + tab.density[i] * h;
        }
        tab.cdf[kStepBins] = 1.0;
    }
}

BridgeSampler::Sample BridgeSampler::draw(std::uint64_t seed) const {
    Rng rng(seed);
    Sample out;
    out.path.eps = eps_;
    out.path.labels.reserve(n_ + 2);
    out.path.labels.push_back(vec_to_label(from_));
    out.log_is_weight = 0.0;

    Vec3 p = from_;
    for (int k = 0; k < n_; ++k) {
        const int m = n_ + 1 - k;
        const Vec3 center = slerp(p, to_, 1.0 / m);
        const auto& tab = tables_[k];
        const double h = tab.h;

        const double u = rng.uniform();
        const auto it = std::upper_bound(tab.cdf.begin(), tab.cdf.end(), u);
        int bin = static_cast<int>(it - tab.cdf.begin()) - 1;
        bin = std::clamp(bin, 0, kStepBins - 1);
        const double span = tab.cdf[bin + 1] - tab.cdf[bin];
        const double gamma =
            bin * h + (span > 0.0 ? (u - tab.cdf[bin]) / span * h : 0.5 * h);
        const double beta = 2.0 * kPi * rng.uniform();

        Vec3 ref = (std::abs(center.x) < 0.9) ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 e1 = center.cross(ref).normalized();
        const Vec3 e2 = center.cross(e1);
        p = (std::cos(gamma) * center +
             std::sin(gamma) * (std::cos(beta) * e1 + std::sin(beta) * e2))
                .normalized();

        // node weight = (target measure dA/2pi) / (sampling density) = sin(gamma)/g(gamma)
        out.log_is_weight += std::log(std::sin(std::max(gamma, 1e-300))) -
                             std::log(std::max(tab.density[bin], 1e-300));
        out.path.labels.push_back(vec_to_label(p));
    }
    out.path.labels.push_back(vec_to_label(to_));
    return out;
}

SpherePath sample_bridge(const CoherentLabel& from, const CoherentLabel& to, int n, double nu,
                         double eps, std::uint64_t seed) {
    if (n < 1) throw RangeError("sample_bridge: n >= 1 required");
    BridgeSampler sampler(from, to, n, nu, eps);
    SpherePath path = sampler.draw(splitmix64(seed)).path;
    // pin the requested boundary labels bit-exactly
    path.labels.front() = from;
    path.labels.back() = to;
    return path;
}

RegulatedEstimate regulated_propagator(const FieldProtocol& field, int n, double nu,
                                       long n_samples, const CoherentLabel& bra,
                                       const CoherentLabel& ket, std::uint64_t seed, int jobs) {
    if (n < 1 || n_samples < 1) throw RangeError("regulated_propagator: counts must be positive");
    const double eps = field.duration() / n;
    const cplx i{0.0, 1.0};
    const cplx bra_ket = overlap(bra, ket);

    RegulatedEstimate est;
    est.n_samples = n_samples;
    est.nu = nu;
    est.seed = seed;

    if (n == 1) {
        est.mean = slice_kernel(bra, ket, eps, field.at(0.5 * eps));
        return est;
    }

    const BridgeSampler sampler(ket, bra, n - 1, nu, eps);
    std::vector<Mat2> h_mid(n);
    for (int k = 0; k < n; ++k) h_mid[k] = dot_spin(field.at((k + 0.5) * eps));

    // v_s: field kernels, d_s: same path with B = 0 (overlaps only).
    std::vector<cplx> vs(n_samples), ds(n_samples);
    auto worker = [&](long lo, long hi) {
        std::vector<SpinorState> states(n + 1);
        for (long s = lo; s < hi; ++s) {
            const auto sample = sampler.draw(splitmix64(seed + 0x9E3779B97F4A7C15ull * (s + 1)));
            const auto& labels = sample.path.labels;
            for (int k = 0; k <= n; ++k) states[k] = coherent_state(labels[k]);
            cplx log_ov = 0.0;
            cplx phase = 0.0;
            bool dead = false;
            for (int k = 0; k < n; ++k) {
                const cplx ov = inner(states[k + 1], states[k]);
                if (std::abs(ov) < 1e-14) {
                    dead = true;
                    break;
                }
                const Mat2& h = h_mid[k];
                const SpinorState hc{h.a11 * states[k].up + h.a12 * states[k].down,
                                     h.a21 * states[k].up + h.a22 * states[k].down};
                log_ov += std::log(ov);
                phase += -i * eps * (inner(states[k + 1], hc) / ov);
            }
            if (dead) {
                vs[s] = 0.0;
                ds[s] = 0.0;
                continue;
            }
            const double lw = sample.log_is_weight + regulator_log(sample.path, nu);
            ds[s] = std::exp(log_ov + lw);
            vs[s] = std::exp(log_ov + lw + phase);
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker(0, n_samples);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (n_samples + jobs - 1) / jobs;
        for (int w = 0; w < jobs; ++w) {
            const long lo = w * chunk;
            const long hi = std::min<long>(n_samples, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // fixed-order reduction; results are independent of `jobs`
    cplx sum_v = 0.0, sum_d = 0.0;
    for (long s = 0; s < n_samples; ++s) {
        sum_v += vs[s];
        sum_d += ds[s];
    }
    const cplx ratio = sum_v / sum_d;
    est.mean = bra_ket * ratio;

    if (n_samples > 1) {
        const cplx mean_d = sum_d / static_cast<double>(n_samples);
        double acc = 0.0;
        for (long s = 0; s < n_samples; ++s) acc += std::norm(vs[s] - ratio * ds[s]);
        est.std_error = std::abs(bra_ket) *
                        std::sqrt(acc / (static_cast<double>(n_samples) *
                                         static_cast<double>(n_samples - 1))) /
                        std::abs(mean_d);
    }
    est.high_variance = est.std_error > 0.1 * std::abs(est.mean);
    return est;
}

}  // namespace spinpath
