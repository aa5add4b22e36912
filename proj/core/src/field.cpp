#include "spinpath/field.hpp"

#include <cmath>

namespace spinpath {

FieldProtocol FieldProtocol::constant(const Vec3& b, double t) {
    FieldProtocol f;
    f.kind_ = Kind::constant;
    f.b0_ = b;
    f.t_ = t;
    return f;
}

FieldProtocol FieldProtocol::rotating(double b_perp, double omega_r, double b_z, double t) {
    FieldProtocol f;
    f.kind_ = Kind::rotating;
    f.b_perp_ = b_perp;
    f.omega_r_ = omega_r;
    f.b_z_ = b_z;
    f.t_ = t;
    return f;
}

FieldProtocol FieldProtocol::linear_sweep(const Vec3& b_start, const Vec3& b_end, double t) {
    FieldProtocol f;
    f.kind_ = Kind::linear_sweep;
    f.b0_ = b_start;
    f.b1_ = b_end;
    f.t_ = t;
    return f;
}

FieldProtocol FieldProtocol::tabulated(std::vector<double> times, std::vector<Vec3> values,
                                       double t) {
    if (times.size() < 2 || times.size() != values.size()) {
        throw RangeError("tabulated protocol needs >= 2 matching samples");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw RangeError("tabulated protocol times must be strictly increasing");
        }
    }
    FieldProtocol f;
    f.kind_ = Kind::tabulated;
    f.times_ = std::move(times);
    f.values_ = std::move(values);
    f.t_ = t;
    return f;
}

Vec3 FieldProtocol::at(double s) const {
    switch (kind_) {
        case Kind::constant:
            return b0_;
        case Kind::rotating:
            return {b_perp_ * std::cos(omega_r_ * s), b_perp_ * std::sin(omega_r_ * s), b_z_};
        case Kind::linear_sweep: {
            const double u = (t_ > 0.0) ? s / t_ : 0.0;
            return b0_ + (b1_ - b0_) * u;
        }
        case Kind::tabulated: {
            if (s <= times_.front()) return values_.front();
            if (s >= times_.back()) return values_.back();
            std::size_t hi = 1;
            while (times_[hi] < s) ++hi;
            const double u = (s - times_[hi - 1]) / (times_[hi] - times_[hi - 1]);
            return values_[hi - 1] + (values_[hi] - values_[hi - 1]) * u;
        }
    }
    return {};
}

}  // namespace spinpath
