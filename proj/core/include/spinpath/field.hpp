#pragma once

#include <vector>

#include "spinpath/su2.hpp"

namespace spinpath {

// Time-dependent magnetic field B(s) on [0, t]; H(s) = B(s).S.
class FieldProtocol {
public:
    enum class Kind { constant, rotating, linear_sweep, tabulated };

    static FieldProtocol constant(const Vec3& b, double t);
    // B(s) = (b_perp cos(omega_r s), b_perp sin(omega_r s), b_z)
    static FieldProtocol rotating(double b_perp, double omega_r, double b_z, double t);
    // linear interpolation from b_start at s=0 to b_end at s=t
    static FieldProtocol linear_sweep(const Vec3& b_start, const Vec3& b_end, double t);
    // piecewise-linear through (times[i], values[i]); clamped outside the table
    static FieldProtocol tabulated(std::vector<double> times, std::vector<Vec3> values, double t);

    Kind kind() const { return kind_; }
    double duration() const { return t_; }
    Vec3 at(double s) const;

    // accessors for config echo
    const Vec3& b_constant() const { return b0_; }
    const Vec3& b_start() const { return b0_; }
    const Vec3& b_end() const { return b1_; }
    double b_perp() const { return b_perp_; }
    double omega_r() const { return omega_r_; }
    double b_z() const { return b_z_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<Vec3>& values() const { return values_; }

private:
    FieldProtocol() = default;

    Kind kind_ = Kind::constant;
    double t_ = 0.0;
    Vec3 b0_, b1_;
    double b_perp_ = 0.0, omega_r_ = 0.0, b_z_ = 0.0;
    std::vector<double> times_;
    std::vector<Vec3> values_;
};

}  // namespace spinpath
