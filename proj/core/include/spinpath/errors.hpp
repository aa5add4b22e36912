#pragma once

#include <stdexcept>
#include <string>

namespace spinpath {

struct InvalidGrid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stereographic chart cannot represent the south pole.
struct InfinitePole : std::domain_error {
    using std::domain_error::domain_error;
};

// (theta, phi) chart degenerates; caller should switch to the Bloch-vector form.
struct PoleChart : std::domain_error {
    using std::domain_error::domain_error;
};

// Complexified stationary path ran through the chart's south pole.
struct PoleCrossing : std::runtime_error {
    PoleCrossing(const std::string& what, double s_at) : std::runtime_error(what), s(s_at) {}
    double s;
};

struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct UnknownKey : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace spinpath
