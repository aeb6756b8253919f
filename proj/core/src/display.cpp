#include "argconf/display.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace argconf {

namespace {

// Values this close to a half step are decimal ties blurred by binary
// representation, e.g. 0.145 stored as 0.14499999999999999.
constexpr double kTieTolerance = 1e-9;

}  // namespace

std::string format_fixed(double value, int precision) {
    const double scaled = value * std::pow(10.0, precision);
    const double lower = std::floor(scaled);
    const double frac = scaled - lower;
    double units;
    if (std::abs(frac - 0.5) <= kTieTolerance * std::max(1.0, std::abs(scaled))) {
        units = std::fmod(lower, 2.0) == 0.0 ? lower : lower + 1.0;
    } else {
        units = std::round(scaled);
    }
    if (units == 0.0) units = 0.0;  // no "-0.00"

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, units / std::pow(10.0, precision));
    return buf;
}

std::string format_triple(const Opinion& o, int precision) {
    return "(" + format_fixed(o.b, precision) + ", " + format_fixed(o.d, precision) + ", " +
           format_fixed(o.u, precision) + ")";
}

}  // namespace argconf
