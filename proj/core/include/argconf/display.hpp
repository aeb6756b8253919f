#pragma once

#include <string>

#include "argconf/opinion.hpp"

namespace argconf {

/// Fixed-point rendering rounded half-to-even at `precision` decimals.
std::string format_fixed(double value, int precision);

/// "(b, d, u)" at `precision` decimals, e.g. "(0.86, 0.00, 0.14)".
std::string format_triple(const Opinion& o, int precision);

}  // namespace argconf
