#pragma once

#include <boost/multiprecision/float128.hpp>

namespace heatkern {

/// IEEE quadruple precision (113-bit mantissa), used where double round-off
/// would swamp small-t asymptotic residuals.
using Quad = boost::multiprecision::float128;

}  // namespace heatkern
