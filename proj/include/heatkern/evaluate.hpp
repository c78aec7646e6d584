#pragma once

// Bridge from symbolic differential polynomials to functions on the circle.

#include "heatkern/diffpoly.hpp"
#include "heatkern/periodic_function.hpp"
#include "heatkern/precision.hpp"

namespace heatkern {

/// Smallest grid on which every product in `p` is represented without
/// aliasing: 2 * (max word length) * bandwidth(q) + 1.
int required_grid(const DiffPoly& p, const PeriodicFunction& q);

/// Pointwise matrix products of spectrally differentiated samples of q.
/// Throws AliasingError if `grid` < required_grid(p, q).
PeriodicFunction evaluate(const DiffPoly& p, const PeriodicFunction& q, int grid);

/// evaluate() on the smallest admissible grid.
PeriodicFunction evaluate(const DiffPoly& p, const PeriodicFunction& q);

/// Zero Fourier mode of p(q), exact for band-limited q (uses the smallest
/// grid that keeps the mean alias-free).
CMatrix mean_value(const DiffPoly& p, const PeriodicFunction& q);

/// Integral over the circle of tr p(q).
double integrate_trace(const DiffPoly& p, const PeriodicFunction& q);

/// Same integral in quadruple precision, by convolving Fourier modes word by
/// word (no grid). Intended for potentials with few modes.
Quad integrate_trace_precise(const DiffPoly& p, const PeriodicFunction& q);

}  // namespace heatkern
