#pragma once

#include <functional>
#include <vector>

namespace heatkern {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; cached per n, thread-safe.
const GaussRule& gauss_legendre(int n);

/// Integral of f over [lo, hi] with an n-point rule.
double integrate_gauss(const std::function<double(double)>& f, double lo, double hi, int n);

/// Integral of f(v) over v in [0, 1] for integrands that may concentrate
/// near v = 0 on a length scale `scale` (<= 1). Panels are graded
/// geometrically away from v = 0; each panel uses `nodes` points, and the
/// node count is doubled until two successive results agree to `tol`
/// (relative). Throws ResolutionError if 512 nodes per panel do not suffice.
double integrate_graded(const std::function<double(double)>& f, double scale, double tol,
                             int nodes = 16);

}  // namespace heatkern
