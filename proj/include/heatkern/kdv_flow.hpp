#pragma once

// Scalar KdV hierarchy driven by the heat invariants:
//   dQ/ds = D dI_k/dQ,  I_k = c_k A_{k+1},  c_k = (-1)^k (2k)! / (k! (k+1)!),
// so dI_k/dQ = c_k (k+1) [a_k].

#include <string>
#include <vector>

#include "heatkern/diffpoly.hpp"
#include "heatkern/errors.hpp"
#include "heatkern/periodic_function.hpp"

namespace heatkern {

/// (-1)^k (2k)! / (k! (k+1)!).
double flow_constant(int k);

/// c_k (k+1) [a_k] as a scalar differential polynomial.
DiffPoly hamiltonian_density_gradient(int k);

/// dA_k/dQ = k [a_{k-1}] evaluated on q (k >= 1; matrix q allowed).
PeriodicFunction variational_derivative(int k, const PeriodicFunction& q);

/// dI_k/dQ = c_k (k+1) [a_k] (scalar q).
PeriodicFunction hamiltonian_gradient(int k, const PeriodicFunction& q);

/// D dI_k/dQ, computed without aliasing.
PeriodicFunction kdv_rhs(int k, const PeriodicFunction& q);

/// Integral over the circle of tr(phi(x) g(x)).
double integral_pairing(const PeriodicFunction& phi, const PeriodicFunction& g);

struct FlowState {
    double s = 0;
    PeriodicFunction q;  // scalar, real, modes |n| <= dealiasing cutoff
};

struct FlowOptions {
    int grid = 256;
    int record_every = 0;  // steps between recorded states; 0: about 20 records
    int cutoff = 0;        // retained modes |n| <= cutoff; 0: the dealiasing limit
};

struct Trajectory {
    int k = 1;
    int grid = 0;
    int cutoff = 0;          // retained modes |n| <= cutoff
    int steps = 0;
    double step = 0;
    double flow_constant = 0;    // c_k
    double linear_coefficient = 0;  // coefficient of Q^(2k-1) in the right-hand side
    std::vector<FlowState> states;
};

/// Thrown when the solution stops being finite or grows without bound;
/// carries the last state that passed the check.
class FlowBlowUp : public IntegrationError {
public:
    FlowBlowUp(const std::string& what, FlowState last) : IntegrationError(what), last_good(std::move(last)) {}
    FlowState last_good;
};

/// Fourth-order exponential time differencing Runge-Kutta (Cox-Matthews) in
/// s: the linear part D^{2k-1} is integrated exactly, the nonlinear part is
/// evaluated pseudospectrally and dealiased to |n| <= grid / (degree + 1).
Trajectory integrate_flow(int k, const PeriodicFunction& q0, double s_end, int steps,
                          const FlowOptions& options = {});

struct InvariantSeries {
    std::string name;  // "A3", "I2", ...
    int order = 0;     // k of A_k
    double scale = 1;  // I_m = scale * A_{m+1}
    std::vector<double> values;
    double drift = 0;  // max |v(s) - v(0)| / |v(0)|, absolute when v(0) ~ 0
    bool relative = true;
};

struct ConservationReport {
    int flow = 0;
    double step = 0;
    std::vector<double> s;
    std::vector<InvariantSeries> series;

    double max_drift() const;
};

/// Evaluates A_k for each k in `orders` along the trajectory.
ConservationReport conservation_report(const Trajectory& trajectory, const std::vector<int>& orders);

/// Same, for the rescaled I_m (m >= 1).
ConservationReport hamiltonian_report(const Trajectory& trajectory, const std::vector<int>& ms);

}  // namespace heatkern
