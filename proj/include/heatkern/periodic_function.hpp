#pragma once

// Matrix-valued functions on the circle of radius a, stored as truncated
// Fourier modes: Q(x) = sum_{|n| <= B} q_n exp(i n x / a).

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace heatkern {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

class PeriodicFunction {
public:
    PeriodicFunction() = default;

    /// Zero function with the given shape.
    PeriodicFunction(double radius, int dim, int bandwidth);

    /// Modes ordered n = -B, ..., B; the vector must have odd length.
    static PeriodicFunction from_modes(double radius, std::vector<CMatrix> modes);

    static PeriodicFunction constant(double radius, const CMatrix& value);

    /// Scalar function from complex modes q_{-B..B}.
    static PeriodicFunction scalar(double radius, std::span<const Complex> modes);

    /// Inverse of samples(): DFT of `samples` taken at x_j = 2 pi a j / M,
    /// keeping modes |n| <= bandwidth. Requires M >= 2 * bandwidth + 1.
    static PeriodicFunction from_samples(double radius, std::span<const CMatrix> samples,
                                         int bandwidth);

    double radius() const { return radius_; }
    int dim() const { return dim_; }
    int bandwidth() const { return bandwidth_; }
    bool is_scalar() const { return dim_ == 1; }

    /// q_n; zero for |n| beyond the stored bandwidth.
    CMatrix mode(int n) const;
    void set_mode(int n, const CMatrix& value);

    /// |q_n|^2 = tr q_n q_n^dagger.
    double mode_norm2(int n) const;

    /// Value at a point.
    CMatrix operator()(double x) const;

    /// Values at x_j = 2 pi a j / grid, j = 0..grid-1.
    std::vector<CMatrix> samples(int grid) const;

    /// d^order/dx^order, computed mode by mode.
    PeriodicFunction derivative(int order = 1) const;

    /// Largest |n| with a mode above `tol` in Frobenius norm.
    int effective_bandwidth(double tol = 0.0) const;

    /// q_{-n} == q_n^dagger up to `tol`.
    bool is_hermitian(double tol = 1e-12) const;

    /// Integral over the circle of tr Q(x) (real part).
    double integral_trace() const;

    PeriodicFunction& operator+=(const PeriodicFunction& other);
    PeriodicFunction& operator*=(double factor);
    friend PeriodicFunction operator+(PeriodicFunction a, const PeriodicFunction& b) {
        return a += b;
    }
    friend PeriodicFunction operator*(double c, PeriodicFunction a) { return a *= c; }

private:
    double radius_ = 1.0;
    int dim_ = 1;
    int bandwidth_ = 0;
    std::vector<CMatrix> modes_;  // index n + bandwidth_
};

/// (i k)^order, exact for integer powers of i.
Complex derivative_symbol(double wavenumber, int order);

/// Max over n of the Frobenius norm of q_n - p_n.
double max_mode_difference(const PeriodicFunction& p, const PeriodicFunction& q);

}  // namespace heatkern
