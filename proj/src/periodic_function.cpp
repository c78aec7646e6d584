#include "heatkern/periodic_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatkern/errors.hpp"

namespace heatkern {

Complex derivative_symbol(double wavenumber, int order) {
    double mag = 1.0;
    for (int i = 0; i < order; ++i) mag *= wavenumber;
    switch (order % 4) {
        case 0: return {mag, 0.0};
        case 1: return {0.0, mag};
        case 2: return {-mag, 0.0};
        default: return {0.0, -mag};
    }
}

PeriodicFunction::PeriodicFunction(double radius, int dim, int bandwidth)
    : radius_(radius), dim_(dim), bandwidth_(bandwidth),
      modes_(static_cast<std::size_t>(2 * bandwidth + 1), CMatrix::Zero(dim, dim)) {
    if (radius <= 0) throw InputError("circle radius must be positive");
    if (dim < 1) throw InputError("bundle dimension must be at least 1");
    if (bandwidth < 0) throw InputError("bandwidth must be non-negative");
}

PeriodicFunction PeriodicFunction::from_modes(double radius, std::vector<CMatrix> modes) {
    if (modes.empty() || modes.size() % 2 == 0)
        throw InputError("mode list must have odd length 2B+1");
    const int dim = static_cast<int>(modes.front().rows());
    for (const auto& m : modes) {
        if (m.rows() != dim || m.cols() != dim)
            throw InputError("all modes must be square matrices of equal size");
    }
    PeriodicFunction f(radius, dim, static_cast<int>(modes.size() / 2));
    f.modes_ = std::move(modes);
    return f;
}

PeriodicFunction PeriodicFunction::constant(double radius, const CMatrix& value) {
    PeriodicFunction f(radius, static_cast<int>(value.rows()), 0);
    f.modes_[0] = value;
    return f;
}

PeriodicFunction PeriodicFunction::scalar(double radius, std::span<const Complex> modes) {
    std::vector<CMatrix> m;
    m.reserve(modes.size());
    for (Complex c : modes) m.push_back(CMatrix::Constant(1, 1, c));
    return from_modes(radius, std::move(m));
}

PeriodicFunction PeriodicFunction::from_samples(double radius, std::span<const CMatrix> samples,
                                                int bandwidth) {
    const int grid = static_cast<int>(samples.size());
    if (grid < 2 * bandwidth + 1)
        throw AliasingError("grid of " + std::to_string(grid) + " points cannot hold bandwidth " +
                            std::to_string(bandwidth));
    const int dim = static_cast<int>(samples.front().rows());
    PeriodicFunction f(radius, dim, bandwidth);
    for (int n = -bandwidth; n <= bandwidth; ++n) {
        CMatrix acc = CMatrix::Zero(dim, dim);
        for (int j = 0; j < grid; ++j) {
            // Reduce n*j mod grid so the phase stays accurate for large grids.
            const long r = ((static_cast<long>(n) * j) % grid + grid) % grid;
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(r) / grid;
            acc += samples[j] * Complex(std::cos(phase), std::sin(phase));
        }
        f.modes_[n + bandwidth] = acc / static_cast<double>(grid);
    }
    return f;
}

CMatrix PeriodicFunction::mode(int n) const {
    if (std::abs(n) > bandwidth_) return CMatrix::Zero(dim_, dim_);
    return modes_[n + bandwidth_];
}

void PeriodicFunction::set_mode(int n, const CMatrix& value) {
    if (value.rows() != dim_ || value.cols() != dim_) throw InputError("mode has wrong shape");
    if (std::abs(n) > bandwidth_) {
        const int nb = std::abs(n);
        std::vector<CMatrix> grown(static_cast<std::size_t>(2 * nb + 1), CMatrix::Zero(dim_, dim_));
        for (int k = -bandwidth_; k <= bandwidth_; ++k) grown[k + nb] = modes_[k + bandwidth_];
        modes_ = std::move(grown);
        bandwidth_ = nb;
    }
    modes_[n + bandwidth_] = value;
}

double PeriodicFunction::mode_norm2(int n) const {
    if (std::abs(n) > bandwidth_) return 0.0;
    return modes_[n + bandwidth_].squaredNorm();
}

CMatrix PeriodicFunction::operator()(double x) const {
    CMatrix acc = CMatrix::Zero(dim_, dim_);
    for (int n = -bandwidth_; n <= bandwidth_; ++n) {
        const double phase = n * x / radius_;
        acc += modes_[n + bandwidth_] * Complex(std::cos(phase), std::sin(phase));
    }
    return acc;
}

std::vector<CMatrix> PeriodicFunction::samples(int grid) const {
    if (grid < 1) throw InputError("grid must be positive");
    std::vector<CMatrix> out(static_cast<std::size_t>(grid), CMatrix::Zero(dim_, dim_));
    for (int j = 0; j < grid; ++j) {
        for (int n = -bandwidth_; n <= bandwidth_; ++n) {
            const long r = ((static_cast<long>(n) * j) % grid + grid) % grid;
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(r) / grid;
            out[j] += modes_[n + bandwidth_] * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return out;
}

PeriodicFunction PeriodicFunction::derivative(int order) const {
    PeriodicFunction out = *this;
    for (int n = -bandwidth_; n <= bandwidth_; ++n) {
        out.modes_[n + bandwidth_] *= derivative_symbol(n / radius_, order);
    }
    return out;
}

int PeriodicFunction::effective_bandwidth(double tol) const {
    for (int n = bandwidth_; n > 0; --n) {
        if (modes_[n + bandwidth_].norm() > tol || modes_[-n + bandwidth_].norm() > tol) return n;
    }
    return 0;
}

bool PeriodicFunction::is_hermitian(double tol) const {
    for (int n = 0; n <= bandwidth_; ++n) {
        if ((modes_[-n + bandwidth_] - modes_[n + bandwidth_].adjoint()).norm() > tol) return false;
    }
    return true;
}

double PeriodicFunction::integral_trace() const {
    return 2.0 * std::numbers::pi * radius_ * modes_[bandwidth_].trace().real();
}

PeriodicFunction& PeriodicFunction::operator+=(const PeriodicFunction& other) {
    if (other.dim_ != dim_) throw InputError("dimension mismatch in PeriodicFunction sum");
    for (int n = -other.bandwidth_; n <= other.bandwidth_; ++n) {
        set_mode(n, mode(n) + other.modes_[n + other.bandwidth_]);
    }
    return *this;
}

PeriodicFunction& PeriodicFunction::operator*=(double factor) {
    for (auto& m : modes_) m *= factor;
    return *this;
}

double max_mode_difference(const PeriodicFunction& p, const PeriodicFunction& q) {
    const int b = std::max(p.bandwidth(), q.bandwidth());
    double worst = 0.0;
    for (int n = -b; n <= b; ++n) worst = std::max(worst, (p.mode(n) - q.mode(n)).norm());
    return worst;
}

}  // namespace heatkern
