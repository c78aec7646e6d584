#include "heatkern/kdv_flow.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <set>

#include "heatkern/evaluate.hpp"
#include "heatkern/heat_coeffs.hpp"

namespace heatkern {

namespace {

constexpr double pi = std::numbers::pi;

Algebra algebra_of(const PeriodicFunction& q) { return q.is_scalar() ? Algebra::scalar : Algebra::matrix; }

void require_scalar(const PeriodicFunction& q, const char* what) {
    if (!q.is_scalar()) throw InputError(std::string(what) + " is defined for scalar potentials only");
}

}  // namespace

double flow_constant(int k) {
    if (k < 0) throw InputError("flow index must be non-negative");
    // (2k)! / (k! (k+1)!) is the Catalan number C_k.
    double catalan = 1;
    for (int j = 0; j < k; ++j) catalan = catalan * 2 * (2 * j + 1) / (j + 2);
    return (k % 2 == 0) ? catalan : -catalan;
}

DiffPoly hamiltonian_density_gradient(int k) {
    if (k < 1) throw InputError("flow index must be at least 1");
    TaylorTable table(Algebra::scalar);
    const long c = std::lround(flow_constant(k));
    return Rational(c * (k + 1)) * table.diagonal(k);
}

PeriodicFunction variational_derivative(int k, const PeriodicFunction& q) {
    if (k < 1) throw InputError("variational derivative needs k >= 1");
    TaylorTable table(algebra_of(q));
    return evaluate(Rational(k) * table.diagonal(k - 1), q);
}

PeriodicFunction hamiltonian_gradient(int k, const PeriodicFunction& q) {
    require_scalar(q, "the KdV hierarchy");
    return evaluate(hamiltonian_density_gradient(k), q);
}

PeriodicFunction kdv_rhs(int k, const PeriodicFunction& q) {
    return hamiltonian_gradient(k, q).derivative(1);
}

double integral_pairing(const PeriodicFunction& phi, const PeriodicFunction& g) {
    if (phi.dim() != g.dim()) throw InputError("pairing needs functions of equal dimension");
    const int band = std::min(phi.bandwidth(), g.bandwidth());
    Complex acc = 0;
    for (int n = -band; n <= band; ++n) acc += (phi.mode(-n) * g.mode(n)).trace();
    return 2.0 * pi * phi.radius() * acc.real();
}

namespace {

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Real-to-complex and back on a fixed grid; modes n = 0..M/2.
class RealFft {
public:
    explicit RealFft(int grid) : grid_(grid) {
        real_ = fftw_alloc_real(static_cast<std::size_t>(grid));
        spec_ = fftw_alloc_complex(static_cast<std::size_t>(grid / 2 + 1));
        std::lock_guard lock(fftw_planner_mutex());
        forward_ = fftw_plan_dft_r2c_1d(grid, real_, spec_, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_c2r_1d(grid, spec_, real_, FFTW_ESTIMATE);
    }
    ~RealFft() {
        {
            std::lock_guard lock(fftw_planner_mutex());
            fftw_destroy_plan(forward_);
            fftw_destroy_plan(backward_);
        }
        fftw_free(real_);
        fftw_free(spec_);
    }
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    // Samples of sum_n c_n e^{i n x / a} (c_{-n} = conj c_n).
    void to_grid(const std::vector<Complex>& coeffs, std::vector<double>& out) {
        for (std::size_t n = 0; n < coeffs.size(); ++n) {
            spec_[n][0] = coeffs[n].real();
            spec_[n][1] = coeffs[n].imag();
        }
        fftw_execute(backward_);
        out.assign(real_, real_ + grid_);
    }

    // Fourier coefficients c_n, n = 0..M/2, of grid samples.
    void to_modes(const std::vector<double>& samples, std::vector<Complex>& out) {
        std::copy(samples.begin(), samples.end(), real_);
        fftw_execute(forward_);
        out.resize(static_cast<std::size_t>(grid_ / 2 + 1));
        for (std::size_t n = 0; n < out.size(); ++n) out[n] = Complex(spec_[n][0], spec_[n][1]) / double(grid_);
    }

private:
    int grid_;
    double* real_;
    fftw_complex* spec_;
    fftw_plan forward_;
    fftw_plan backward_;
};

struct Term {
    double coeff;
    Word word;
    std::vector<std::size_t> factors;  // positions of the word's orders in the derivative table
};

// Right-hand side split as L u + N(u) in Fourier space.
class FlowOperator {
public:
    FlowOperator(int k, int grid, double radius, int cutoff) : fft_(grid), grid_(grid), radius_(radius) {
        const DiffPoly p = hamiltonian_density_gradient(k);
        degree_ = static_cast<int>(p.max_length());
        cutoff_ = degree_ >= 2 ? grid / (degree_ + 1) : grid / 2 - 1;
        if (cutoff > cutoff_)
            throw ResolutionError("cutoff " + std::to_string(cutoff) + " aliases on grid " + std::to_string(grid) +
                                  "; at most " + std::to_string(cutoff_));
        if (cutoff > 0) cutoff_ = cutoff;
        const int half = grid / 2;
        linear_.assign(static_cast<std::size_t>(half + 1), Complex(0));
        std::set<int> orders;
        for (const auto& [word, c] : p.terms()) {
            if (word.size() == 1) {
                linear_coefficient_ = c.get_d();
                for (int n = 0; n <= half; ++n)
                    linear_[static_cast<std::size_t>(n)] += c.get_d() * derivative_symbol(n / radius, word[0] + 1);
            } else {
                terms_.push_back({c.get_d(), word, {}});
                orders.insert(word.begin(), word.end());
            }
        }
        orders_.assign(orders.begin(), orders.end());
        derivs_.resize(orders_.size());
        for (auto& term : terms_)
            for (int d : term.word) term.factors.push_back(index_of(d));
        for (int d : orders_) {
            std::vector<Complex> sym(static_cast<std::size_t>(cutoff_ + 1));
            for (int n = 0; n <= cutoff_; ++n) sym[static_cast<std::size_t>(n)] = derivative_symbol(n / radius, d);
            symbols_.push_back(std::move(sym));
        }
        outer_.resize(static_cast<std::size_t>(cutoff_ + 1));
        for (int n = 0; n <= cutoff_; ++n) outer_[static_cast<std::size_t>(n)] = derivative_symbol(n / radius, 1);
    }

    int cutoff() const { return cutoff_; }
    double linear_coefficient() const { return linear_coefficient_; }
    const std::vector<Complex>& linear() const { return linear_; }

    void nonlinear(const std::vector<Complex>& u, std::vector<Complex>& out) {
        const std::size_t modes = u.size();
        out.assign(modes, Complex(0));
        if (terms_.empty()) return;
        tmp_.assign(modes, Complex(0));
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const auto& sym = symbols_[i];
            for (std::size_t n = 0; n < sym.size(); ++n) tmp_[n] = sym[n] * u[n];
            fft_.to_grid(tmp_, derivs_[i]);
        }
        products_.assign(static_cast<std::size_t>(grid_), 0.0);
        for (const auto& term : terms_) {
            factor_.assign(static_cast<std::size_t>(grid_), term.coeff);
            for (std::size_t i : term.factors) {
                const double* d = derivs_[i].data();
                for (std::size_t j = 0; j < factor_.size(); ++j) factor_[j] *= d[j];
            }
            for (std::size_t j = 0; j < factor_.size(); ++j) products_[j] += factor_[j];
        }
        fft_.to_modes(products_, tmp_);
        for (int n = 0; n <= cutoff_; ++n)
            out[static_cast<std::size_t>(n)] = outer_[static_cast<std::size_t>(n)] * tmp_[static_cast<std::size_t>(n)];
    }

private:
    std::size_t index_of(int order) const {
        return static_cast<std::size_t>(std::lower_bound(orders_.begin(), orders_.end(), order) - orders_.begin());
    }


    RealFft fft_;
    int grid_;
    double radius_;
    int degree_ = 1;
    int cutoff_ = 0;
    double linear_coefficient_ = 0;
    std::vector<Complex> linear_;
    std::vector<Term> terms_;
    std::vector<int> orders_;
    std::vector<std::vector<double>> derivs_;
    std::vector<std::vector<Complex>> symbols_;  // (i n / a)^d for each order d, n <= cutoff
    std::vector<Complex> outer_;
    std::vector<Complex> tmp_;
    std::vector<double> products_, factor_;
};

// Exponential time-differencing RK4 weights for a diagonal linear part,
// evaluated as contour means around z = hL so that small |z| stays accurate.
struct EtdCoefficients {
    std::vector<Complex> e_full, e_half, q, f1, f2, f3;

    EtdCoefficients(const std::vector<Complex>& linear, double h) {
        constexpr int points = 32;
        const std::size_t modes = linear.size();
        e_full.resize(modes);
        e_half.resize(modes);
        q.resize(modes);
        f1.resize(modes);
        f2.resize(modes);
        f3.resize(modes);
        for (std::size_t n = 0; n < modes; ++n) {
            const Complex z = h * linear[n];
            e_full[n] = std::exp(z);
            e_half[n] = std::exp(z / 2.0);
            Complex sq = 0, s1 = 0, s2 = 0, s3 = 0;
            for (int j = 0; j < points; ++j) {
                const Complex r = z + std::exp(Complex(0, pi * (j + 0.5) / points * 2));
                const Complex er = std::exp(r), r3 = r * r * r;
                sq += (std::exp(r / 2.0) - 1.0) / r;
                s1 += (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3;
                s2 += (2.0 + r + er * (r - 2.0)) / r3;
                s3 += (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3;
            }
            q[n] = h * sq / double(points);
            f1[n] = h * s1 / double(points);
            f2[n] = h * s2 / double(points);
            f3[n] = h * s3 / double(points);
        }
    }
};

PeriodicFunction to_function(const std::vector<Complex>& u, int cutoff, double radius) {
    while (cutoff > 0 && u[static_cast<std::size_t>(cutoff)] == Complex(0)) --cutoff;
    std::vector<Complex> modes(static_cast<std::size_t>(2 * cutoff + 1));
    for (int n = 0; n <= cutoff; ++n) {
        modes[static_cast<std::size_t>(cutoff + n)] = u[static_cast<std::size_t>(n)];
        modes[static_cast<std::size_t>(cutoff - n)] = std::conj(u[static_cast<std::size_t>(n)]);
    }
    modes[static_cast<std::size_t>(cutoff)] = u[0].real();
    return PeriodicFunction::scalar(radius, modes);
}

double energy(const std::vector<Complex>& u) {
    double e = std::norm(u[0]);
    for (std::size_t n = 1; n < u.size(); ++n) e += 2 * std::norm(u[n]);
    return e;
}

}  // namespace

Trajectory integrate_flow(int k, const PeriodicFunction& q0, double s_end, int steps,
                          const FlowOptions& options) {
    require_scalar(q0, "the KdV hierarchy");
    if (k < 1) throw InputError("flow index must be at least 1");
    if (steps < 1) throw InputError("number of steps must be positive");
    if (!(s_end > 0)) throw InputError("flow time must be positive");
    const int grid = options.grid;
    if (grid < 8 || grid % 2 != 0) throw InputError("grid must be even and at least 8");
    if (options.cutoff < 0) throw InputError("cutoff must be non-negative");
    if (!q0.is_hermitian(1e-12)) throw InputError("initial potential must be real");

    const double a = q0.radius();
    FlowOperator op(k, grid, a, options.cutoff);
    const int cutoff = op.cutoff();
    if (q0.effective_bandwidth(1e-300) > cutoff)
        throw ResolutionError("initial data has modes beyond the dealiasing cutoff " + std::to_string(cutoff) +
                              "; raise the grid");

    const std::size_t modes = static_cast<std::size_t>(grid / 2 + 1);
    std::vector<Complex> u(modes, Complex(0));
    for (int n = 0; n <= cutoff; ++n) u[static_cast<std::size_t>(n)] = q0.mode(n)(0, 0);
    u[0] = u[0].real();

    const double h = s_end / steps;
    const EtdCoefficients etd(op.linear(), h);

    Trajectory traj;
    traj.k = k;
    traj.grid = grid;
    traj.cutoff = cutoff;
    traj.steps = steps;
    traj.step = h;
    traj.flow_constant = flow_constant(k);
    traj.linear_coefficient = op.linear_coefficient();
    traj.states.push_back({0.0, to_function(u, cutoff, a)});
    const int record = options.record_every > 0 ? options.record_every : std::max(1, steps / 20);

    const double e0 = energy(u);
    std::vector<Complex> nu, na, nb, nc, sa(modes), sb(modes), sc(modes);
    for (int step = 1; step <= steps; ++step) {
        op.nonlinear(u, nu);
        for (std::size_t n = 0; n < modes; ++n) sa[n] = etd.e_half[n] * u[n] + etd.q[n] * nu[n];
        op.nonlinear(sa, na);
        for (std::size_t n = 0; n < modes; ++n) sb[n] = etd.e_half[n] * u[n] + etd.q[n] * na[n];
        op.nonlinear(sb, nb);
        for (std::size_t n = 0; n < modes; ++n) sc[n] = etd.e_half[n] * sa[n] + etd.q[n] * (2.0 * nb[n] - nu[n]);
        op.nonlinear(sc, nc);
        for (std::size_t n = 0; n < modes; ++n) {
            u[n] = etd.e_full[n] * u[n] + etd.f1[n] * nu[n] + 2.0 * etd.f2[n] * (na[n] + nb[n]) +
                   etd.f3[n] * nc[n];
        }
        u[0] = u[0].real();

        const double e = energy(u);
        if (!std::isfinite(e) || e > 100 * (e0 + 1e-300) + 1e-12) {
            throw FlowBlowUp("flow " + std::to_string(k) + " blew up at s = " + std::to_string(step * h) +
                                 "; reduce the step",
                             traj.states.back());
        }
        if (step % record == 0 || step == steps) traj.states.push_back({step * h, to_function(u, cutoff, a)});
    }
    return traj;
}

double ConservationReport::max_drift() const {
    double m = 0;
    for (const auto& s : series) m = std::max(m, s.drift);
    return m;
}

namespace {

ConservationReport build_report(const Trajectory& trajectory, const std::vector<int>& orders,
                                const std::vector<double>& scales, const std::vector<std::string>& names) {
    if (trajectory.states.empty()) throw InputError("trajectory is empty");
    ConservationReport report;
    report.flow = trajectory.k;
    report.step = trajectory.step;
    for (const auto& st : trajectory.states) report.s.push_back(st.s);
    TaylorTable table(Algebra::scalar);
    for (std::size_t i = 0; i < orders.size(); ++i) {
        InvariantSeries series;
        series.name = names[i];
        series.order = orders[i];
        series.scale = scales[i];
        const DiffPoly& density = table.diagonal(orders[i]);
        double ref_scale = 0;
        for (const auto& st : trajectory.states) {
            series.values.push_back(scales[i] * integrate_trace(density, st.q));
            ref_scale = std::max(ref_scale, std::abs(series.values.back()));
        }
        const double v0 = series.values.front();
        series.relative = std::abs(v0) > 1e-12 * std::max(1.0, ref_scale);
        for (double v : series.values) {
            const double d = series.relative ? std::abs(v - v0) / std::abs(v0) : std::abs(v - v0);
            series.drift = std::max(series.drift, d);
        }
        report.series.push_back(std::move(series));
    }
    return report;
}

}  // namespace

ConservationReport conservation_report(const Trajectory& trajectory, const std::vector<int>& orders) {
    std::vector<double> scales(orders.size(), 1.0);
    std::vector<std::string> names;
    for (int k : orders) {
        if (k < 0) throw InputError("invariant order must be non-negative");
        names.push_back("A" + std::to_string(k));
    }
    return build_report(trajectory, orders, scales, names);
}

ConservationReport hamiltonian_report(const Trajectory& trajectory, const std::vector<int>& ms) {
    std::vector<int> orders;
    std::vector<double> scales;
    std::vector<std::string> names;
    for (int m : ms) {
        if (m < 0) throw InputError("hamiltonian index must be non-negative");
        orders.push_back(m + 1);
        scales.push_back(flow_constant(m));
        names.push_back("I" + std::to_string(m));
    }
    return build_report(trajectory, orders, scales, names);
}

}  // namespace heatkern
