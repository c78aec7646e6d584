#include "heatkern/evaluate.hpp"

#include <boost/math/constants/constants.hpp>

#include <complex>
#include <numbers>

#include "heatkern/errors.hpp"

namespace heatkern {

int required_grid(const DiffPoly& p, const PeriodicFunction& q) {
    const int len = static_cast<int>(p.max_length());
    return 2 * len * q.bandwidth() + 1;
}

namespace {

// Samples of p(q) on `grid` points; no aliasing check.
std::vector<CMatrix> sample_product(const DiffPoly& p, const PeriodicFunction& q, int grid) {
    const int dim = q.dim();
    std::vector<std::vector<CMatrix>> derivs;
    for (int d = 0; d <= p.max_derivative(); ++d) derivs.push_back(q.derivative(d).samples(grid));

    std::vector<CMatrix> out(static_cast<std::size_t>(grid), CMatrix::Zero(dim, dim));
    CMatrix prod(dim, dim);
    for (const auto& [word, c] : p.terms()) {
        const double coeff = c.get_d();
        for (int j = 0; j < grid; ++j) {
            if (word.empty()) {
                out[j] += coeff * CMatrix::Identity(dim, dim);
                continue;
            }
            prod = derivs[word[0]][j];
            for (std::size_t i = 1; i < word.size(); ++i) prod = prod * derivs[word[i]][j];
            out[j] += coeff * prod;
        }
    }
    return out;
}

}  // namespace

PeriodicFunction evaluate(const DiffPoly& p, const PeriodicFunction& q, int grid) {
    const int need = required_grid(p, q);
    if (grid < need) {
        throw AliasingError("grid " + std::to_string(grid) + " aliases products; need at least " +
                            std::to_string(need));
    }
    const int out_band = static_cast<int>(p.max_length()) * q.bandwidth();
    const auto values = sample_product(p, q, grid);
    return PeriodicFunction::from_samples(q.radius(), values, out_band);
}

PeriodicFunction evaluate(const DiffPoly& p, const PeriodicFunction& q) {
    return evaluate(p, q, required_grid(p, q));
}

CMatrix mean_value(const DiffPoly& p, const PeriodicFunction& q) {
    // Modes of the product reach |n| <= L*B; the mean picks up aliases from
    // multiples of the grid size only, so L*B + 1 points suffice.
    const int grid = static_cast<int>(p.max_length()) * q.bandwidth() + 1;
    const auto values = sample_product(p, q, grid);
    CMatrix acc = CMatrix::Zero(q.dim(), q.dim());
    for (const auto& v : values) acc += v;
    return acc / static_cast<double>(grid);
}

double integrate_trace(const DiffPoly& p, const PeriodicFunction& q) {
    return 2.0 * std::numbers::pi * q.radius() * mean_value(p, q).trace().real();
}

namespace {

using QComplex = std::complex<Quad>;

// Dense dim x dim matrix of quad complex numbers, row-major.
struct QMatrix {
    int dim = 0;
    std::vector<QComplex> a;

    static QMatrix zero(int n) { return {n, std::vector<QComplex>(static_cast<std::size_t>(n * n))}; }
    QComplex& operator()(int i, int j) { return a[static_cast<std::size_t>(i * dim + j)]; }
    const QComplex& operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i * dim + j)];
    }
};

void multiply_add(const QMatrix& x, const QMatrix& y, QMatrix& out) {
    for (int i = 0; i < x.dim; ++i)
        for (int k = 0; k < x.dim; ++k) {
            const QComplex xik = x(i, k);
            if (xik == QComplex(0)) continue;
            for (int j = 0; j < x.dim; ++j) out(i, j) += xik * y(k, j);
        }
}

QComplex i_power(int order) {
    switch (order % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

Quad integrate_trace_precise(const DiffPoly& p, const PeriodicFunction& q) {
    const int dim = q.dim();
    const int band = q.bandwidth();
    const Quad radius = q.radius();

    // factor[d][n + band] = (i n / a)^d q_n
    std::vector<std::vector<QMatrix>> factor(static_cast<std::size_t>(p.max_derivative() + 1));
    for (int d = 0; d <= p.max_derivative(); ++d) {
        for (int n = -band; n <= band; ++n) {
            const CMatrix m = q.mode(n);
            QMatrix f = QMatrix::zero(dim);
            Quad k = Quad(n) / radius;
            Quad mag = 1;
            for (int i = 0; i < d; ++i) mag *= k;
            const QComplex sym = i_power(d) * mag;
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c)
                    f(r, c) = sym * QComplex(Quad(m(r, c).real()), Quad(m(r, c).imag()));
            factor[d].push_back(std::move(f));
        }
    }

    QComplex total(0);
    for (const auto& [word, c] : p.terms()) {
        QComplex tr(0);
        if (word.empty()) {
            tr = QComplex(Quad(dim));
        } else {
            // Running product as a mode series of bandwidth `cur`.
            int cur = band;
            std::vector<QMatrix> acc = factor[word[0]];
            for (std::size_t i = 1; i < word.size(); ++i) {
                const int next = cur + band;
                std::vector<QMatrix> grown(static_cast<std::size_t>(2 * next + 1), QMatrix::zero(dim));
                for (int n = -cur; n <= cur; ++n)
                    for (int k = -band; k <= band; ++k)
                        multiply_add(acc[n + cur], factor[word[i]][k + band], grown[n + k + next]);
                acc = std::move(grown);
                cur = next;
            }
            for (int r = 0; r < dim; ++r) tr += acc[cur](r, r);
        }
        const Quad num(c.get_num().get_str());
        const Quad den(c.get_den().get_str());
        total += tr * (num / den);
    }
    return 2 * boost::math::constants::pi<Quad>() * radius * total.real();
}

}  // namespace heatkern
