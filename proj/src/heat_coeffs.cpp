#include "heatkern/heat_coeffs.hpp"

#include <gmpxx.h>

#include "heatkern/errors.hpp"
#include "heatkern/evaluate.hpp"

namespace heatkern {

namespace {

Rational binomial(int m, int n) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(n));
    return Rational(b);
}

Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

}  // namespace

DiffPoly matrix_element(int m, int n) {
    if (m < 0 || n < 0) throw InputError("matrix element indices must be non-negative");
    if (n == m + 2) return -DiffPoly::identity();
    if (m >= n) return DiffPoly::make(binomial(m, n), {m - n});
    return {};
}

TaylorTable::TaylorTable(Algebra algebra) : algebra_(algebra) {}

TaylorTable TaylorTable::from_rows(Algebra algebra, std::vector<std::vector<DiffPoly>> rows) {
    TaylorTable t(algebra);
    t.rows_ = std::move(rows);
    return t;
}

void TaylorTable::ensure(int k, int n) {
    if (k < 0 || n < 0) throw InputError("Taylor coefficient indices must be non-negative");
    while (static_cast<int>(rows_.size()) <= k) rows_.emplace_back();
    auto& row = rows_[static_cast<std::size_t>(k)];
    if (static_cast<int>(row.size()) > n) return;

    if (k == 0) {
        while (static_cast<int>(row.size()) <= n)
            row.push_back(row.empty() ? DiffPoly::identity() : DiffPoly{});
        return;
    }
    // Row k-1 must reach index n + 2 because <n|L|j> vanishes for j > n + 2.
    ensure(k - 1, n + 2);
    const auto& prev = rows_[static_cast<std::size_t>(k - 1)];
    auto& cur = rows_[static_cast<std::size_t>(k)];
    for (int m = static_cast<int>(cur.size()); m <= n; ++m) {
        DiffPoly sum;
        for (int j = 0; j <= m + 2; ++j) {
            if (j == m + 1 || prev[static_cast<std::size_t>(j)].is_zero()) continue;
            sum += matrix_element(m, j) * prev[static_cast<std::size_t>(j)];
        }
        sum *= Rational(k, k + m);
        cur.push_back(project(sum, algebra_));
    }
}

const DiffPoly& TaylorTable::entry(int k, int n) {
    ensure(k, n);
    return rows_[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
}

DiffPoly taylor_coefficient(int k, int n, Algebra algebra) {
    TaylorTable table(algebra);
    return table.entry(k, n);
}

DiffPoly apply_E(const DiffPoly& p, Algebra algebra) {
    const DiffPoly q = DiffPoly::potential();
    const DiffPoly dp = differentiate(p);
    DiffPoly out = differentiate(dp, 2);
    out -= Rational(2) * (q * dp);
    out -= Rational(2) * differentiate(q * p);
    if (algebra == Algebra::scalar) return scalar_image(out);

    const DiffPoly ad_p = commutator_with_potential(p);
    out += commutator_with_potential(dp);
    out += differentiate(ad_p);
    if (!ad_p.is_zero()) out += commutator_with_potential(antiderivative(ad_p, Algebra::matrix));
    return out;
}

DiffPoly apply_A(const DiffPoly& p, Algebra algebra) {
    return -antiderivative(apply_E(p, algebra), algebra);
}

std::vector<DiffPoly> diagonal_coefficients_recursive(int k, Algebra algebra) {
    if (k < 0) throw InputError("coefficient order must be non-negative");
    std::vector<DiffPoly> out{DiffPoly::identity()};
    for (int j = 1; j <= k; ++j) {
        out.push_back(Rational(j, 2 * (2 * j - 1)) * apply_A(out.back(), algebra));
    }
    return out;
}

DiffPoly diagonal_coefficient_recursive(int k, Algebra algebra) {
    return diagonal_coefficients_recursive(k, algebra).back();
}

DiffPoly w_coefficient(int k, TaylorTable& table) {
    if (k < 0) throw InputError("coefficient order must be non-negative");
    return project(Rational(2) * table.entry(k, 1) - differentiate(table.entry(k, 0)),
                   table.algebra());
}

DiffPoly w_coefficient(int k) {
    TaylorTable table(Algebra::matrix);
    return w_coefficient(k, table);
}

Rational leading_derivative_factor(int k) {
    if (k < 1) throw InputError("leading-derivative factor needs k >= 1");
    return factorial(k) * factorial(k - 1) / factorial(2 * k - 1);
}

Rational integrated_quadratic_coefficient(const DiffPoly& diagonal, int k) {
    const int h = k - 2;
    Rational total = 0;
    const DiffPoly quadratic = diagonal.part_of_length(2);
    for (const auto& [word, c] : quadratic.terms()) {
        // Under the integral and the trace, Q^(i) Q^(j) = (-1)^(i-h) Q^(h) Q^(h).
        const int shift = word[0] - h;
        total += (shift % 2 == 0) ? c : Rational(-c);
    }
    return total;
}

GlobalInvariant global_invariant(int k, const PeriodicFunction& q, TaylorTable& table) {
    if (k < 0) throw InputError("invariant order must be non-negative");
    GlobalInvariant g;
    g.k = k;
    g.density = table.diagonal(k);
    g.value = integrate_trace(g.density, q);
    return g;
}

GlobalInvariant global_invariant(int k, const PeriodicFunction& q) {
    TaylorTable table(Algebra::matrix);
    return global_invariant(k, q, table);
}

std::vector<double> heat_invariants(int kmax, const PeriodicFunction& q) {
    TaylorTable table(q.is_scalar() ? Algebra::scalar : Algebra::matrix);
    std::vector<double> out;
    for (int k = 0; k <= kmax; ++k) out.push_back(global_invariant(k, q, table).value);
    return out;
}

std::vector<Quad> heat_invariants_precise(int kmax, const PeriodicFunction& q) {
    TaylorTable table(q.is_scalar() ? Algebra::scalar : Algebra::matrix);
    std::vector<Quad> out;
    for (int k = 0; k <= kmax; ++k) out.push_back(integrate_trace_precise(table.diagonal(k), q));
    return out;
}

}  // namespace heatkern
