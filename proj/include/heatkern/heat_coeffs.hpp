#pragma once

// Heat-kernel coefficients of L = -D^2 + Q on the circle.
//
// Two independent routes to the diagonal coefficients [a_k]:
//  * the Taylor route: <n|a_k> from chains of matrix elements <m|L|n>
//    (authoritative), and
//  * the diagonal route: D[a_k] = -k / (2(2k-1)) E[a_{k-1}], solved with
//    the exact antiderivative.

#include <vector>

#include "heatkern/diffpoly.hpp"
#include "heatkern/periodic_function.hpp"
#include "heatkern/precision.hpp"

namespace heatkern {

/// <m|L|n> = -I for n = m + 2, binomial(m, n) Q^(m-n) for m >= n, else 0.
DiffPoly matrix_element(int m, int n);

/// Table of Taylor coefficients <n|a_k>, grown on demand.
///
/// <n|a_k> = k/(k+n) * sum_{j <= n+2} <n|L|j> <j|a_{k-1}>, with
/// <n|a_0> = delta_{n0} I. Entry (k, n) is homogeneous of weight 2k + n.
class TaylorTable {
public:
    explicit TaylorTable(Algebra algebra = Algebra::matrix);

    Algebra algebra() const { return algebra_; }

    /// <n|a_k>; computes and caches every entry it depends on.
    const DiffPoly& entry(int k, int n);

    /// [a_k] = <0|a_k>.
    const DiffPoly& diagonal(int k) { return entry(k, 0); }

    /// Highest k with at least the diagonal entry computed.
    int max_order() const { return static_cast<int>(rows_.size()) - 1; }

    /// Computed entries of row k (n = 0 .. size-1).
    const std::vector<DiffPoly>& row(int k) const { return rows_.at(static_cast<std::size_t>(k)); }

    /// Rebuild a table from stored rows; rows must be prefixes of the
    /// recursion (not validated beyond shape).
    static TaylorTable from_rows(Algebra algebra, std::vector<std::vector<DiffPoly>> rows);

private:
    void ensure(int k, int n);

    Algebra algebra_;
    std::vector<std::vector<DiffPoly>> rows_;
};

/// <n|a_k> through a fresh table.
DiffPoly taylor_coefficient(int k, int n, Algebra algebra = Algebra::matrix);

/// E p = D^3 p - 2 Q Dp - 2 D(Q p) + Ad_Q Dp + D Ad_Q p + Ad_Q D^{-1} Ad_Q p.
/// In the scalar algebra the commutator terms vanish.
DiffPoly apply_E(const DiffPoly& p, Algebra algebra = Algebra::matrix);

/// A p = -D^{-1} E p.
DiffPoly apply_A(const DiffPoly& p, Algebra algebra = Algebra::matrix);

/// [a_k] via [a_k] = k / (2(2k-1)) A[a_{k-1}], [a_0] = I.
DiffPoly diagonal_coefficient_recursive(int k, Algebra algebra = Algebra::matrix);

/// All of [a_0] .. [a_k] via the diagonal route.
std::vector<DiffPoly> diagonal_coefficients_recursive(int k, Algebra algebra = Algebra::matrix);

/// W_k = 2 <1|a_k> - D[a_k]; satisfies D W_k = Ad_Q [a_k].
DiffPoly w_coefficient(int k, TaylorTable& table);
DiffPoly w_coefficient(int k);

/// k!(k-1)!/(2k-1)!, the leading-derivative normalisation of [a_k].
Rational leading_derivative_factor(int k);

/// Coefficient c such that the integrated quadratic part of [a_k] equals
/// c * integral tr Q^(h) Q^(h), h = k - 2 (integration by parts normal form).
Rational integrated_quadratic_coefficient(const DiffPoly& diagonal, int k);

struct GlobalInvariant {
    int k = 0;
    DiffPoly density;  // [a_k]
    double value = 0;  // A_k = integral of tr [a_k]
};

/// A_k = integral over the circle of tr [a_k](Q).
GlobalInvariant global_invariant(int k, const PeriodicFunction& q, TaylorTable& table);
GlobalInvariant global_invariant(int k, const PeriodicFunction& q);

/// A_0 .. A_kmax.
std::vector<double> heat_invariants(int kmax, const PeriodicFunction& q);

/// A_0 .. A_kmax in quadruple precision.
std::vector<Quad> heat_invariants_precise(int kmax, const PeriodicFunction& q);

}  // namespace heatkern
