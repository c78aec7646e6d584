#pragma once

// Exact noncommutative differential polynomials in a matrix potential Q.
//
// A monomial is a rational coefficient times an ordered word
// Q^(d1) Q^(d2) ... Q^(dm); the empty word is the identity endomorphism.
// Each letter Q^(d) carries weight d + 2, so the heat-kernel coefficient
// [a_k] is homogeneous of weight 2k.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heatkern {

using Rational = mpq_class;

/// Ordered derivative orders (d1, ..., dm) of a noncommutative word.
using Word = std::vector<int>;

/// Sum of (d_i + 2) over the letters of a word.
int weight(const Word& word);

/// Canonical word order: shorter words first, then lexicographic.
struct WordOrder {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Which ring the polynomial lives in. `scalar` is the commutative image
/// obtained by evaluating at N = 1 (letters commute, words are sorted).
enum class Algebra { matrix, scalar };

struct DiffMonomial {
    Rational coeff;
    Word word;

    int weight() const { return heatkern::weight(word); }
};

class DiffPoly {
public:
    using TermMap = std::map<Word, Rational, WordOrder>;

    DiffPoly() = default;

    /// Single term coeff * Q^(d1)...Q^(dm). Throws InputError on a negative
    /// derivative order; a zero coefficient gives the zero polynomial.
    static DiffPoly make(const Rational& coeff, Word word);

    static DiffPoly identity() { return make(1, {}); }

    /// Q^(order).
    static DiffPoly potential(int order = 0) { return make(1, {order}); }

    const TermMap& terms() const { return terms_; }
    std::vector<DiffMonomial> monomials() const;

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of `word` (zero if absent).
    Rational coeff(const Word& word) const;

    /// Weight shared by all terms, or nullopt if mixed (zero polynomial: 0).
    std::optional<int> homogeneous_weight() const;

    int max_derivative() const;
    std::size_t max_length() const;

    /// Terms whose word has exactly `length` letters.
    DiffPoly part_of_length(std::size_t length) const;

    DiffPoly& operator+=(const DiffPoly& other);
    DiffPoly& operator-=(const DiffPoly& other);
    DiffPoly& operator*=(const Rational& factor);

    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
    friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }
    friend DiffPoly operator-(DiffPoly a) { return a *= -1; }

    /// Noncommutative product: words concatenate, coefficients multiply.
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);

    friend bool operator==(const DiffPoly& a, const DiffPoly& b) {
        return a.terms_ == b.terms_;
    }

    /// Human-readable form, e.g. "Q^2 - 1/3 Q''". Longest words first.
    std::string to_string() const;

private:
    void add_term(const Word& word, const Rational& coeff);

    TermMap terms_;
};

/// Leibniz rule: D(Q^(d1)...Q^(dm)) = sum_i Q^(d1)...Q^(di+1)...Q^(dm).
DiffPoly differentiate(const DiffPoly& p);

/// D^n p.
DiffPoly differentiate(const DiffPoly& p, int times);

/// The unique q without a constant term such that differentiate(q) = p.
/// In the scalar algebra `p` must already be in sorted-word form.
/// Throws NotExactDerivative when p is not a total derivative.
DiffPoly antiderivative(const DiffPoly& p, Algebra algebra = Algebra::matrix);

/// Ad_Q p = Q p - p Q.
DiffPoly commutator_with_potential(const DiffPoly& p);

/// Image under the N = 1 evaluation: every word sorted ascending.
DiffPoly scalar_image(const DiffPoly& p);

/// Identity for `matrix`, scalar_image for `scalar`.
DiffPoly project(const DiffPoly& p, Algebra algebra);

/// Word reversal; for Hermitian Q this is the adjoint of each monomial.
DiffPoly reversed(const DiffPoly& p);

}  // namespace heatkern
