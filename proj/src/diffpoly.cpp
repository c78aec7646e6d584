#include "heatkern/diffpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "heatkern/errors.hpp"

namespace heatkern {

int weight(const Word& word) {
    return std::accumulate(word.begin(), word.end(), 0,
                           [](int acc, int d) { return acc + d + 2; });
}

DiffPoly DiffPoly::make(const Rational& coeff, Word word) {
    for (int d : word) {
        if (d < 0) throw InputError("negative derivative order in word");
    }
    DiffPoly p;
    p.add_term(word, coeff);
    return p;
}

std::vector<DiffMonomial> DiffPoly::monomials() const {
    std::vector<DiffMonomial> out;
    out.reserve(terms_.size());
    for (const auto& [word, c] : terms_) out.push_back({c, word});
    return out;
}

Rational DiffPoly::coeff(const Word& word) const {
    auto it = terms_.find(word);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> DiffPoly::homogeneous_weight() const {
    if (terms_.empty()) return 0;
    const int w = weight(terms_.begin()->first);
    for (const auto& [word, c] : terms_) {
        if (weight(word) != w) return std::nullopt;
    }
    return w;
}

int DiffPoly::max_derivative() const {
    int m = 0;
    for (const auto& [word, c] : terms_) {
        for (int d : word) m = std::max(m, d);
    }
    return m;
}

std::size_t DiffPoly::max_length() const {
    std::size_t m = 0;
    for (const auto& [word, c] : terms_) m = std::max(m, word.size());
    return m;
}

DiffPoly DiffPoly::part_of_length(std::size_t length) const {
    DiffPoly out;
    for (const auto& [word, c] : terms_) {
        if (word.size() == length) out.terms_.emplace(word, c);
    }
    return out;
}

void DiffPoly::add_term(const Word& word, const Rational& coeff) {
    if (coeff == 0) return;
    Rational c = coeff;
    c.canonicalize();
    auto [it, inserted] = terms_.try_emplace(word, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
    for (const auto& [word, c] : other.terms_) add_term(word, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) {
    for (const auto& [word, c] : other.terms_) add_term(word, -c);
    return *this;
}

DiffPoly& DiffPoly::operator*=(const Rational& factor) {
    if (factor == 0) {
        terms_.clear();
        return *this;
    }
    Rational f = factor;
    f.canonicalize();
    for (auto& [word, c] : terms_) c *= f;
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly out;
    Word word;
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) {
            word.assign(wa.begin(), wa.end());
            word.insert(word.end(), wb.begin(), wb.end());
            out.add_term(word, ca * cb);
        }
    }
    return out;
}

namespace {

std::string letter(int d) {
    switch (d) {
        case 0: return "Q";
        case 1: return "Q'";
        case 2: return "Q''";
        case 3: return "Q'''";
        default: return "Q^(" + std::to_string(d) + ")";
    }
}

std::string render_word(const Word& word) {
    if (word.empty()) return "I";
    std::string out;
    for (std::size_t i = 0; i < word.size();) {
        std::size_t j = i;
        while (j < word.size() && word[j] == word[i]) ++j;
        const std::size_t run = j - i;
        if (word[i] == 0 && run > 1) {
            out += "Q^" + std::to_string(run);
        } else {
            for (std::size_t r = 0; r < run; ++r) out += letter(word[i]);
        }
        i = j;
    }
    return out;
}

}  // namespace

std::string DiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend();) {
        // Longest words first, lexicographic order within a length.
        auto group_end = it;
        while (group_end != terms_.rend() && group_end->first.size() == it->first.size())
            ++group_end;
        std::vector<std::pair<Word, Rational>> group(it, group_end);
        std::reverse(group.begin(), group.end());
        for (const auto& [word, c] : group) {
            Rational mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            const bool unit = (mag == 1);
            if (!unit || word.empty()) {
                os << mag.get_str();
                if (!word.empty()) os << " ";
            }
            if (!word.empty()) os << render_word(word);
        }
        it = group_end;
    }
    return os.str();
}

DiffPoly differentiate(const DiffPoly& p) {
    DiffPoly out;
    Word bumped;
    for (const auto& [word, c] : p.terms()) {
        for (std::size_t i = 0; i < word.size(); ++i) {
            bumped = word;
            ++bumped[i];
            out += DiffPoly::make(c, bumped);
        }
    }
    return out;
}

DiffPoly differentiate(const DiffPoly& p, int times) {
    DiffPoly out = p;
    for (int i = 0; i < times; ++i) out = differentiate(out);
    return out;
}

namespace {

// Order in which D is triangular: compare words of equal length from the
// last letter backwards. The largest term of D(u) is u with its last letter
// incremented, and that map preserves this order.
bool reverse_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

DiffPoly antiderivative(const DiffPoly& p, Algebra algebra) {
    DiffPoly rest = p;
    DiffPoly result;
    while (!rest.is_zero()) {
        auto lead = rest.terms().begin();
        for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it) {
            if (reverse_lex_less(lead->first, it->first)) lead = it;
        }
        const Word& word = lead->first;
        if (word.empty() || word.back() == 0) {
            throw NotExactDerivative("term " + DiffPoly::make(lead->second, word).to_string() +
                                     " cannot be the leading term of a derivative");
        }
        Word pre = word;
        --pre.back();
        Rational c = lead->second;
        if (algebra == Algebra::scalar) {
            // Sorted words: the leading term of D(u) comes from bumping the
            // largest letter, with multiplicity equal to its count in u.
            if (pre.size() >= 2 && pre[pre.size() - 2] > pre.back()) {
                throw NotExactDerivative("scalar term " +
                                         DiffPoly::make(c, word).to_string() +
                                         " has a repeated top derivative");
            }
            const auto mult = std::count(pre.begin(), pre.end(), pre.back());
            c /= static_cast<long>(mult);
        }
        DiffPoly piece = DiffPoly::make(c, pre);
        result += piece;
        rest -= project(differentiate(piece), algebra);
    }
    return result;
}

DiffPoly commutator_with_potential(const DiffPoly& p) {
    const DiffPoly q = DiffPoly::potential();
    return q * p - p * q;
}

DiffPoly scalar_image(const DiffPoly& p) {
    DiffPoly out;
    for (const auto& [word, c] : p.terms()) {
        Word sorted = word;
        std::sort(sorted.begin(), sorted.end());
        out += DiffPoly::make(c, sorted);
    }
    return out;
}

DiffPoly project(const DiffPoly& p, Algebra algebra) {
    return algebra == Algebra::scalar ? scalar_image(p) : p;
}

DiffPoly reversed(const DiffPoly& p) {
    DiffPoly out;
    for (const auto& [word, c] : p.terms()) {
        out += DiffPoly::make(c, Word(word.rbegin(), word.rend()));
    }
    return out;
}

}  // namespace heatkern
