#pragma once

// Structured rational expressions: a Laurent numerator over an explicit
// multiset of Laurent denominator factors. Every denominator that occurs in
// shuffle-algebra kernels is a binomial (1 - c*m) or a scalar (q^t - 1), so
// sums are combined over a common denominator built from associate classes of
// the factors and cleared by factor-wise exact division. No gcds are taken.

#include <span>
#include <vector>

#include "tshuf/laurent.hpp"

namespace tshuf {

// f = unit * key, where unit is +-(monomial) and key has leading term |c| * 1.
// Two factors are associates iff their keys coincide.
struct NormalizedFactor {
    Laurent unit;
    Laurent key;
};
NormalizedFactor normalize_factor(const Laurent& f);

class RatExpr {
public:
    RatExpr() = default;
    explicit RatExpr(Laurent num, std::vector<Laurent> den = {});

    int arity() const { return num_.arity(); }
    const Laurent& num() const { return num_; }
    const std::vector<Laurent>& den() const { return den_; }

    RatExpr operator-() const;
    friend RatExpr operator*(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator+(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator-(const RatExpr& a, const RatExpr& b);
    // Value equality: cross-multiplied numerators agree.
    bool equals(const RatExpr& o) const;

    RatExpr substitute(const Substitution& s) const;
    RatExpr relabeled(std::span<const int> perm, int target_arity) const;
    RatExpr with_arity(int arity) const;

    // Clears every denominator factor by exact division. Throws NotPolynomial
    // naming the first factor that fails to divide.
    Laurent to_polynomial() const;
    // Same, clearing the factors in the given order (a permutation of den()).
    Laurent to_polynomial(std::span<const std::size_t> order) const;

private:
    Laurent num_;
    std::vector<Laurent> den_;
};

// Least common multiple of several denominator factor lists, up to units:
// den is the merged list and multipliers[k] satisfies
// 1 / prod(dens[k]) = multipliers[k] / prod(den).
struct CommonDenominator {
    std::vector<Laurent> den;
    std::vector<Laurent> multipliers;
};
CommonDenominator common_denominator(std::span<const std::vector<Laurent>> dens, int arity);

// Sum over a common denominator. Factors shared up to units are merged, so
// the result's denominator is the least common multiple of the associate
// classes that occur.
RatExpr sum(std::span<const RatExpr> terms);

// Magnitude ordering of variables: order[0] is the largest, order.back() the
// smallest, i.e. |z_{order[0]}| >> |z_{order[1]}| >> ...
struct Region {
    std::vector<int> order;
    static Region descending(int arity);  // |z_1| >> ... >> |z_n|
    static Region ascending(int arity);   // |z_1| << ... << |z_n|
};

enum class Magnitude { small, large, unit, incomparable };
// Compares the z-part of a monomial with 1 in the region.
Magnitude classify(const Mono& m, int arity, const Region& region);

// For a factor c*(1 - m) with c its z-free term and m small in the region,
// returns c^{-1} * sum_{s=0}^{order} m^s. Throws RegionViolation otherwise.
Laurent geom_expand(const Laurent& factor, int order, const Region& region);

// Result of an ordered constant-term extraction: value / prod(scalar_den).
struct ConstantTerm {
    CoeffPoly value;
    std::vector<CoeffPoly> scalar_den;
};

// Constant term in z of num / prod(den), every z-dependent factor expanded as
// a geometric series valid in the region. Binomial factors are oriented
// automatically; z-free factors are returned unexpanded in scalar_den.
// The total-degree truncation bound defaults to the numerator span + 2 and
// is re-checked at bound + 1 (TruncationUnstable on disagreement).
ConstantTerm ordered_constant_term(const Laurent& num, std::span<const Laurent> den,
                                   const Region& region);

}  // namespace tshuf
