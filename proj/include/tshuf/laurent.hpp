#pragma once

// Sparse Laurent polynomials over Z in the variables q1, q2, z_1, ..., z_n.
//
// A `Laurent` of arity n lives in Z[q1^{+-1}, q2^{+-1}][z_1^{+-1}, ..., z_n^{+-1}].
// Arity 0 values are the coefficient ring itself (`CoeffPoly`) and act as
// scalars on every arity. q3 is never a variable: it is the monomial
// q1^{-1} q2^{-1}.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tshuf/error.hpp"

namespace tshuf {

using Int = mpz_class;

inline constexpr int kMaxArity = 8;
inline constexpr int kQVars = 2;
inline constexpr int kMaxVars = kQVars + kMaxArity;

// Exponent vector: slot 0 is q1, slot 1 is q2, slot 2 + i is z_{i+1}.
struct Mono {
    std::array<std::int32_t, kMaxVars> e{};

    std::int32_t& q1() { return e[0]; }
    std::int32_t& q2() { return e[1]; }
    std::int32_t& z(int i) { return e[kQVars + i]; }
    std::int32_t q1() const { return e[0]; }
    std::int32_t q2() const { return e[1]; }
    std::int32_t z(int i) const { return e[kQVars + i]; }

    bool is_one() const;
    bool z_free(int arity) const;
    std::int64_t z_degree(int arity) const;

    Mono& operator+=(const Mono& o);
    Mono& operator-=(const Mono& o);
    Mono operator-() const;
    Mono scaled(std::int32_t k) const;
    friend Mono operator+(Mono a, const Mono& b) { return a += b; }
    friend Mono operator-(Mono a, const Mono& b) { return a -= b; }

    friend auto operator<=>(const Mono&, const Mono&) = default;
    friend bool operator==(const Mono&, const Mono&) = default;
};

struct MonoHash {
    std::size_t operator()(const Mono& m) const noexcept;
};

// Image of one z variable under a monomial substitution: sign * mono, where
// mono is over the target variables (its q slots carry the q-part).
struct MonoImage {
    int sign = 1;
    Mono mono;
};

// z_i -> images[i]; q1, q2 are fixed.
struct Substitution {
    int target_arity = 0;
    std::vector<MonoImage> images;
};

class Laurent {
public:
    using Term = std::pair<Mono, Int>;

    Laurent() = default;
    explicit Laurent(int arity);

    static Laurent constant(const Int& c, int arity = 0);
    static Laurent monomial(const Mono& m, const Int& c, int arity);
    // Canonicalizes: sorts, merges duplicates and drops zeros.
    static Laurent from_terms(int arity, std::vector<Term> terms);

    static Laurent q1_pow(int k, int arity = 0);
    static Laurent q2_pow(int k, int arity = 0);
    static Laurent q3_pow(int k, int arity = 0);
    // Single monomial q1^a q2^b with coefficient c.
    static Laurent q_mono(int a, int b, const Int& c = 1, int arity = 0);
    // z_i^k (0-based index i).
    static Laurent z_pow(int i, int k, int arity);
    // c * q1^a q2^b * z_i / z_j  (0-based i, j).
    static Laurent ratio(int i, int j, int a, int b, int arity, const Int& c = 1);

    int arity() const { return arity_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_constant() const;  // no z dependence
    // Single term with coefficient +-1.
    bool is_unit() const;
    bool is_monomial() const { return terms_.size() == 1; }
    const Term& leading() const { return terms_.back(); }

    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b);

    Laurent pow(unsigned k) const;
    Laurent scaled(const Int& c) const;
    Laurent shifted(const Mono& m) const;  // multiply by a monomial
    // Inverse of a unit (single +-1 term); throws otherwise.
    Laurent unit_inverse() const;

    // Same polynomial regarded in a higher arity (arity-0 scalars promote).
    Laurent with_arity(int arity) const;
    // Relabel z_i -> z_{perm[i]} in a target of the given arity.
    Laurent relabeled(std::span<const int> perm, int target_arity) const;
    Laurent substitute(const Substitution& s) const;
    // z_i -> z_i^{-1} for all i.
    Laurent inverted_z() const;
    // Invariant under all adjacent transpositions of z_1..z_n.
    bool is_symmetric() const;
    // Common total z-degree of all terms, if homogeneous (and nonzero).
    std::optional<std::int64_t> z_degree() const;
    // Componentwise min / max exponents over all terms (zero polynomial: zeros).
    Mono min_exponents() const;
    Mono max_exponents() const;
    // Collect the coefficient (a CoeffPoly) of each distinct z-monomial.
    std::vector<std::pair<Mono, Laurent>> by_z_monomial() const;

    std::string to_string() const;

private:
    void canonicalize();
    int arity_ = 0;
    std::vector<Term> terms_;  // ascending lexicographic order
};

using CoeffPoly = Laurent;

int common_arity(const Laurent& a, const Laurent& b);

// Exact division in Z[q^{+-1}][z^{+-1}]; throws NotDivisible with the
// partially reduced dividend (the remainder witness).
Laurent exact_div(const Laurent& p, const Laurent& q);
std::optional<Laurent> try_exact_div(const Laurent& p, const Laurent& q,
                                     Laurent* remainder = nullptr);

// Permutation helpers shared by the symmetrization code.
Substitution permutation_substitution(std::span<const int> perm, int arity);

}  // namespace tshuf
