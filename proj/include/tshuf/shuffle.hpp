#pragma once

// The shuffle product on symmetric Laurent polynomials, the zeta kernel and
// kernel presentations Sym[body * prod_{i<j} zeta(z_i/z_j)].

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tshuf/laurent.hpp"
#include "tshuf/ratexpr.hpp"
#include "tshuf/serialize.hpp"

namespace tshuf {

// zeta(z_i/z_j) = (1 - q1 z_i/z_j)(1 - q2 z_i/z_j)(1 - q1 q2 z_j/z_i) / (1 - z_i/z_j),
// 0-based variable indices.
RatExpr zeta(int i, int j, int arity);

// Sum of graded symmetric components divided by a scalar denominator:
//   (sum_n R_n(z_1..z_n)) / prod(den).
// Components are verified symmetric on construction; the denominator stays
// empty for integral elements.
class ShuffleElem {
public:
    ShuffleElem() = default;
    static ShuffleElem from_component(Laurent p, std::vector<CoeffPoly> den = {});
    static ShuffleElem unit();

    const std::map<int, Laurent>& components() const { return comps_; }
    const std::vector<CoeffPoly>& den() const { return den_; }
    bool is_zero() const { return comps_.empty(); }
    bool is_integral() const { return den_.empty(); }
    // Component of the given arity (zero if absent), numerator only.
    Laurent component(int n) const;
    // (n, d) when there is a single arity and all terms have z-degree d.
    std::optional<std::pair<int, std::int64_t>> bidegree() const;

    ShuffleElem operator-() const;
    friend ShuffleElem operator+(const ShuffleElem& a, const ShuffleElem& b);
    friend ShuffleElem operator-(const ShuffleElem& a, const ShuffleElem& b);
    ShuffleElem scaled(const CoeffPoly& c) const;
    ShuffleElem divided(const CoeffPoly& c) const;
    // Value equality (cross-multiplied).
    friend bool operator==(const ShuffleElem& a, const ShuffleElem& b);

    // Cancels every denominator factor that divides all components.
    ShuffleElem reduced() const;
    // Integral numerator; throws NotPolynomial if a denominator survives.
    Laurent integral_component(int n) const;

private:
    std::map<int, Laurent> comps_;
    std::vector<CoeffPoly> den_;
    friend ShuffleElem shuffle_mul(const ShuffleElem&, const ShuffleElem&);
    static ShuffleElem make(std::map<int, Laurent> comps, std::vector<CoeffPoly> den);
};

Json to_json(const ShuffleElem& e);
ShuffleElem shuffle_from_json(const Json& doc);

// Kernel presentation of scale_num / prod(scale_den) * Sym[body * prod_{i<j} zeta].
// The zeta factors are implicit and never stored in body.
struct Kernel {
    int arity = 0;
    RatExpr body;
    CoeffPoly scale_num = Laurent::constant(1);
    std::vector<CoeffPoly> scale_den;
};

// Sum over all of S_n of sigma(body * prod_{i<j} zeta(z_i/z_j)), cleared to a
// polynomial. No normalization and no scale factors.
Laurent sym_full(const Kernel& k);
// The element presented by the kernel, scale factors included.
ShuffleElem kernel_value(const Kernel& k);

ShuffleElem shuffle_mul(const ShuffleElem& a, const ShuffleElem& b);
// prod_{1<=i,j<=n} (1 - q2 z_i/z_j)
ShuffleElem f_n(int n);
Laurent f_n_poly(int n);

// Body k(z_1..z_n) k'(z_{n+1}..z_{n+n'}); since sym_full supplies zeta for
// every pair, sym_full(kernel_shuffle(k, k')) = sym_full(k) * sym_full(k').
// {"kernel": {"arity", "num", "den": [...], "scale_num", "scale_den": [...]}}
Json to_json(const Kernel& k);
Kernel kernel_from_json(const Json& doc);

Kernel kernel_shuffle(const Kernel& a, const Kernel& b);

}  // namespace tshuf
