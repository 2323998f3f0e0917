#pragma once

// Generator families P, Pbar, H, Hbar, Hbar', S'_eps given by ladder kernels,
// and the symmetric-function dictionary inside a slope subalgebra.

#include <string>
#include <vector>

#include "tshuf/partition.hpp"
#include "tshuf/shuffle.hpp"

namespace tshuf {

// (n, d) with t = gcd(n, d) (gcd(n, 0) = n) and a = n / t.
struct SlopePoint {
    int n = 1;
    int d = 0;
    int t() const;
    int a() const;
    friend bool operator==(const SlopePoint&, const SlopePoint&) = default;
};
SlopePoint slope_point(int n, int d);

// floor(i d / n) - floor((i-1) d / n) for i = 1..n.
std::vector<int> exponent_ladder(const SlopePoint& p);

enum class LadderQ { q1, q2, q3 };
enum class HbarVia { end1, end2 };

// Scalar fraction num / prod(den) in the coefficient ring.
struct ScalarFraction {
    CoeffPoly num;
    std::vector<CoeffPoly> den;
};
ScalarFraction gamma(const SlopePoint& p);

// Kernel presentations. kernel_P with LadderQ::q1 / q3 includes the gamma'
// / gamma'' prefactor, so all three flavours present the same element.
Kernel kernel_P(const SlopePoint& p, LadderQ flavor = LadderQ::q2);
Kernel kernel_Pbar(const SlopePoint& p);
Kernel kernel_H(const SlopePoint& p);
Kernel kernel_Hbar(const SlopePoint& p, HbarVia via = HbarVia::end1);
Kernel kernel_Hbar_prime(const SlopePoint& p);
// eps has length t - 1.
Kernel kernel_Sprime(const SlopePoint& p, const std::vector<int>& eps);

// Values, memoized.
ShuffleElem gen_P(const SlopePoint& p);
ShuffleElem gen_Pbar(const SlopePoint& p);
ShuffleElem gen_P_alt(const SlopePoint& p, LadderQ flavor);
ShuffleElem gen_H(const SlopePoint& p);
ShuffleElem gen_Hbar(const SlopePoint& p, HbarVia via = HbarVia::end1);
ShuffleElem gen_Hbar_prime(const SlopePoint& p);
ShuffleElem gen_Sprime(const SlopePoint& p, const std::vector<int>& eps);

// Parses "0110" into {0,1,1,0}; "" is the empty sequence.
std::vector<int> parse_ribbon(const std::string& bits);

// t_1 ... t_k * prod_u (multiplicity of u)!
Int z_lambda(const Partition& lambda);

// A rational combination of products X_{lambda_1} * X_{lambda_2} * ...
struct SeriesTerm {
    mpq_class coeff;
    Partition lambda;
};
// h_t = sum_{lambda |- t} p_lambda / z_lambda
std::vector<SeriesTerm> h_in_p(int t);
// p_t = sum_{lambda |- t} (-1)^{l-1} t (l-1)! / prod m_i! * h_lambda
std::vector<SeriesTerm> p_in_h(int t);

enum class SeriesDirection { p_to_h, h_to_p };

struct SeriesRow {
    int t = 0;
    ShuffleElem expected;   // H_{nt,dt} (or P_{nt,dt} for h_to_p)
    ShuffleElem combined;   // the Newton-type combination of the other family
    bool equal = false;
};

// For coprime (n, d) and t = 1..tmax, evaluates the exp-series dictionary in
// the slope subalgebra by shuffle products and compares with the direct
// generators. barred selects Pbar / Hbar.
std::vector<SeriesRow> series_convert(int n, int d, int tmax, SeriesDirection dir, bool barred);

}  // namespace tshuf
