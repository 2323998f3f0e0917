#pragma once

// Integral membership in S: divisibility of the q2-string specializations,
// wheel conditions, and the constructive reduction to F_n-generated pieces.

#include <optional>
#include <string>
#include <vector>

#include "tshuf/laurent.hpp"
#include "tshuf/partition.hpp"
#include "tshuf/serialize.hpp"
#include "tshuf/shuffle.hpp"

namespace tshuf {

// z's -> x_1 q2^{n_1-1}, ..., x_1 q2, x_1, ..., x_k q2^{n_k-1}, ..., x_k.
Substitution phi_substitution(const Partition& lambda);
Laurent phi(const Laurent& R, const Partition& lambda);

// prod_i (1-q2)^{n_i} prod_{s=1}^{n_i-1} zeta(q2^s)^{n_i-s}, cleared to a CoeffPoly.
CoeffPoly divisibility_scalar(const Partition& lambda);
// Binomial factors of the two products over i < j.
std::vector<Laurent> divisibility_cross_factors(const Partition& lambda);
// The same factors in the form indexed by ordered pairs i != j.
std::vector<Laurent> divisibility_cross_factors_symmetric(const Partition& lambda);
// Scalar times cross factors; the two cross forms are checked to agree up to
// a unit (InternalAssertion otherwise).
Laurent divisibility_kernel(const Partition& lambda);

// prod_{a != b} prod_{u=max(n_a-n_b,0)+1}^{n_a} (1 - x_a q2^u / x_b)
Laurent pi3(const Partition& lambda);

struct MembershipReport {
    bool in = true;
    int arity = 0;
    std::optional<Partition> lambda;
    Laurent remainder;
    std::string reason;
};

MembershipReport is_in_S(const ShuffleElem& R);
Json to_json(const MembershipReport& report);

// R(x, x q2, x q1 q2, z_4, ...) = R(x, x q2, x q1^{-1}, z_4, ...) = 0 for every
// component; components must have arity >= 3.
bool wheel_check(const ShuffleElem& R);

struct ReductionStep {
    Partition lambda;
    Laurent rho;  // symmetric in each block of the transposed partition
};

// Sum over ordered set partitions into blocks of sizes lambda' of
// rho * prod_i F_{t_i}(block i) * prod_{i<j} prod zeta(z_a/z_b).
Laurent reduction_piece(const Partition& lambda, const Laurent& rho);

// Writes R as a sum of reduction pieces, visiting partitions in decreasing
// lexicographic order. Throws NotInS when R fails the membership test.
std::vector<ReductionStep> reduce_to_generators(const ShuffleElem& R);
Json to_json(const std::vector<ReductionStep>& steps);

}  // namespace tshuf
