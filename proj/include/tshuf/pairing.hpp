#pragma once

// The symmetric pairing on S_loc, convex paths, integrality of pairings
// against H_v, and expansion in the Hbar_v basis.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tshuf/generators.hpp"
#include "tshuf/serialize.hpp"
#include "tshuf/shuffle.hpp"

namespace tshuf {

// num / prod(den) in Q(q1, q2).
class PairingValue {
public:
    PairingValue() = default;
    PairingValue(CoeffPoly num, std::vector<CoeffPoly> den = {});
    static PairingValue rational(const mpq_class& c);

    const CoeffPoly& num() const { return num_; }
    const std::vector<CoeffPoly>& den() const { return den_; }
    CoeffPoly den_product() const;

    bool is_zero() const { return num_.is_zero(); }
    // Laurent polynomial with integer coefficients after cancellation.
    bool is_integral() const;
    // The value as a rational number, if it is one.
    std::optional<mpq_class> as_rational() const;
    PairingValue reduced() const;

    friend PairingValue operator+(const PairingValue& a, const PairingValue& b);
    friend PairingValue operator*(const PairingValue& a, const PairingValue& b);
    PairingValue scaled(const mpq_class& c) const;
    friend bool operator==(const PairingValue& a, const PairingValue& b);

    std::string to_string() const;

private:
    CoeffPoly num_{0};
    std::vector<CoeffPoly> den_;
};

Json to_json(const PairingValue& v);

// <R, R'> for R = scale * Sym[body * prod zeta] and R' a polynomial of the
// same arity: ordered constant term over |z_1| >> ... >> |z_n| of
// r(z) R'(z^{-1}) / prod_{i<j} zeta(z_j/z_i), divided by (q2 - 1)^n.
// Every z-dependent denominator factor of the body must be small there.
PairingValue pair(const Kernel& kR, const ShuffleElem& Rp);

// Sym[p / prod (1 - z_{i+1}/(z_i q2)) * prod zeta] as a kernel.
Kernel h_form_kernel(const Laurent& p);

// <R, R'> for R' = Sym[p / prod (1 - z_{i+1}/(z_i q2)) * prod zeta], as a sum
// over compositions of iterated residues along q2-strings followed by an
// ordered constant term over |x_1| << ... << |x_k|.
PairingValue pair_residue(const ShuffleElem& R, const Laurent& p);
// Sign of a single residue extraction, fixed on first use by comparing with
// pair on a small calibration suite. CalibrationFailure if neither sign fits.
int residue_sign();

struct SlopeWindow {
    mpq_class lo, hi;
};

struct ConvexPath {
    std::vector<SlopePoint> points;  // by slope, then by n
    int n() const;
    int d() const;
    std::string to_string() const;
    friend bool operator==(const ConvexPath&, const ConvexPath&) = default;
};

ConvexPath canonical_path(std::vector<SlopePoint> points);
// prod over slopes of z_lambda for the partition of multiplicities t_i
Int path_norm(const ConvexPath& v);

// All convex paths of total (n, d) with every slope in the window, in
// lexicographic order of their point sequences.
std::vector<ConvexPath> convex_paths(int n, int d, const SlopeWindow& window);

Kernel kernel_P_path(const ConvexPath& v);
Kernel kernel_H_path(const ConvexPath& v);
ShuffleElem gen_Pbar_path(const ConvexPath& v);
ShuffleElem gen_Hbar_path(const ConvexPath& v);

struct IntegralityReport {
    bool integral = true;
    std::optional<ConvexPath> offending;
    std::vector<std::pair<ConvexPath, PairingValue>> pairings;  // <R, H_v>
    // no path of the window widened by one carries a nonzero pairing outside it
    bool window_stable = true;
};

IntegralityReport integrality_check(const ShuffleElem& R, const SlopeWindow& window);
Json to_json(const IntegralityReport& report);

struct PbwTerm {
    ConvexPath path;
    PairingValue coeff;
};

// R = sum c_v Hbar_v over the window, solved from the Gram system
// <Hbar_v, H_w> and verified by re-expansion (NotInSpan otherwise).
std::vector<PbwTerm> pbw_expand(const ShuffleElem& R, const SlopeWindow& window);
Json to_json(const std::vector<PbwTerm>& terms);

}  // namespace tshuf
