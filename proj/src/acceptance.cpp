#include "tshuf/acceptance.hpp"

#include <chrono>
#include <numeric>
#include <random>
#include <sstream>

#include "tshuf/generators.hpp"
#include "tshuf/membership.hpp"
#include "tshuf/pairing.hpp"
#include "tshuf/ratexpr.hpp"

namespace tshuf {

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

SlopePoint sp(int n, int d) { return slope_point(n, d); }

int top_arity(const ShuffleElem& R) { return R.components().empty() ? 0 : R.components().rbegin()->first; }

class Random {
public:
    explicit Random(unsigned seed) : gen_(seed) {}
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    Laurent laurent(int arity, int terms, int span) {
        std::vector<Laurent::Term> ts;
        for (int k = 0; k < terms; ++k) {
            Mono m;
            m.q1() = integer(-span, span);
            m.q2() = integer(-span, span);
            for (int i = 0; i < arity; ++i) m.z(i) = integer(-span, span);
            int c = 0;
            while (c == 0) c = integer(-4, 4);
            ts.emplace_back(m, c);
        }
        return Laurent::from_terms(arity, std::move(ts));
    }

    Laurent symmetric(int arity, int terms, int span) {
        const Laurent p = laurent(arity, terms, span);
        std::vector<int> perm(arity);
        std::iota(perm.begin(), perm.end(), 0);
        Laurent acc(arity);
        do {
            acc += p.relabeled(perm, arity);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return acc;
    }

    ShuffleElem multiple_of_f(int n) {
        return ShuffleElem::from_component(symmetric(n, 2, 1) * f_n_poly(n));
    }

private:
    std::mt19937 gen_;
};

// 1: zeta at wheel points
Outcome zeta_values() {
    Outcome o;
    const RatExpr z = zeta(0, 1, 2);
    // z_1 -> x q1^a q2^b, z_2 -> x
    auto at = [&](int a, int b) {
        Substitution s{1, {MonoImage{1, Mono{}}, MonoImage{1, Mono{}}}};
        s.images[0].mono.z(0) = 1;
        s.images[0].mono.q1() = a;
        s.images[0].mono.q2() = b;
        s.images[1].mono.z(0) = 1;
        return z.substitute(s).to_polynomial();
    };
    const Laurent one = Laurent::constant(1, 1);
    if (!at(0, -1).is_zero()) o.fail("zeta(q2^-1) != 0");
    if (!at(-1, 0).is_zero()) o.fail("zeta(q1^-1) != 0");
    const Laurent expected = (one - Laurent::q1_pow(1, 1)) * (one + Laurent::q2_pow(1, 1)) *
                             (one - Laurent::q_mono(1, 1, 1, 1));
    if (!(at(0, 1) == expected)) o.fail("zeta(q2) = " + at(0, 1).to_string());
    return o;
}

// 2: membership of generators
Outcome generator_membership() {
    Outcome o;
    for (int n = 1; n <= 4; ++n)
        if (!is_in_S(f_n(n)).in) o.fail("F_" + std::to_string(n) + " reported out");
    Random rnd(2024);
    for (int k = 0; k < 5; ++k) {
        const int n = 1 + k % 3;
        if (!is_in_S(rnd.multiple_of_f(n)).in) o.fail("g F_" + std::to_string(n) + " reported out");
    }
    for (int n = 1; n <= 3; ++n)
        for (int d = -2; d <= 2; ++d)
            if (!is_in_S(gen_Hbar(sp(n, d))).in)
                o.fail("Hbar_{" + std::to_string(n) + "," + std::to_string(d) + "} reported out");
    if (is_in_S(ShuffleElem::from_component(Laurent::constant(1, 1))).in) o.fail("constant 1 at arity 1 reported in");
    if (o.pass) o.detail = "F_1..F_4, 5 multiples g F_n, 15 Hbar_{n,d} in; control out";
    return o;
}

// 3: closure under products
Outcome closure() {
    Outcome o;
    Random rnd(77);
    std::vector<std::pair<std::string, ShuffleElem>> pool;
    for (int n = 1; n <= 2; ++n) pool.emplace_back("g F_" + std::to_string(n), rnd.multiple_of_f(n));
    for (int d = -1; d <= 1; ++d) pool.emplace_back("Hbar_{1," + std::to_string(d) + "}", gen_Hbar(sp(1, d)));
    pool.emplace_back("Hbar_{2,1}", gen_Hbar(sp(2, 1)));
    pool.emplace_back("F_2", f_n(2));
    int done = 0;
    while (done < 10) {
        const auto& [na, a] = pool[rnd.integer(0, static_cast<int>(pool.size()) - 1)];
        const auto& [nb, b] = pool[rnd.integer(0, static_cast<int>(pool.size()) - 1)];
        if (top_arity(a) + top_arity(b) > 4) continue;
        if (!is_in_S(shuffle_mul(a, b)).in) o.fail(na + " * " + nb + " reported out");
        ++done;
    }
    if (o.pass) o.detail = "10 products in";
    return o;
}

// 4: alternate formulas
Outcome formula_agreement() {
    Outcome o;
    for (int n = 1; n <= 3; ++n)
        for (int d = -3; d <= 3; ++d) {
            const std::string at = "(" + std::to_string(n) + "," + std::to_string(d) + ")";
            const ShuffleElem p = gen_P(sp(n, d));
            if (!(gen_P_alt(sp(n, d), LadderQ::q1) == p)) o.fail("q1 formula for P differs at " + at);
            if (!(gen_P_alt(sp(n, d), LadderQ::q3) == p)) o.fail("q3 formula for P differs at " + at);
            if (!(gen_Hbar(sp(n, d), HbarVia::end1) == gen_Hbar(sp(n, d), HbarVia::end2)))
                o.fail("Hbar formulas differ at " + at);
        }
    return o;
}

// 5: same-slope commutation
Outcome commutation() {
    Outcome o;
    auto commutator_zero = [](const ShuffleElem& a, const ShuffleElem& b) {
        return (shuffle_mul(a, b) - shuffle_mul(b, a)).reduced().is_zero();
    };
    if (!commutator_zero(gen_P(sp(1, 0)), gen_P(sp(2, 0)))) o.fail("[P_{1,0}, P_{2,0}] != 0");
    if (!commutator_zero(gen_P(sp(1, 1)), gen_P(sp(2, 2)))) o.fail("[P_{1,1}, P_{2,2}] != 0");
    return o;
}

// 6: exp-series dictionary
Outcome series() {
    Outcome o;
    for (bool barred : {false, true})
        for (const auto& row : series_convert(1, 0, 3, SeriesDirection::p_to_h, barred))
            if (row.t >= 2 && !row.equal)
                o.fail(std::string(barred ? "Hbar" : "H") + " at t = " + std::to_string(row.t));
    if (o.pass) o.detail = "H and Hbar at t = 2, 3";
    return o;
}

// 7: orthogonality and norms
Outcome orthogonality() {
    Outcome o;
    int entries = 0;
    for (auto [n, d] : {std::pair{2, 0}, {2, 1}, {3, 0}}) {
        const auto paths = convex_paths(n, d, SlopeWindow{-2, 2});
        for (const auto& v : paths) {
            const Kernel kv = kernel_P_path(v);
            for (const auto& w : paths) {
                const PairingValue val = pair(kv, gen_Pbar_path(w));
                ++entries;
                if (v == w) {
                    if (val.as_rational() != std::optional<mpq_class>(mpq_class(path_norm(v))))
                        o.fail("<P_v, Pbar_v> = " + val.to_string() + " for v = " + v.to_string());
                } else if (!val.is_zero()) {
                    o.fail("<P_v, Pbar_w> = " + val.to_string() + " for v = " + v.to_string() + ", w = " + w.to_string());
                }
            }
        }
    }
    if (o.pass) o.detail = std::to_string(entries) + " entries";
    return o;
}

Laurent path_numerator(const ConvexPath& v, bool use_p) {
    Laurent p = Laurent::constant(1);
    int off = 0;
    for (const auto& pt : v.points) {
        const Kernel k = use_p ? kernel_P(pt) : kernel_H(pt);
        const int total = off + pt.n;
        std::vector<int> shift(pt.n);
        std::iota(shift.begin(), shift.end(), off);
        p = p.with_arity(total) * k.body.num().relabeled(shift, total);
        if (off > 0) p *= Laurent::constant(1, total) - Laurent::ratio(off, off - 1, 0, -1, total);
        off = total;
    }
    return p;
}

// 8: residue formula vs constant term
Outcome residue_equivalence() {
    Outcome o;
    const int sign = residue_sign();
    Random rnd(8);
    int entries = 0;
    for (int n = 1; n <= 3; ++n) {
        std::vector<Laurent> rs;
        for (int d = 0; d <= 1; ++d) {
            rs.push_back(Laurent::z_pow(0, d, n));
            Laurent r(n);
            while (r.is_zero()) {
                for (const auto& [m, c] : rnd.laurent(n, 4, 1).terms())
                    if (m.z_degree(n) == d) r += Laurent::monomial(m, c, n);
            }
            rs.push_back(r);
        }
        for (int d = 0; d <= 1; ++d)
            for (const auto& w : convex_paths(n, d, SlopeWindow{-1, 1}))
                for (bool use_p : {false, true}) {
                    const Laurent p = path_numerator(w, use_p);
                    const ShuffleElem Rp = kernel_value(h_form_kernel(p));
                    for (const auto& r : rs) {
                        Kernel kr;
                        kr.arity = n;
                        kr.body = RatExpr(r);
                        ++entries;
                        if (!(pair_residue(kernel_value(kr), p) == pair(kr, Rp)))
                            o.fail("mismatch for r = " + r.to_string() + ", path " + w.to_string());
                    }
                }
    }
    if (o.pass) o.detail = std::to_string(entries) + " entries, residue sign " + std::to_string(sign);
    return o;
}

// 9: integrality criterion and PBW round trip
Outcome integrality() {
    Outcome o;
    const SlopeWindow win{-2, 2};
    for (auto [n, d] : {std::pair{2, 0}, {2, 1}})
        for (const auto& v : convex_paths(n, d, win)) {
            const auto rep = integrality_check(gen_Hbar_path(v), win);
            if (!rep.integral) o.fail("Hbar_v not integral for v = " + v.to_string());
        }
    const ShuffleElem neg = gen_Hbar(sp(1, 0)).divided(Laurent::q2_pow(1) - Laurent::constant(1));
    if (integrality_check(neg, win).integral) o.fail("control Hbar_{1,0}/(q2 - 1) passed");
    const ShuffleElem prod = shuffle_mul(gen_Hbar(sp(1, 0)), gen_Hbar(sp(1, 1)));
    const auto terms = pbw_expand(prod, win);
    for (const auto& t : terms)
        if (!t.coeff.is_integral()) o.fail("non-integral PBW coefficient on " + t.path.to_string());
    return o;
}

// 10: ribbon rule and closing remark
Outcome ribbons() {
    Outcome o;
    const ShuffleElem s1 = gen_Sprime(sp(1, 0), {});
    if (!(shuffle_mul(s1, s1) == gen_Sprime(sp(2, 0), {0}) + gen_Sprime(sp(2, 0), {1})))
        o.fail("S'_() * S'_() != S'_(0) + S'_(1)");
    const Laurent one = Laurent::constant(1);
    const ShuffleElem rhs = (gen_Sprime(sp(2, 0), {0}).scaled(Laurent::q1_pow(1)) + gen_Sprime(sp(2, 0), {1}))
                                .divided(Laurent::q1_pow(1) - one)
                                .divided(Laurent::q1_pow(2) - one);
    if (!(gen_Hbar(sp(2, 0)) == rhs)) o.fail("Hbar_{2,0} != closing-remark combination");
    return o;
}

// 11: Hbar_{n,0} against q1^{n(n-1)/2} F_n
Outcome slope_zero_sign() {
    Outcome o;
    std::vector<int> signs;
    std::ostringstream pattern;
    for (int n = 1; n <= 3; ++n) {
        const ShuffleElem h = gen_Hbar(sp(n, 0));
        const ShuffleElem f = f_n(n).scaled(Laurent::q1_pow(n * (n - 1) / 2));
        const int s = h == f ? 1 : (h == -f ? -1 : 0);
        signs.push_back(s);
        pattern << (n > 1 ? ", " : "") << "n=" << n << ": " << (s == 0 ? "none" : (s > 0 ? "+1" : "-1"));
    }
    o.detail = "signs " + pattern.str();
    for (int s : signs)
        if (s == 0) o.fail("not equal up to sign; " + o.detail);
    if (o.pass && !(signs[0] == signs[1] && signs[1] == signs[2]))
        o.fail(o.detail + "; the sign is (-1)^n, not constant across n");
    return o;
}

// 12: reduction to generators
Outcome reduction() {
    Outcome o;
    auto check = [&](const std::string& name, const ShuffleElem& R) {
        const int n = top_arity(R);
        Laurent total(n);
        for (const auto& st : reduce_to_generators(R)) total += reduction_piece(st.lambda, st.rho);
        if (!(total == R.component(n))) o.fail("reconstruction differs for " + name);
    };
    check("F_1 * F_1", shuffle_mul(f_n(1), f_n(1)));
    check("F_2", f_n(2));
    Random rnd(12);
    const ShuffleElem R = shuffle_mul(rnd.multiple_of_f(1), rnd.multiple_of_f(1)) + rnd.multiple_of_f(2);
    check("random arity-2 element", R);
    return o;
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "zeta wheel values", zeta_values},
    {2, "membership of generators", generator_membership},
    {3, "closure under products", closure},
    {4, "alternate formulas for P and Hbar", formula_agreement},
    {5, "same-slope commutation", commutation},
    {6, "exp-series consistency", series},
    {7, "orthogonality and norms", orthogonality},
    {8, "residue formula equivalence", residue_equivalence},
    {9, "integrality criterion and PBW round trip", integrality},
    {10, "ribbon rule and closing remark", ribbons},
    {11, "Hbar_{n,0} vs q1^{n(n-1)/2} F_n", slope_zero_sign},
    {12, "reduction to generators", reduction},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only,
                                            const std::function<void(const CriterionResult&)>& report) {
    std::vector<CriterionResult> out;
    for (const auto& c : kCriteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = c.run();
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (report) report(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << " (" << r.seconds << " s)";
    if (!r.detail.empty()) s << ": " << r.detail;
    return s.str();
}

}  // namespace tshuf
