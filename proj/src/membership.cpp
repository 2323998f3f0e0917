#include "tshuf/membership.hpp"

#include <algorithm>
#include <numeric>

#include "tshuf/config.hpp"

namespace tshuf {

namespace {

Laurent x_var(int a, int k) { return Laurent::z_pow(a, 1, k); }

// x_i q1 - x_j q2^e
Laurent cross_binomial(int i, int j, int e, int k) {
    return x_var(i, k) * Laurent::q1_pow(1) - x_var(j, k) * Laurent::q2_pow(e);
}

MonoImage image(int var, int q1, int q2) {
    MonoImage img;
    img.mono.z(var) = 1;
    img.mono.q1() = q1;
    img.mono.q2() = q2;
    return img;
}

bool same_up_to_units(const std::vector<Laurent>& a, const std::vector<Laurent>& b) {
    if (a.size() != b.size()) return false;
    std::vector<Laurent> keys;
    for (const auto& f : b) keys.push_back(normalize_factor(f).key);
    for (const auto& f : a) {
        const Laurent key = normalize_factor(f).key;
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) return false;
        keys.erase(it);
    }
    return true;
}

}  // namespace

Substitution phi_substitution(const Partition& lambda) {
    const int k = lambda.length();
    Substitution s{k, {}};
    for (int a = 0; a < k; ++a)
        for (int e = lambda.parts[a] - 1; e >= 0; --e) s.images.push_back(image(a, 0, e));
    return s;
}

Laurent phi(const Laurent& R, const Partition& lambda) {
    if (R.arity() != lambda.size())
        throw ArityMismatch("partition " + lambda.to_string() + " does not match arity " +
                            std::to_string(R.arity()));
    return R.substitute(phi_substitution(lambda));
}

CoeffPoly divisibility_scalar(const Partition& lambda) {
    const Laurent one = Laurent::constant(1);
    const Laurent q1 = Laurent::q1_pow(1);
    Laurent num = one;
    std::vector<Laurent> den;
    for (int n : lambda.parts) {
        num *= (one - Laurent::q2_pow(1)).pow(n);
        for (int s = 1; s < n; ++s)
            for (int r = 0; r < n - s; ++r) {
                num *= (one - q1 * Laurent::q2_pow(s)) * (one - Laurent::q2_pow(s + 1)) *
                       (one - q1 * Laurent::q2_pow(1 - s));
                den.push_back(one - Laurent::q2_pow(s));
            }
    }
    return RatExpr(num, den).to_polynomial();
}

std::vector<Laurent> divisibility_cross_factors(const Partition& lambda) {
    const int k = lambda.length();
    std::vector<Laurent> out;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const int ni = lambda.parts[i], nj = lambda.parts[j];
            for (int a = 1; a <= ni - 1; ++a)
                for (int b = 0; b <= nj - 1; ++b) {
                    out.push_back(cross_binomial(i, j, b - a, k));
                    out.push_back(cross_binomial(j, i, a - b - 1, k));
                }
        }
    return out;
}

std::vector<Laurent> divisibility_cross_factors_symmetric(const Partition& lambda) {
    const int k = lambda.length();
    std::vector<Laurent> out;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const int ni = lambda.parts[i], nj = lambda.parts[j];
            for (int a = std::min(ni - nj, 0) + 1; a <= ni - 1; ++a)
                for (int b = 0; b <= std::min(ni, nj) - 1; ++b)
                    out.push_back(cross_binomial(i, j, b - a, k));
        }
    return out;
}

Laurent divisibility_kernel(const Partition& lambda) {
    const auto cross = divisibility_cross_factors(lambda);
    if (!same_up_to_units(cross, divisibility_cross_factors_symmetric(lambda)))
        throw InternalAssertion("the two forms of the cross factors differ for " +
                                lambda.to_string());
    Laurent out = divisibility_scalar(lambda).with_arity(lambda.length());
    for (const auto& f : cross) out *= f;
    return out;
}

Laurent pi3(const Partition& lambda) {
    const int k = lambda.length();
    Laurent out = Laurent::constant(1, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (a == b) continue;
            const int na = lambda.parts[a], nb = lambda.parts[b];
            for (int u = std::max(na - nb, 0) + 1; u <= na; ++u)
                out *= Laurent::constant(1, k) - Laurent::ratio(a, b, 0, u, k);
        }
    return out;
}

MembershipReport is_in_S(const ShuffleElem& R) {
    MembershipReport rep;
    const ShuffleElem r = R.reduced();
    if (!r.is_integral()) {
        rep.in = false;
        rep.arity = r.components().begin()->first;
        rep.remainder = r.den().front();
        rep.reason = "coefficients are not integral: denominator (" + r.den().front().to_string() +
                     ") does not cancel";
        return rep;
    }
    for (const auto& [n, comp] : r.components()) {
        if (n == 0) continue;
        for (const auto& lambda : partitions_desc(n)) {
            Laurent p = phi(comp, lambda);
            std::vector<Laurent> factors{divisibility_scalar(lambda)};
            for (auto& f : divisibility_cross_factors(lambda)) factors.push_back(std::move(f));
            for (const auto& f : factors) {
                Laurent rem;
                auto q = try_exact_div(p, f, &rem);
                if (!q) {
                    rep.in = false;
                    rep.arity = n;
                    rep.lambda = lambda;
                    rep.remainder = rem;
                    rep.reason = "specialization at " + lambda.to_string() +
                                 " is not divisible by (" + f.to_string() + ")";
                    return rep;
                }
                p = std::move(*q);
            }
        }
    }
    return rep;
}

Json to_json(const MembershipReport& report) {
    Json doc;
    doc["verdict"] = report.in ? "in" : "out";
    if (!report.in) {
        doc["arity"] = report.arity;
        if (report.lambda) doc["partition"] = report.lambda->parts;
        doc["remainder"] = to_json(report.remainder);
        doc["reason"] = report.reason;
    }
    return doc;
}

bool wheel_check(const ShuffleElem& R) {
    for (const auto& [n, comp] : R.components()) {
        if (n < 3) throw InvalidArgument("wheel conditions need arity >= 3");
        for (int third_q2 : {1, 0}) {
            Substitution s{n - 2, {}};
            s.images.push_back(image(0, 0, 0));
            s.images.push_back(image(0, 0, 1));
            s.images.push_back(third_q2 ? image(0, 1, 1) : image(0, -1, 0));
            for (int i = 3; i < n; ++i) s.images.push_back(image(i - 2, 0, 0));
            if (!comp.substitute(s).is_zero()) return false;
        }
    }
    return true;
}

namespace {

struct Blocks {
    Partition lambda;
    Partition t;              // transposed partition: block sizes
    std::vector<int> start;   // first variable of each block
    std::vector<int> group;   // group[a] = n_a for each x_a
};

Blocks make_blocks(const Partition& lambda) {
    Blocks b{lambda, lambda.transpose(), {}, lambda.parts};
    int s = 0;
    for (int ti : b.t.parts) {
        b.start.push_back(s);
        s += ti;
    }
    return b;
}

// Block i, slot j -> x_j q2^{n_j - i - 1} (0-based i, j).
Substitution good_assignment(const Blocks& b) {
    const int k = b.lambda.length();
    Substitution s{k, {}};
    for (std::size_t i = 0; i < b.t.parts.size(); ++i)
        for (int j = 0; j < b.t.parts[i]; ++j)
            s.images.push_back(image(j, 0, b.lambda.parts[j] - static_cast<int>(i) - 1));
    return s;
}

// prod_i F_{t_i}(block i) * prod_{i<j} prod zeta(z_a/z_b), as a RatExpr.
RatExpr generator_body(const Blocks& b) {
    const int n = b.lambda.size();
    const Laurent one = Laurent::constant(1, n);
    Laurent num = one;
    std::vector<Laurent> den;
    const int p = b.t.length();
    for (int i = 0; i < p; ++i) {
        const int lo = b.start[i], hi = lo + b.t.parts[i];
        for (int x = lo; x < hi; ++x)
            for (int y = lo; y < hi; ++y) num *= one - Laurent::ratio(x, y, 0, 1, n);
        for (int j = i + 1; j < p; ++j) {
            const int lo2 = b.start[j], hi2 = lo2 + b.t.parts[j];
            for (int x = lo; x < hi; ++x)
                for (int y = lo2; y < hi2; ++y) {
                    const RatExpr z = zeta(x, y, n);
                    num *= z.num();
                    den.push_back(z.den()[0]);
                }
        }
    }
    return RatExpr(std::move(num), std::move(den));
}

// Monomial symmetric function of the exponent vector over the given variables.
Laurent monomial_symmetric(std::vector<int> exps, int first_var, int n) {
    std::sort(exps.begin(), exps.end());
    Laurent out(n);
    do {
        Mono m;
        for (std::size_t j = 0; j < exps.size(); ++j) m.z(first_var + static_cast<int>(j)) = exps[j];
        out += Laurent::monomial(m, 1, n);
    } while (std::next_permutation(exps.begin(), exps.end()));
    return out;
}

// Degrees of a monomial in each group of equal parts, largest group index last.
std::vector<std::int64_t> group_degrees(const Mono& m, const Blocks& b) {
    std::vector<std::int64_t> deg(b.lambda.parts.front(), 0);
    for (int a = 0; a < b.lambda.length(); ++a) deg[b.group[a] - 1] += m.z(a);
    return deg;
}

std::vector<std::int64_t> top_measure(const Laurent& p, const Blocks& b) {
    std::vector<std::int64_t> best;
    for (const auto& [m, c] : p.terms()) best = std::max(best, group_degrees(m, b));
    return best;
}

// Polynomial rho, symmetric in each block, whose good specialization is A.
Laurent solve_block_symmetric(const Laurent& A, const Blocks& b) {
    const int n = b.lambda.size();
    const int k = b.lambda.length();
    const Substitution good = good_assignment(b);
    const std::size_t cap = 10 * std::max<std::size_t>(1, A.size());
    Laurent rho(n);
    Laurent rem = A;
    std::size_t iterations = 0;
    while (!rem.is_zero()) {
        if (++iterations > cap)
            throw NonTermination("block-symmetric correction exceeded " + std::to_string(cap) +
                                 " iterations at " + b.lambda.to_string());
        const auto top = top_measure(rem, b);
        for (const auto& [zm, coeff] : rem.by_z_monomial()) {
            if (group_degrees(zm, b) != top) continue;
            bool canonical = true;
            for (int a = 0; a + 1 < k; ++a)
                if (b.group[a] == b.group[a + 1] && zm.z(a) < zm.z(a + 1)) canonical = false;
            if (!canonical) continue;
            Laurent term = coeff.with_arity(n);
            for (std::size_t i = 0; i < b.t.parts.size(); ++i) {
                std::vector<int> exps(b.t.parts[i], 0);
                int slot = 0;
                for (int a = 0; a < k; ++a)
                    if (b.group[a] == static_cast<int>(i) + 1) exps[slot++] = zm.z(a);
                term *= monomial_symmetric(exps, b.start[i], n);
            }
            rho += term;
        }
        Laurent next = A - rho.substitute(good);
        if (!next.is_zero() && !(top_measure(next, b) < top))
            throw NonTermination("degree measure failed to decrease at " + b.lambda.to_string());
        rem = std::move(next);
    }
    return rho;
}

}  // namespace

Laurent reduction_piece(const Partition& lambda, const Laurent& rho) {
    const Blocks b = make_blocks(lambda);
    const int n = lambda.size();
    check_arity_cap(n, "reduction piece");
    const RatExpr body = generator_body(b);
    const RatExpr full(rho.with_arity(n) * body.num(), body.den());
    // labels[v] = block of variable v; iterate over distinct labelings
    std::vector<int> labels;
    for (int i = 0; i < b.t.length(); ++i) labels.insert(labels.end(), b.t.parts[i], i);
    std::vector<RatExpr> terms;
    do {
        std::vector<int> perm(n);
        std::vector<int> fill = b.start;
        for (int v = 0; v < n; ++v) perm[fill[labels[v]]++] = v;
        terms.push_back(full.relabeled(perm, n));
    } while (std::next_permutation(labels.begin(), labels.end()));
    return sum(terms).to_polynomial();
}

std::vector<ReductionStep> reduce_to_generators(const ShuffleElem& R) {
    const MembershipReport rep = is_in_S(R);
    if (!rep.in) throw NotInS(rep.reason, to_json(rep).dump());
    const ShuffleElem r = R.reduced();
    if (r.components().size() != 1) throw InvalidArgument("reduction needs a single arity");
    const int n = r.components().begin()->first;
    Laurent cur = r.components().begin()->second;
    std::vector<ReductionStep> steps;
    if (n == 0) {
        steps.push_back({Partition{}, cur});
        return steps;
    }
    for (const auto& lambda : partitions_desc(n)) {
        const Laurent p = phi(cur, lambda);
        if (p.is_zero()) continue;
        const Blocks b = make_blocks(lambda);
        const Substitution good = good_assignment(b);
        const Laurent C = generator_body(b).substitute(good).to_polynomial();
        const auto unit = try_exact_div(C, divisibility_kernel(lambda) * pi3(lambda));
        if (!unit || !unit->is_unit())
            throw InternalAssertion("generator specialization at " + lambda.to_string() +
                                    " differs from the divisibility kernel times pi3");
        auto A = try_exact_div(p, C);
        if (!A)
            throw InternalAssertion("specialization at " + lambda.to_string() +
                                    " is not divisible by the generator factor");
        // clear negative exponents with the block-1 product x_1 ... x_k (up to q2 powers)
        std::int64_t shift = 0;
        const Mono lo = A->min_exponents();
        for (int a = 0; a < lambda.length(); ++a) shift = std::max<std::int64_t>(shift, -lo.z(a));
        Mono e1;
        for (int j = 0; j < b.t.parts[0]; ++j) e1.z(b.start[0] + j) = 1;
        const Laurent e1_poly = Laurent::monomial(e1, 1, n);
        const Laurent lift = e1_poly.substitute(good).pow(static_cast<unsigned>(shift));
        Laurent rho = solve_block_symmetric(*A * lift, b);
        rho = rho.shifted(e1.scaled(static_cast<std::int32_t>(-shift)));
        const Laurent piece = reduction_piece(lambda, rho);
        if (!(phi(piece, lambda) == p))
            throw InternalAssertion("reduction piece does not match the specialization at " +
                                    lambda.to_string());
        cur -= piece;
        steps.push_back({lambda, std::move(rho)});
    }
    if (!cur.is_zero()) throw InternalAssertion("reduction left a nonzero remainder");
    return steps;
}

Json to_json(const std::vector<ReductionStep>& steps) {
    Json doc = Json::array();
    for (const auto& s : steps) doc.push_back({{"partition", s.lambda.parts}, {"rho", to_json(s.rho)}});
    return doc;
}

}  // namespace tshuf
