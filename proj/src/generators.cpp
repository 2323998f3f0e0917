#include "tshuf/generators.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <tuple>

#include "tshuf/config.hpp"

namespace tshuf {

int SlopePoint::t() const { return d == 0 ? n : std::gcd(n, d); }
int SlopePoint::a() const { return n / t(); }

SlopePoint slope_point(int n, int d) {
    if (n < 1) throw InvalidArgument("slope point needs n >= 1");
    return SlopePoint{n, d};
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Laurent one_n(int n) { return Laurent::constant(1, n); }

// q1^a q2^b as a coefficient
Laurent qm(int a, int b) { return Laurent::q_mono(a, b); }

// exponents (q1, q2) of q_flavor
std::pair<int, int> q_exponents(LadderQ q) {
    switch (q) {
        case LadderQ::q1: return {1, 0};
        case LadderQ::q2: return {0, 1};
        case LadderQ::q3: return {-1, -1};
    }
    return {0, 0};
}

Laurent q_pow(LadderQ q, int k) {
    auto [a, b] = q_exponents(q);
    return qm(a * k, b * k);
}

Laurent ladder_monomial(const SlopePoint& p) {
    const auto e = exponent_ladder(p);
    Mono m;
    for (int i = 0; i < p.n; ++i) m.z(i) = e[i];
    return Laurent::monomial(m, 1, p.n);
}

// z_{i+1} / (z_i q) for 0-based i, as a Laurent monomial in arity n
Laurent step_ratio(int i, LadderQ q, int n) {
    auto [a, b] = q_exponents(q);
    return Laurent::ratio(i + 1, i, -a, -b, n);
}

std::vector<Laurent> ladder_den(int n, LadderQ q) {
    std::vector<Laurent> den;
    for (int i = 0; i + 1 < n; ++i) den.push_back(one_n(n) - step_ratio(i, q, n));
    return den;
}

Kernel make_kernel(int n, Laurent num, std::vector<Laurent> den, CoeffPoly scale_num,
                   std::vector<CoeffPoly> scale_den) {
    check_arity_cap(n, "generator");
    Kernel k;
    k.arity = n;
    k.body = RatExpr(std::move(num), std::move(den));
    k.scale_num = std::move(scale_num);
    k.scale_den = std::move(scale_den);
    return k;
}

Laurent minus_one_pow(const Laurent& x, int n) { return (x - Laurent::constant(1)).pow(n); }

}  // namespace

std::vector<int> exponent_ladder(const SlopePoint& p) {
    std::vector<int> e(p.n);
    for (int i = 1; i <= p.n; ++i)
        e[i - 1] = static_cast<int>(floor_div(static_cast<std::int64_t>(i) * p.d, p.n) -
                                    floor_div(static_cast<std::int64_t>(i - 1) * p.d, p.n));
    return e;
}

ScalarFraction gamma(const SlopePoint& p) {
    const int n = p.n, t = p.t();
    ScalarFraction g;
    g.num = minus_one_pow(q_pow(LadderQ::q2, t), 1) * minus_one_pow(qm(1, 0), n) *
            minus_one_pow(qm(-1, -1), n);
    g.den = {q_pow(LadderQ::q1, t) - Laurent::constant(1), q_pow(LadderQ::q3, t) - Laurent::constant(1)};
    return g;
}

Kernel kernel_P(const SlopePoint& p, LadderQ flavor) {
    const int n = p.n, t = p.t(), a = p.a();
    // sum_{s=0}^{t-1} prod_{r=1}^{s} z_{a(t-r)+1} / (q z_{a(t-r)})
    Laurent sum_part(n), term = one_n(n);
    for (int s = 0; s < t; ++s) {
        if (s > 0) term *= step_ratio(a * (t - s) - 1, flavor, n);
        sum_part += term;
    }
    Laurent num = ladder_monomial(p) * sum_part;
    CoeffPoly scale = Laurent::constant(1);
    std::vector<CoeffPoly> sden;
    if (flavor != LadderQ::q2) {
        // (q^t - 1)(q2 - 1)^n / ((q - 1)^n (q2^t - 1))
        scale = minus_one_pow(q_pow(flavor, t), 1) * minus_one_pow(qm(0, 1), n);
        for (int i = 0; i < n; ++i) sden.push_back(q_pow(flavor, 1) - Laurent::constant(1));
        sden.push_back(q_pow(LadderQ::q2, t) - Laurent::constant(1));
    }
    return make_kernel(n, std::move(num), ladder_den(n, flavor), std::move(scale), std::move(sden));
}

Kernel kernel_Pbar(const SlopePoint& p) {
    Kernel k = kernel_P(p);
    const ScalarFraction g = gamma(p);
    k.scale_num = k.scale_num * g.num;
    k.scale_den.insert(k.scale_den.end(), g.den.begin(), g.den.end());
    return k;
}

Kernel kernel_H(const SlopePoint& p) {
    return make_kernel(p.n, ladder_monomial(p), ladder_den(p.n, LadderQ::q2), Laurent::constant(1), {});
}

Kernel kernel_Hbar(const SlopePoint& p, HbarVia via) {
    const int n = p.n, t = p.t(), a = p.a();
    // end1: q = q1 in the scalars, ladder in q3; end2 swaps q1 and q3
    const LadderQ qs = via == HbarVia::end1 ? LadderQ::q1 : LadderQ::q3;
    const LadderQ ql = via == HbarVia::end1 ? LadderQ::q3 : LadderQ::q1;
    Laurent num = ladder_monomial(p);
    for (int s = 1; s < t; ++s) num *= q_pow(qs, s).with_arity(n) - step_ratio(a * s - 1, ql, n);
    CoeffPoly scale = minus_one_pow(q_pow(qs, 1), n) * minus_one_pow(qm(0, 1), n);
    std::vector<CoeffPoly> sden;
    for (int s = 1; s <= t; ++s) sden.push_back(q_pow(qs, s) - Laurent::constant(1));
    return make_kernel(n, std::move(num), ladder_den(n, ql), std::move(scale), std::move(sden));
}

Kernel kernel_Hbar_prime(const SlopePoint& p) {
    const int n = p.n;
    return make_kernel(n, ladder_monomial(p), ladder_den(n, LadderQ::q3),
                       minus_one_pow(qm(1, 0), n) * minus_one_pow(qm(0, 1), n), {});
}

Kernel kernel_Sprime(const SlopePoint& p, const std::vector<int>& eps) {
    const int n = p.n, t = p.t(), a = p.a();
    if (static_cast<int>(eps.size()) != t - 1)
        throw InvalidArgument("ribbon sequence has length " + std::to_string(eps.size()) +
                              ", expected " + std::to_string(t - 1));
    Laurent num = ladder_monomial(p);
    for (int s = 1; s < t; ++s) {
        if (eps[s - 1] != 0 && eps[s - 1] != 1) throw InvalidArgument("ribbon entries are 0 or 1");
        if (eps[s - 1] == 1) num *= -step_ratio(a * s - 1, LadderQ::q3, n);
    }
    return make_kernel(n, std::move(num), ladder_den(n, LadderQ::q3),
                       minus_one_pow(qm(1, 0), n) * minus_one_pow(qm(0, 1), n), {});
}

namespace {

enum class Family { P, Pbar, P1, P3, H, Hbar1, Hbar2, HbarPrime, Sprime };

using CacheKey = std::tuple<int, int, int, std::vector<int>>;

class GeneratorCache {
public:
    template <class Make>
    ShuffleElem get(const CacheKey& key, Make make) {
        {
            std::shared_lock lock(mutex_);
            auto it = values_.find(key);
            if (it != values_.end()) return it->second;
        }
        ShuffleElem v = make();
        std::unique_lock lock(mutex_);
        return values_.emplace(key, std::move(v)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<CacheKey, ShuffleElem> values_;
};

GeneratorCache& cache() {
    static GeneratorCache c;
    return c;
}

ShuffleElem cached(Family f, const SlopePoint& p, const std::vector<int>& eps, const Kernel& k) {
    return cache().get(CacheKey{static_cast<int>(f), p.n, p.d, eps}, [&] { return kernel_value(k); });
}

}  // namespace

ShuffleElem gen_P(const SlopePoint& p) { return cached(Family::P, p, {}, kernel_P(p)); }
ShuffleElem gen_Pbar(const SlopePoint& p) { return cached(Family::Pbar, p, {}, kernel_Pbar(p)); }

ShuffleElem gen_P_alt(const SlopePoint& p, LadderQ flavor) {
    switch (flavor) {
        case LadderQ::q1: return cached(Family::P1, p, {}, kernel_P(p, flavor));
        case LadderQ::q3: return cached(Family::P3, p, {}, kernel_P(p, flavor));
        case LadderQ::q2: break;
    }
    return gen_P(p);
}

ShuffleElem gen_H(const SlopePoint& p) { return cached(Family::H, p, {}, kernel_H(p)); }

ShuffleElem gen_Hbar(const SlopePoint& p, HbarVia via) {
    const Family f = via == HbarVia::end1 ? Family::Hbar1 : Family::Hbar2;
    return cached(f, p, {}, kernel_Hbar(p, via));
}

ShuffleElem gen_Hbar_prime(const SlopePoint& p) {
    return cached(Family::HbarPrime, p, {}, kernel_Hbar_prime(p));
}

ShuffleElem gen_Sprime(const SlopePoint& p, const std::vector<int>& eps) {
    return cached(Family::Sprime, p, eps, kernel_Sprime(p, eps));
}

std::vector<int> parse_ribbon(const std::string& bits) {
    std::vector<int> out;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InvalidArgument("ribbon string must consist of 0 and 1");
        out.push_back(c - '0');
    }
    return out;
}

Int z_lambda(const Partition& lambda) {
    Int z = 1;
    std::map<int, int> mult;
    for (int t : lambda.parts) {
        z *= t;
        ++mult[t];
    }
    for (const auto& [u, m] : mult)
        for (int i = 2; i <= m; ++i) z *= i;
    return z;
}

std::vector<SeriesTerm> h_in_p(int t) {
    std::vector<SeriesTerm> out;
    for (const auto& lambda : partitions_desc(t)) {
        mpq_class c(Int(1), z_lambda(lambda));
        c.canonicalize();
        out.push_back({c, lambda});
    }
    return out;
}

std::vector<SeriesTerm> p_in_h(int t) {
    std::vector<SeriesTerm> out;
    for (const auto& lambda : partitions_desc(t)) {
        const int l = lambda.length();
        Int num = t;
        for (int i = 2; i < l; ++i) num *= i;
        if ((l - 1) % 2) num = -num;
        std::map<int, int> mult;
        for (int p : lambda.parts) ++mult[p];
        Int den = 1;
        for (const auto& [u, m] : mult)
            for (int i = 2; i <= m; ++i) den *= i;
        mpq_class c(num, den);
        c.canonicalize();
        out.push_back({c, lambda});
    }
    return out;
}

std::vector<SeriesRow> series_convert(int n, int d, int tmax, SeriesDirection dir, bool barred) {
    if (std::gcd(n, d) != 1) throw InvalidArgument("series_convert needs a coprime slope");
    check_arity_cap(n * tmax, "series_convert");
    auto P = [&](int t) { return barred ? gen_Pbar(slope_point(n * t, d * t)) : gen_P(slope_point(n * t, d * t)); };
    auto H = [&](int t) { return barred ? gen_Hbar(slope_point(n * t, d * t)) : gen_H(slope_point(n * t, d * t)); };
    std::vector<SeriesRow> rows;
    for (int t = 1; t <= tmax; ++t) {
        SeriesRow row;
        row.t = t;
        const bool to_h = dir == SeriesDirection::p_to_h;
        row.expected = to_h ? H(t) : P(t);
        const auto terms = to_h ? h_in_p(t) : p_in_h(t);
        for (const auto& term : terms) {
            ShuffleElem prod = ShuffleElem::unit();
            for (int part : term.lambda.parts) prod = shuffle_mul(prod, to_h ? P(part) : H(part));
            ShuffleElem scaled = prod.scaled(Laurent::constant(term.coeff.get_num()));
            if (term.coeff.get_den() != 1) scaled = scaled.divided(Laurent::constant(term.coeff.get_den()));
            row.combined = row.combined + scaled;
        }
        row.combined = row.combined.reduced();
        row.equal = row.combined == row.expected;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace tshuf
