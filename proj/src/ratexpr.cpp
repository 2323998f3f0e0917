#include "tshuf/ratexpr.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tshuf/config.hpp"
#include "tshuf/serialize.hpp"

namespace tshuf {

NormalizedFactor normalize_factor(const Laurent& f) {
    if (f.is_zero()) throw InvalidArgument("zero denominator factor");
    const auto& [m, c] = f.leading();
    const int sign = c < 0 ? -1 : 1;
    Laurent unit = Laurent::monomial(m, sign, f.arity());
    Laurent key = f.shifted(-m);
    if (sign < 0) key = -key;
    return {std::move(unit), std::move(key)};
}

RatExpr::RatExpr(Laurent num, std::vector<Laurent> den) : num_(std::move(num)), den_(std::move(den)) {
    int ar = num_.arity();
    for (const auto& f : den_) {
        if (f.is_zero()) throw InvalidArgument("zero denominator factor");
        ar = std::max(ar, f.arity());
    }
    if (num_.arity() != ar) num_ = num_.with_arity(ar);
}

RatExpr RatExpr::operator-() const { return RatExpr(-num_, den_); }

RatExpr operator*(const RatExpr& a, const RatExpr& b) {
    std::vector<Laurent> den = a.den_;
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    return RatExpr(a.num_ * b.num_, std::move(den));
}

RatExpr operator+(const RatExpr& a, const RatExpr& b) {
    const RatExpr terms[] = {a, b};
    return sum(terms);
}

RatExpr operator-(const RatExpr& a, const RatExpr& b) { return a + (-b); }

bool RatExpr::equals(const RatExpr& o) const {
    Laurent lhs = num_;
    for (const auto& f : o.den_) lhs *= f;
    Laurent rhs = o.num_;
    for (const auto& f : den_) rhs *= f;
    return lhs == rhs;
}

namespace {

Laurent substitute_any(const Laurent& p, const Substitution& s) {
    if (p.arity() == 0) return p.with_arity(s.target_arity);
    return p.substitute(s);
}

}  // namespace

RatExpr RatExpr::substitute(const Substitution& s) const {
    std::vector<Laurent> den;
    den.reserve(den_.size());
    for (const auto& f : den_) {
        Laurent g = substitute_any(f, s);
        if (g.is_zero())
            throw InvalidArgument("denominator factor (" + f.to_string() +
                                  ") vanishes under the substitution");
        den.push_back(std::move(g));
    }
    return RatExpr(substitute_any(num_, s), std::move(den));
}

RatExpr RatExpr::relabeled(std::span<const int> perm, int target_arity) const {
    return substitute(permutation_substitution(perm, target_arity));
}

RatExpr RatExpr::with_arity(int arity) const {
    std::vector<Laurent> den;
    for (const auto& f : den_) den.push_back(f.arity() == 0 ? f : f.with_arity(arity));
    return RatExpr(num_.with_arity(arity), std::move(den));
}

Laurent RatExpr::to_polynomial() const {
    std::vector<std::size_t> order(den_.size());
    std::iota(order.begin(), order.end(), 0);
    return to_polynomial(order);
}

Laurent RatExpr::to_polynomial(std::span<const std::size_t> order) const {
    Laurent acc = num_;
    for (std::size_t idx : order) {
        const auto nf = normalize_factor(den_.at(idx));
        acc *= nf.unit.unit_inverse();
        auto q = try_exact_div(acc, nf.key);
        if (!q)
            throw NotPolynomial("denominator factor (" + den_[idx].to_string() +
                                    ") does not clear",
                                to_json(den_[idx]).dump());
        acc = std::move(*q);
    }
    return acc;
}

CommonDenominator common_denominator(std::span<const std::vector<Laurent>> dens, int arity) {
    struct Class {
        Laurent key;
        int mult = 0;
    };
    std::vector<Class> classes;
    std::vector<Laurent> units;
    std::vector<std::vector<int>> counts;
    for (const auto& list : dens) {
        Laurent unit = Laurent::constant(1, arity);
        std::vector<int> local;
        for (const auto& f : list) {
            auto nf = normalize_factor(f.arity() == 0 ? f : f.with_arity(arity));
            unit *= nf.unit;
            auto it = std::find_if(classes.begin(), classes.end(),
                                   [&](const Class& c) { return c.key == nf.key; });
            const auto idx = static_cast<std::size_t>(it - classes.begin());
            if (it == classes.end()) classes.push_back({std::move(nf.key), 0});
            if (local.size() <= idx) local.resize(idx + 1, 0);
            ++local[idx];
        }
        units.push_back(std::move(unit));
        counts.push_back(std::move(local));
    }
    for (auto& local : counts) {
        local.resize(classes.size(), 0);
        for (std::size_t i = 0; i < classes.size(); ++i)
            classes[i].mult = std::max(classes[i].mult, local[i]);
    }
    CommonDenominator out;
    for (std::size_t k = 0; k < dens.size(); ++k) {
        Laurent m = units[k].unit_inverse();
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (int r = counts[k][i]; r < classes[i].mult; ++r) m *= classes[i].key;
        out.multipliers.push_back(std::move(m));
    }
    for (const auto& c : classes)
        for (int r = 0; r < c.mult; ++r) out.den.push_back(c.key);
    return out;
}

RatExpr sum(std::span<const RatExpr> terms) {
    int ar = 0;
    for (const auto& t : terms) ar = std::max(ar, t.arity());
    std::vector<std::vector<Laurent>> dens;
    dens.reserve(terms.size());
    for (const auto& t : terms) dens.push_back(t.den());
    auto cd = common_denominator(dens, ar);
    Laurent total(ar);
    for (std::size_t k = 0; k < terms.size(); ++k)
        total += terms[k].num().with_arity(ar) * cd.multipliers[k];
    return RatExpr(std::move(total), std::move(cd.den));
}

Region Region::descending(int arity) {
    Region r;
    r.order.resize(arity);
    std::iota(r.order.begin(), r.order.end(), 0);
    return r;
}

Region Region::ascending(int arity) {
    Region r = descending(arity);
    std::reverse(r.order.begin(), r.order.end());
    return r;
}

Magnitude classify(const Mono& m, int arity, const Region& region) {
    if (m.z_free(arity)) return Magnitude::unit;
    if (m.z_degree(arity) != 0) return Magnitude::incomparable;
    bool any_pos = false, any_neg = false;
    std::int64_t tail = 0;
    for (int k = static_cast<int>(region.order.size()) - 1; k >= 1; --k) {
        tail += m.z(region.order[k]);
        any_pos |= tail > 0;
        any_neg |= tail < 0;
    }
    if (any_pos && !any_neg) return Magnitude::small;
    if (any_neg && !any_pos) return Magnitude::large;
    return Magnitude::incomparable;
}

Laurent geom_expand(const Laurent& factor, int order, const Region& region) {
    const int n = factor.arity();
    if (order < 0) throw InvalidArgument("negative truncation order");
    std::vector<Laurent::Term> zfree, zdep;
    for (const auto& t : factor.terms()) (t.first.z_free(n) ? zfree : zdep).push_back(t);
    if (zfree.size() != 1 || zdep.size() > 1)
        throw InvalidArgument("geom_expand expects a factor c*(1 - m): " + factor.to_string());
    const Laurent c = Laurent::monomial(zfree[0].first, zfree[0].second, n);
    if (!c.is_unit()) throw InvalidArgument("leading scalar of the factor is not a unit");
    const Laurent cinv = c.unit_inverse();
    if (zdep.empty()) return cinv;
    const Laurent m = -(Laurent::monomial(zdep[0].first, zdep[0].second, n) * cinv);
    if (!m.is_unit() || classify(m.leading().first, n, region) != Magnitude::small)
        throw RegionViolation("(" + m.to_string() + ") is not small in the declared region");
    Laurent acc = Laurent::constant(1, n);
    Laurent power = acc;
    for (int s = 1; s <= order; ++s) {
        power *= m;
        acc += power;
    }
    return cinv * acc;
}

namespace {

using YVec = std::array<std::int32_t, kMaxArity>;

struct SeriesFactor {
    int sign;
    Mono qpart;
    YVec step;
};

// Ratio coordinates y_k = z_{order[k]} / z_{order[k-1]} for a degree-0 monomial.
YVec to_ratio_coords(const Mono& m, const Region& region) {
    YVec y{};
    std::int32_t tail = 0;
    for (int k = static_cast<int>(region.order.size()) - 1; k >= 1; --k) {
        tail += m.z(region.order[k]);
        y[k - 1] = tail;
    }
    return y;
}

Mono q_part(const Mono& m) {
    Mono r;
    r.q1() = m.q1();
    r.q2() = m.q2();
    return r;
}

}  // namespace

ConstantTerm ordered_constant_term(const Laurent& num, std::span<const Laurent> den,
                                   const Region& region) {
    int n = num.arity();
    for (const auto& f : den) n = std::max(n, f.arity());
    if (static_cast<int>(region.order.size()) != n)
        throw InvalidArgument("region does not cover all variables");

    ConstantTerm out;
    Laurent pre = num.with_arity(n);
    std::vector<SeriesFactor> series_factors;
    for (const auto& f0 : den) {
        const Laurent f = f0.with_arity(n);
        if (f.is_zero()) throw InvalidArgument("zero denominator factor");
        if (f.is_constant()) {
            out.scalar_den.push_back(f.with_arity(0));
            continue;
        }
        if (f.size() == 1) {  // a bare monomial is a unit
            pre = pre * f.unit_inverse();
            continue;
        }
        if (f.size() != 2 || abs(f.terms()[0].second) != abs(f.terms()[1].second))
            throw InvalidArgument("non-binomial denominator factor " + f.to_string());
        const auto& [m1, c1] = f.terms()[0];
        const auto& [m2, c2] = f.terms()[1];
        const int vs = (sgn(c1) == sgn(c2)) ? -1 : 1;
        const Mono v = m2 - m1;
        switch (classify(v, n, region)) {
            case Magnitude::unit: {
                Mono zpart = m1;
                zpart.q1() = 0;
                zpart.q2() = 0;
                out.scalar_den.push_back(f.shifted(-zpart).with_arity(0));
                pre = pre.shifted(-zpart);
                break;
            }
            case Magnitude::small: {
                pre = pre.shifted(-m1);
                if (c1 < 0) pre = -pre;
                series_factors.push_back({vs, q_part(v), to_ratio_coords(v, region)});
                break;
            }
            case Magnitude::large: {
                pre = pre.shifted(-m2);
                if (c2 < 0) pre = -pre;
                series_factors.push_back({vs, q_part(-v), to_ratio_coords(-v, region)});
                break;
            }
            case Magnitude::incomparable:
                throw RegionViolation("factor " + f.to_string() +
                                      " has no expansion in the declared region");
        }
    }

    // Numerator terms that can meet a power-series term in total degree 0.
    struct Contrib {
        YVec need;
        Laurent coeff;
    };
    std::vector<Contrib> contribs;
    YVec caps{};
    for (const auto& [m, c] : pre.terms()) {
        if (m.z_degree(n) != 0) continue;
        YVec y = to_ratio_coords(m, region);
        bool ok = true;
        for (int k = 0; k + 1 < n; ++k) {
            if (y[k] > 0) ok = false;
            y[k] = -y[k];
        }
        if (!ok) continue;
        for (int k = 0; k + 1 < n; ++k) caps[k] = std::max(caps[k], y[k]);
        contribs.push_back({y, Laurent::monomial(q_part(m), c, 0)});
    }
    if (contribs.empty()) {
        out.value = Laurent(0);
        return out;
    }
    std::int64_t span = 0;
    for (int k = 0; k + 1 < n; ++k) span += caps[k];
    const int configured = settings().trunc_bound.load();
    const std::int64_t bound = configured > 0 ? configured : span + 2;

    auto total = [&](const YVec& y) {
        std::int64_t s = 0;
        for (int k = 0; k + 1 < n; ++k) s += y[k];
        return s;
    };
    std::map<YVec, Laurent> series;
    series.emplace(YVec{}, Laurent::constant(1, 0));
    for (const auto& sf : series_factors) {
        std::map<YVec, Laurent> next;
        const Laurent step = Laurent::monomial(sf.qpart, sf.sign, 0);
        for (const auto& [e, c] : series) {
            YVec cur = e;
            Laurent pw = c;
            while (true) {
                bool inside = total(cur) <= bound + 1;
                for (int k = 0; k + 1 < n && inside; ++k) inside = cur[k] <= caps[k];
                if (!inside) break;
                auto [it, fresh] = next.try_emplace(cur, Laurent(0));
                it->second += pw;
                for (int k = 0; k + 1 < n; ++k) cur[k] += sf.step[k];
                pw = pw * step;
            }
        }
        series = std::move(next);
    }

    Laurent at_bound(0), at_next(0);
    for (const auto& c : contribs) {
        auto it = series.find(c.need);
        if (it == series.end()) continue;
        Laurent term = c.coeff * it->second;
        if (total(c.need) <= bound) at_bound += term;
        at_next += term;
    }
    if (!(at_bound == at_next))
        throw TruncationUnstable("constant term changes between truncation bounds " +
                                 std::to_string(bound) + " and " + std::to_string(bound + 1));
    out.value = std::move(at_bound);
    return out;
}

}  // namespace tshuf
