#include "tshuf/laurent.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "tshuf/serialize.hpp"

namespace tshuf {

bool Mono::is_one() const {
    return std::all_of(e.begin(), e.end(), [](std::int32_t x) { return x == 0; });
}

bool Mono::z_free(int arity) const {
    for (int i = 0; i < arity; ++i)
        if (z(i) != 0) return false;
    return true;
}

std::int64_t Mono::z_degree(int arity) const {
    std::int64_t d = 0;
    for (int i = 0; i < arity; ++i) d += z(i);
    return d;
}

Mono& Mono::operator+=(const Mono& o) {
    for (int i = 0; i < kMaxVars; ++i) e[i] += o.e[i];
    return *this;
}

Mono& Mono::operator-=(const Mono& o) {
    for (int i = 0; i < kMaxVars; ++i) e[i] -= o.e[i];
    return *this;
}

Mono Mono::operator-() const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = -e[i];
    return r;
}

Mono Mono::scaled(std::int32_t k) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = e[i] * k;
    return r;
}

std::size_t MonoHash::operator()(const Mono& m) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : m.e) {
        h ^= static_cast<std::uint32_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

namespace {

using Accumulator = std::unordered_map<Mono, Int, MonoHash>;

std::vector<Laurent::Term> drain(Accumulator& acc) {
    std::vector<Laurent::Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.emplace_back(m, std::move(c));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

void check_arity(int arity) {
    if (arity < 0 || arity > kMaxArity)
        throw ArityCapExceeded("arity " + std::to_string(arity) + " exceeds the hard limit " +
                               std::to_string(kMaxArity));
}

}  // namespace

Laurent::Laurent(int arity) : arity_(arity) { check_arity(arity); }

Laurent Laurent::constant(const Int& c, int arity) {
    Laurent r(arity);
    if (c != 0) r.terms_.emplace_back(Mono{}, c);
    return r;
}

Laurent Laurent::monomial(const Mono& m, const Int& c, int arity) {
    Laurent r(arity);
    if (c != 0) r.terms_.emplace_back(m, c);
    return r;
}

Laurent Laurent::from_terms(int arity, std::vector<Term> terms) {
    Laurent r(arity);
    r.terms_ = std::move(terms);
    r.canonicalize();
    return r;
}

void Laurent::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
        if (out.back().second == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

Laurent Laurent::q1_pow(int k, int arity) { return q_mono(k, 0, 1, arity); }
Laurent Laurent::q2_pow(int k, int arity) { return q_mono(0, k, 1, arity); }
Laurent Laurent::q3_pow(int k, int arity) { return q_mono(-k, -k, 1, arity); }

Laurent Laurent::q_mono(int a, int b, const Int& c, int arity) {
    Mono m;
    m.q1() = a;
    m.q2() = b;
    return monomial(m, c, arity);
}

Laurent Laurent::z_pow(int i, int k, int arity) {
    Mono m;
    m.z(i) = k;
    return monomial(m, 1, arity);
}

Laurent Laurent::ratio(int i, int j, int a, int b, int arity, const Int& c) {
    Mono m;
    m.q1() = a;
    m.q2() = b;
    m.z(i) += 1;
    m.z(j) -= 1;
    return monomial(m, c, arity);
}

bool Laurent::is_one() const {
    return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

bool Laurent::is_constant() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.first.z_free(arity_); });
}

bool Laurent::is_unit() const {
    return terms_.size() == 1 && (terms_[0].second == 1 || terms_[0].second == -1);
}

int common_arity(const Laurent& a, const Laurent& b) {
    if (a.arity() == b.arity()) return a.arity();
    if (a.arity() == 0 && a.is_constant()) return b.arity();
    if (b.arity() == 0 && b.is_constant()) return a.arity();
    throw ArityMismatch("arities " + std::to_string(a.arity()) + " and " +
                        std::to_string(b.arity()));
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    const int ar = common_arity(*this, o);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
        if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
            out.push_back(std::move(*i++));
        } else if (i == terms_.end() || j->first < i->first) {
            out.push_back(*j++);
        } else {
            Int c = i->second + j->second;
            if (c != 0) out.emplace_back(i->first, std::move(c));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    arity_ = ar;
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
    const int ar = common_arity(a, b);
    if (a.is_zero() || b.is_zero()) return Laurent(ar);
    if (a.size() == 1 || b.size() == 1) {
        const auto& single = a.size() == 1 ? a : b;
        const auto& other = a.size() == 1 ? b : a;
        const auto& [m, c] = single.terms_[0];
        Laurent r(ar);
        r.terms_.reserve(other.size());
        for (const auto& [m2, c2] : other.terms_) r.terms_.emplace_back(m + m2, c * c2);
        return r;  // shifting by a monomial preserves order
    }
    Accumulator acc;
    acc.reserve(a.size() * b.size());
    Int prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            mpz_mul(prod.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            acc[ma + mb] += prod;
        }
    }
    Laurent r(ar);
    r.terms_ = drain(acc);
    return r;
}

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

bool operator==(const Laurent& a, const Laurent& b) {
    if (a.terms_ != b.terms_) return false;
    return a.arity_ == b.arity_ || a.is_constant();
}

Laurent Laurent::pow(unsigned k) const {
    Laurent result = constant(1, arity_);
    Laurent base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

Laurent Laurent::scaled(const Int& c) const {
    if (c == 0) return Laurent(arity_);
    Laurent r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

Laurent Laurent::shifted(const Mono& m) const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.first += m;
    return r;
}

Laurent Laurent::unit_inverse() const {
    if (!is_unit()) throw NotDivisible("inverse of a non-unit " + to_string());
    return monomial(-terms_[0].first, terms_[0].second, arity_);
}

Laurent Laurent::with_arity(int arity) const {
    if (arity == arity_) return *this;
    if (arity < arity_) {
        for (const auto& t : terms_)
            for (int i = arity; i < arity_; ++i)
                if (t.first.z(i) != 0)
                    throw ArityMismatch("cannot drop variables that occur in " + to_string());
    }
    Laurent r(arity);
    r.terms_ = terms_;
    return r;
}

Laurent Laurent::relabeled(std::span<const int> perm, int target_arity) const {
    Laurent r(target_arity);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Mono nm;
        nm.q1() = m.q1();
        nm.q2() = m.q2();
        for (int i = 0; i < arity_; ++i) nm.z(perm[i]) += m.z(i);
        r.terms_.emplace_back(nm, c);
    }
    r.canonicalize();
    return r;
}

Laurent Laurent::substitute(const Substitution& s) const {
    if (static_cast<int>(s.images.size()) != arity_)
        throw ArityMismatch("substitution covers " + std::to_string(s.images.size()) +
                            " variables, polynomial has " + std::to_string(arity_));
    Accumulator acc;
    acc.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Mono nm;
        nm.q1() = m.q1();
        nm.q2() = m.q2();
        int sign = 1;
        for (int i = 0; i < arity_; ++i) {
            const int k = m.z(i);
            if (k == 0) continue;
            nm += s.images[i].mono.scaled(k);
            if (s.images[i].sign < 0 && (k % 2 != 0)) sign = -sign;
        }
        if (sign > 0)
            acc[nm] += c;
        else
            acc[nm] -= c;
    }
    Laurent r(s.target_arity);
    r.terms_ = drain(acc);
    return r;
}

Laurent Laurent::inverted_z() const {
    Laurent r(arity_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        Mono nm = m;
        for (int i = 0; i < arity_; ++i) nm.z(i) = -nm.z(i);
        r.terms_.emplace_back(nm, c);
    }
    r.canonicalize();
    return r;
}

bool Laurent::is_symmetric() const {
    std::vector<int> perm(arity_);
    for (int k = 0; k + 1 < arity_; ++k) {
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[k], perm[k + 1]);
        if (!(relabeled(perm, arity_) == *this)) return false;
    }
    return true;
}

std::optional<std::int64_t> Laurent::z_degree() const {
    if (terms_.empty()) return std::nullopt;
    const auto d = terms_.front().first.z_degree(arity_);
    for (const auto& t : terms_)
        if (t.first.z_degree(arity_) != d) return std::nullopt;
    return d;
}

Mono Laurent::min_exponents() const {
    Mono r;
    if (terms_.empty()) return r;
    r = terms_.front().first;
    for (const auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::min(r.e[i], t.first.e[i]);
    return r;
}

Mono Laurent::max_exponents() const {
    Mono r;
    if (terms_.empty()) return r;
    r = terms_.front().first;
    for (const auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(r.e[i], t.first.e[i]);
    return r;
}

std::vector<std::pair<Mono, Laurent>> Laurent::by_z_monomial() const {
    std::map<Mono, std::vector<Term>> groups;
    for (const auto& [m, c] : terms_) {
        Mono zpart = m;
        zpart.q1() = 0;
        zpart.q2() = 0;
        Mono qpart;
        qpart.q1() = m.q1();
        qpart.q2() = m.q2();
        groups[zpart].emplace_back(qpart, c);
    }
    std::vector<std::pair<Mono, Laurent>> out;
    out.reserve(groups.size());
    for (auto& [z, ts] : groups) out.emplace_back(z, Laurent::from_terms(0, std::move(ts)));
    return out;
}

std::string Laurent::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const Int a = abs(c);
        const bool bare = m.is_one();
        if (a != 1 || bare) os << a;
        bool need_star = (a != 1 || bare);
        auto var = [&](const char* name, int idx, std::int32_t k) {
            if (k == 0) return;
            if (need_star) os << "*";
            os << name;
            if (idx >= 0) os << idx;
            if (k != 1) os << "^" << k;
            need_star = true;
        };
        var("q1", -1, m.q1());
        var("q2", -1, m.q2());
        for (int i = 0; i < arity_; ++i) var("z", i + 1, m.z(i));
    }
    return os.str();
}

std::optional<Laurent> try_exact_div(const Laurent& p, const Laurent& q, Laurent* remainder) {
    const int ar = common_arity(p, q);
    if (q.is_zero()) throw InvalidArgument("division by the zero polynomial");
    if (p.is_zero()) return Laurent(ar);
    if (q.size() == 1) {
        const auto& [m, c] = q.terms()[0];
        std::vector<Laurent::Term> out;
        out.reserve(p.size());
        for (const auto& [pm, pc] : p.terms()) {
            if (!mpz_divisible_p(pc.get_mpz_t(), c.get_mpz_t())) {
                if (remainder) *remainder = p;
                return std::nullopt;
            }
            Int qc;
            mpz_divexact(qc.get_mpz_t(), pc.get_mpz_t(), c.get_mpz_t());
            out.emplace_back(pm - m, std::move(qc));
        }
        return Laurent::from_terms(ar, std::move(out));
    }

    // Lexicographic long division. In an integral domain the lowest and
    // highest exponent in each variable are additive, which bounds the
    // quotient's support to a box and guarantees termination.
    const Mono lo = p.min_exponents() - q.min_exponents();
    const Mono hi = p.max_exponents() - q.max_exponents();
    for (int i = 0; i < kMaxVars; ++i) {
        if (lo.e[i] > hi.e[i]) {
            if (remainder) *remainder = p;
            return std::nullopt;
        }
    }

    std::map<Mono, Int> rem;
    for (const auto& t : p.terms()) rem.emplace_hint(rem.end(), t.first, t.second);
    const auto& [lead_m, lead_c] = q.leading();
    std::vector<Laurent::Term> quot;
    Int qc, prod;
    auto fail = [&]() -> std::optional<Laurent> {
        if (remainder) {
            std::vector<Laurent::Term> ts(rem.begin(), rem.end());
            *remainder = Laurent::from_terms(ar, std::move(ts));
        }
        return std::nullopt;
    };
    while (!rem.empty()) {
        auto it = std::prev(rem.end());
        const Mono qm = it->first - lead_m;
        for (int i = 0; i < kMaxVars; ++i)
            if (qm.e[i] < lo.e[i] || qm.e[i] > hi.e[i]) return fail();
        if (!mpz_divisible_p(it->second.get_mpz_t(), lead_c.get_mpz_t())) return fail();
        mpz_divexact(qc.get_mpz_t(), it->second.get_mpz_t(), lead_c.get_mpz_t());
        rem.erase(it);
        const auto& qt = q.terms();
        for (std::size_t k = 0; k + 1 < qt.size(); ++k) {
            mpz_mul(prod.get_mpz_t(), qc.get_mpz_t(), qt[k].second.get_mpz_t());
            auto [pos, inserted] = rem.try_emplace(qt[k].first + qm);
            pos->second -= prod;
            if (pos->second == 0) rem.erase(pos);
        }
        quot.emplace_back(qm, qc);
    }
    return Laurent::from_terms(ar, std::move(quot));
}

Laurent exact_div(const Laurent& p, const Laurent& q) {
    Laurent remainder;
    if (auto r = try_exact_div(p, q, &remainder)) return std::move(*r);
    throw NotDivisible("(" + q.to_string() + ") does not divide the given polynomial",
                       to_json(remainder).dump());
}

Substitution permutation_substitution(std::span<const int> perm, int arity) {
    Substitution s;
    s.target_arity = arity;
    s.images.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) s.images[i].mono.z(perm[i]) = 1;
    return s;
}

}  // namespace tshuf
