#include "tshuf/shuffle.hpp"

#include <algorithm>
#include <numeric>

#include "tshuf/config.hpp"

namespace tshuf {

RatExpr zeta(int i, int j, int arity) {
    if (i == j) throw InvalidArgument("zeta needs two distinct variables");
    const Laurent one = Laurent::constant(1, arity);
    Laurent num = (one - Laurent::ratio(i, j, 1, 0, arity)) *
                  (one - Laurent::ratio(i, j, 0, 1, arity)) *
                  (one - Laurent::ratio(j, i, 1, 1, arity));
    return RatExpr(std::move(num), {one - Laurent::ratio(i, j, 0, 0, arity)});
}

namespace {

void check_symmetric(const Laurent& p) {
    if (!p.is_symmetric())
        throw InvalidArgument("component of arity " + std::to_string(p.arity()) +
                              " is not symmetric");
}

std::vector<CoeffPoly> scalar_factors(std::vector<CoeffPoly> den) {
    for (auto& f : den) {
        if (f.is_zero()) throw InvalidArgument("zero scalar denominator");
        if (!f.is_constant()) throw InvalidArgument("denominator depends on z: " + f.to_string());
        f = f.with_arity(0);
    }
    return den;
}

}  // namespace

ShuffleElem ShuffleElem::make(std::map<int, Laurent> comps, std::vector<CoeffPoly> den) {
    ShuffleElem e;
    for (auto& [n, p] : comps)
        if (!p.is_zero()) e.comps_.emplace(n, std::move(p));
    std::vector<CoeffPoly> kept;
    for (auto& f : den) {
        if (f.is_unit()) {
            for (auto& [n, p] : e.comps_) p *= f.unit_inverse();
        } else {
            kept.push_back(std::move(f));
        }
    }
    if (!e.comps_.empty()) e.den_ = std::move(kept);
    return e;
}

ShuffleElem ShuffleElem::from_component(Laurent p, std::vector<CoeffPoly> den) {
    check_symmetric(p);
    const int n = p.arity();
    std::map<int, Laurent> comps;
    comps.emplace(n, std::move(p));
    return make(std::move(comps), scalar_factors(std::move(den)));
}

ShuffleElem ShuffleElem::unit() { return from_component(Laurent::constant(1, 0)); }

Laurent ShuffleElem::component(int n) const {
    auto it = comps_.find(n);
    return it == comps_.end() ? Laurent(n) : it->second;
}

std::optional<std::pair<int, std::int64_t>> ShuffleElem::bidegree() const {
    if (comps_.size() != 1) return std::nullopt;
    const auto& [n, p] = *comps_.begin();
    auto d = p.z_degree();
    if (!d) return std::nullopt;
    return std::make_pair(n, *d);
}

ShuffleElem ShuffleElem::operator-() const {
    ShuffleElem r = *this;
    for (auto& [n, p] : r.comps_) p = -p;
    return r;
}

ShuffleElem operator+(const ShuffleElem& a, const ShuffleElem& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::vector<Laurent> dens[] = {a.den_, b.den_};
    auto cd = common_denominator(dens, 0);
    std::map<int, Laurent> comps;
    for (const auto& [n, p] : a.comps_) comps[n] = p * cd.multipliers[0];
    for (const auto& [n, p] : b.comps_) {
        auto it = comps.find(n);
        if (it == comps.end())
            comps.emplace(n, p * cd.multipliers[1]);
        else
            it->second += p * cd.multipliers[1];
    }
    return ShuffleElem::make(std::move(comps), std::move(cd.den));
}

ShuffleElem operator-(const ShuffleElem& a, const ShuffleElem& b) { return a + (-b); }

ShuffleElem ShuffleElem::scaled(const CoeffPoly& c) const {
    if (!c.is_constant()) throw InvalidArgument("scalar depends on z");
    std::map<int, Laurent> comps;
    for (const auto& [n, p] : comps_) comps.emplace(n, p * c.with_arity(0));
    return make(std::move(comps), den_);
}

ShuffleElem ShuffleElem::divided(const CoeffPoly& c) const {
    std::vector<CoeffPoly> den = den_;
    den.push_back(c);
    return make(comps_, scalar_factors(std::move(den)));
}

bool operator==(const ShuffleElem& a, const ShuffleElem& b) {
    Laurent da = Laurent::constant(1), db = Laurent::constant(1);
    for (const auto& f : a.den_) da *= f;
    for (const auto& f : b.den_) db *= f;
    std::vector<int> arities;
    for (const auto& [n, p] : a.comps_) arities.push_back(n);
    for (const auto& [n, p] : b.comps_) arities.push_back(n);
    for (int n : arities)
        if (!(a.component(n) * db == b.component(n) * da)) return false;
    return true;
}

ShuffleElem ShuffleElem::reduced() const {
    std::map<int, Laurent> comps = comps_;
    std::vector<CoeffPoly> kept;
    for (const auto& f : den_) {
        std::map<int, Laurent> next;
        bool ok = true;
        for (const auto& [n, p] : comps) {
            auto q = try_exact_div(p, f);
            if (!q) {
                ok = false;
                break;
            }
            next.emplace(n, std::move(*q));
        }
        if (ok)
            comps = std::move(next);
        else
            kept.push_back(f);
    }
    return make(std::move(comps), std::move(kept));
}

Laurent ShuffleElem::integral_component(int n) const {
    const ShuffleElem r = reduced();
    if (!r.is_integral()) {
        std::string what;
        for (const auto& f : r.den_) what += "(" + f.to_string() + ")";
        throw NotPolynomial("scalar denominator " + what + " does not clear",
                            to_json(r.den_.front()).dump());
    }
    return r.component(n);
}

Json to_json(const ShuffleElem& e) {
    Json doc;
    if (e.components().size() == 1) {
        doc = to_json(e.components().begin()->second);
        if (auto bd = e.bidegree()) doc["homogeneous"] = {bd->first, bd->second};
    } else {
        doc["components"] = Json::array();
        for (const auto& [n, p] : e.components()) doc["components"].push_back(to_json(p));
    }
    if (!e.den().empty()) {
        doc["den"] = Json::array();
        for (const auto& f : e.den()) doc["den"].push_back(to_json(f));
    }
    return doc;
}

ShuffleElem shuffle_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("element document must be an object");
    std::vector<CoeffPoly> den;
    if (doc.contains("den")) {
        if (!doc["den"].is_array()) throw ParseError("\"den\" must be an array");
        for (const auto& f : doc["den"]) {
            Laurent p = laurent_from_json(f);
            if (!p.is_constant() || p.is_zero()) throw ParseError("invalid scalar denominator");
            den.push_back(p.with_arity(0));
        }
    }
    ShuffleElem total;
    if (doc.contains("components")) {
        if (!doc["components"].is_array()) throw ParseError("\"components\" must be an array");
        for (const auto& c : doc["components"]) total = total + ShuffleElem::from_component(laurent_from_json(c));
    } else {
        total = ShuffleElem::from_component(laurent_from_json(doc));
        if (doc.contains("homogeneous")) {
            const auto& h = doc["homogeneous"];
            auto bd = total.bidegree();
            if (!h.is_array() || h.size() != 2 || !bd || h[0] != bd->first || h[1] != bd->second)
                throw ParseError("\"homogeneous\" does not match the terms");
        }
    }
    for (const auto& f : den) total = total.divided(f);
    return total;
}

namespace {

// Presentation body * prod_{i<j} zeta(z_i/z_j) as a single RatExpr.
RatExpr with_all_zetas(const RatExpr& body, int n) {
    const Laurent one = Laurent::constant(1, n);
    Laurent num = body.num().with_arity(n);
    std::vector<Laurent> den;
    for (const auto& f : body.den()) den.push_back(f.arity() == 0 ? f : f.with_arity(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            num *= (one - Laurent::ratio(i, j, 1, 0, n)) * (one - Laurent::ratio(i, j, 0, 1, n)) *
                   (one - Laurent::ratio(j, i, 1, 1, n));
            den.push_back(one - Laurent::ratio(i, j, 0, 0, n));
        }
    return RatExpr(std::move(num), std::move(den));
}

}  // namespace

Laurent sym_full(const Kernel& k) {
    const int n = k.arity;
    check_arity_cap(n, "symmetrization");
    if (n == 0) return k.body.with_arity(0).to_polynomial();
    const RatExpr base = with_all_zetas(k.body, n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<RatExpr> images;
    do {
        images.push_back(base.relabeled(perm, n));
    } while (std::next_permutation(perm.begin(), perm.end()));
    Laurent out = sum(images).to_polynomial();
    if (!out.is_symmetric()) throw InternalAssertion("symmetrization produced a non-symmetric result");
    return out;
}

ShuffleElem kernel_value(const Kernel& k) {
    Laurent p = sym_full(k) * k.scale_num.with_arity(0);
    return ShuffleElem::from_component(std::move(p), k.scale_den).reduced();
}

namespace {

Laurent mul_components(const Laurent& a, const Laurent& b) {
    const int n = a.arity(), m = b.arity(), total = n + m;
    if (n == 0 || m == 0) return a * b;
    check_arity_cap(total, "shuffle product");
    const Laurent one = Laurent::constant(1, total);
    std::vector<RatExpr> terms;
    // choose which positions carry the first factor's variables
    std::vector<bool> first(total, false);
    std::fill(first.begin(), first.begin() + n, true);
    do {
        std::vector<int> pa, pb;
        for (int i = 0; i < total; ++i) (first[i] ? pa : pb).push_back(i);
        Laurent num = a.relabeled(pa, total) * b.relabeled(pb, total);
        std::vector<Laurent> den;
        for (int i : pa)
            for (int j : pb) {
                num *= (one - Laurent::ratio(i, j, 1, 0, total)) *
                       (one - Laurent::ratio(i, j, 0, 1, total)) *
                       (one - Laurent::ratio(j, i, 1, 1, total));
                den.push_back(one - Laurent::ratio(i, j, 0, 0, total));
            }
        terms.emplace_back(std::move(num), std::move(den));
    } while (std::prev_permutation(first.begin(), first.end()));
    try {
        return sum(terms).to_polynomial();
    } catch (const NotPolynomial& e) {
        throw InternalAssertion(std::string("shuffle product of symmetric inputs: ") + e.what(),
                                e.witness());
    }
}

}  // namespace

ShuffleElem shuffle_mul(const ShuffleElem& a, const ShuffleElem& b) {
    std::map<int, Laurent> comps;
    for (const auto& [n, p] : a.components())
        for (const auto& [m, r] : b.components()) {
            Laurent prod = mul_components(p, r);
            auto it = comps.find(n + m);
            if (it == comps.end())
                comps.emplace(n + m, std::move(prod));
            else
                it->second += prod;
        }
    for (const auto& [n, p] : comps)
        if (!p.is_symmetric()) throw InternalAssertion("shuffle product is not symmetric");
    std::vector<CoeffPoly> den = a.den();
    den.insert(den.end(), b.den().begin(), b.den().end());
    return ShuffleElem::make(std::move(comps), std::move(den)).reduced();
}

Laurent f_n_poly(int n) {
    check_arity_cap(n, "F_n");
    const Laurent one = Laurent::constant(1, n);
    Laurent p = one;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p *= one - Laurent::ratio(i, j, 0, 1, n);
    return p;
}

ShuffleElem f_n(int n) { return ShuffleElem::from_component(f_n_poly(n)); }

Kernel kernel_shuffle(const Kernel& a, const Kernel& b) {
    const int total = a.arity + b.arity;
    check_arity_cap(total, "kernel product");
    std::vector<int> shift(b.arity);
    std::iota(shift.begin(), shift.end(), a.arity);
    Kernel k;
    k.arity = total;
    k.body = a.body.with_arity(total) * b.body.relabeled(shift, total);
    k.scale_num = a.scale_num * b.scale_num;
    k.scale_den = a.scale_den;
    k.scale_den.insert(k.scale_den.end(), b.scale_den.begin(), b.scale_den.end());
    return k;
}

Json to_json(const Kernel& k) {
    Json body{{"arity", k.arity}, {"num", to_json(k.body.num())}, {"den", Json::array()},
              {"scale_num", to_json(k.scale_num)}, {"scale_den", Json::array()}};
    for (const auto& f : k.body.den()) body["den"].push_back(to_json(f));
    for (const auto& f : k.scale_den) body["scale_den"].push_back(to_json(f));
    return Json{{"kernel", body}};
}

Kernel kernel_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("kernel") || !doc["kernel"].is_object())
        throw ParseError("kernel document must have a \"kernel\" object");
    const Json& b = doc["kernel"];
    if (!b.contains("arity") || !b["arity"].is_number_integer() || !b.contains("num"))
        throw ParseError("kernel needs \"arity\" and \"num\"");
    Kernel k;
    k.arity = b["arity"].get<int>();
    if (k.arity < 0) throw ParseError("negative kernel arity");
    std::vector<Laurent> den;
    if (b.contains("den"))
        for (const auto& f : b["den"]) den.push_back(laurent_from_json(f).with_arity(k.arity));
    k.body = RatExpr(laurent_from_json(b["num"]).with_arity(k.arity), std::move(den));
    if (b.contains("scale_num")) {
        k.scale_num = laurent_from_json(b["scale_num"]);
        if (!k.scale_num.is_constant()) throw ParseError("scale_num must be z-free");
        k.scale_num = k.scale_num.with_arity(0);
    }
    if (b.contains("scale_den"))
        for (const auto& f : b["scale_den"]) {
            Laurent p = laurent_from_json(f);
            if (!p.is_constant() || p.is_zero()) throw ParseError("invalid scalar denominator");
            k.scale_den.push_back(p.with_arity(0));
        }
    return k;
}

}  // namespace tshuf
