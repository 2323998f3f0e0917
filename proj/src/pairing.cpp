#include "tshuf/pairing.hpp"

#include <algorithm>
#include <mutex>

#include "tshuf/ratexpr.hpp"

namespace tshuf {

namespace {

CoeffPoly product(const std::vector<CoeffPoly>& fs) {
    CoeffPoly p = Laurent::constant(1);
    for (const auto& f : fs) p *= f;
    return p;
}

CoeffPoly one() { return Laurent::constant(1); }

}  // namespace

PairingValue::PairingValue(CoeffPoly num, std::vector<CoeffPoly> den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.arity() != 0) throw InvalidArgument("pairing values live in the coefficient ring");
    for (const auto& f : den_)
        if (f.is_zero()) throw InvalidArgument("zero denominator in pairing value");
}

PairingValue PairingValue::rational(const mpq_class& c) {
    std::vector<CoeffPoly> den;
    if (c.get_den() != 1) den.push_back(Laurent::constant(c.get_den()));
    return PairingValue(Laurent::constant(c.get_num()), std::move(den));
}

CoeffPoly PairingValue::den_product() const { return product(den_); }

PairingValue PairingValue::reduced() const {
    if (num_.is_zero()) return PairingValue();
    CoeffPoly num = num_;
    std::vector<CoeffPoly> kept;
    for (const auto& f : den_) {
        if (f.is_one()) continue;
        if (auto q = try_exact_div(num, f)) {
            num = std::move(*q);
            continue;
        }
        kept.push_back(f);
    }
    // fold units into the numerator
    std::vector<CoeffPoly> out;
    for (auto& f : kept) {
        if (f.is_unit()) {
            num *= f.unit_inverse();
            continue;
        }
        out.push_back(std::move(f));
    }
    return PairingValue(std::move(num), std::move(out));
}

bool PairingValue::is_integral() const {
    const PairingValue r = reduced();
    if (r.den_.empty()) return true;
    return try_exact_div(r.num_, r.den_product()).has_value();
}

std::optional<mpq_class> PairingValue::as_rational() const {
    auto integer = [](const CoeffPoly& p) { return p.is_zero() || (p.size() == 1 && p.leading().first.is_one()); };
    const PairingValue r = reduced();
    if (!integer(r.num_)) return std::nullopt;
    const CoeffPoly d = r.den_product();
    if (!integer(d)) return std::nullopt;
    auto coeff = [](const CoeffPoly& p) { return p.is_zero() ? Int(0) : p.leading().second; };
    mpq_class q(coeff(r.num_), coeff(d));
    q.canonicalize();
    return q;
}

PairingValue operator+(const PairingValue& a, const PairingValue& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return PairingValue(a.num_ + b.num_, a.den_).reduced();
    std::vector<CoeffPoly> den = a.den_;
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    return PairingValue(a.num_ * b.den_product() + b.num_ * a.den_product(), std::move(den)).reduced();
}

PairingValue operator*(const PairingValue& a, const PairingValue& b) {
    std::vector<CoeffPoly> den = a.den_;
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    return PairingValue(a.num_ * b.num_, std::move(den)).reduced();
}

PairingValue PairingValue::scaled(const mpq_class& c) const { return *this * rational(c); }

bool operator==(const PairingValue& a, const PairingValue& b) {
    return a.num_ * b.den_product() == b.num_ * a.den_product();
}

std::string PairingValue::to_string() const {
    const PairingValue r = reduced();
    if (r.den_.empty()) return r.num_.to_string();
    return "(" + r.num_.to_string() + ")/(" + r.den_product().to_string() + ")";
}

Json to_json(const PairingValue& v) {
    const PairingValue r = v.reduced();
    return Json{{"num", to_json(r.num())}, {"den", to_json(r.den_product())}};
}

namespace {

// 1/zeta(x) = (1 - x) / ((1 - q1 x)(1 - q2 x)(1 - q1 q2 / x)) with x = z_j / z_i
void inverse_zeta(int j, int i, int n, Laurent& num, std::vector<Laurent>& den) {
    const Laurent o = Laurent::constant(1, n);
    num *= o - Laurent::ratio(j, i, 0, 0, n);
    den.push_back(o - Laurent::ratio(j, i, 1, 0, n));
    den.push_back(o - Laurent::ratio(j, i, 0, 1, n));
    den.push_back(o - Laurent::ratio(i, j, 1, 1, n));
}

PairingValue from_constant_term(const ConstantTerm& ct, std::vector<CoeffPoly> extra_den) {
    std::vector<CoeffPoly> den = ct.scalar_den;
    den.insert(den.end(), extra_den.begin(), extra_den.end());
    return PairingValue(ct.value, std::move(den)).reduced();
}

std::vector<CoeffPoly> q2_minus_one(int n) {
    return std::vector<CoeffPoly>(n, Laurent::q2_pow(1) - one());
}

Laurent component_of(const ShuffleElem& R, int n, const char* what) {
    for (const auto& [k, p] : R.components())
        if (k != n) throw ArityMismatch(std::string(what) + ": component of arity " + std::to_string(k) +
                                        ", expected " + std::to_string(n));
    return R.component(n);
}

}  // namespace

namespace {

PairingValue pair_polynomial(const Kernel& kR, const std::vector<CoeffPoly>& scalar_den, const ShuffleElem& Rp) {
    const int n = kR.arity;
    const Laurent rp = component_of(Rp, n, "pair");
    if (rp.is_zero()) return PairingValue();
    std::vector<Laurent> den;
    Laurent num = kR.body.num().with_arity(n) * kR.scale_num.with_arity(n) * rp.inverted_z();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) inverse_zeta(j, i, n, num, den);
    std::vector<CoeffPoly> extra = scalar_den;
    extra.insert(extra.end(), Rp.den().begin(), Rp.den().end());
    const auto q2m = q2_minus_one(n);
    extra.insert(extra.end(), q2m.begin(), q2m.end());
    return from_constant_term(ordered_constant_term(num, den, Region::descending(n)), std::move(extra));
}

Laurent q2_ladder_factor(int i, int n) {
    return Laurent::constant(1, n) - Laurent::ratio(i + 1, i, 0, -1, n);
}

}  // namespace

PairingValue pair(const Kernel& kR, const ShuffleElem& Rp) {
    const int n = kR.arity;
    std::vector<CoeffPoly> scalar_den = kR.scale_den;
    Laurent num = kR.body.num().with_arity(n);
    std::vector<bool> used(n > 0 ? n - 1 : 0, false);
    bool rational = false;
    for (const auto& f : kR.body.den()) {
        const Laurent g = f.with_arity(n);
        bool z_free = true;
        for (const auto& [m, c] : g.terms())
            if (!m.z_free(n)) z_free = false;
        if (z_free) {
            scalar_den.push_back(g.with_arity(0));
            continue;
        }
        // must be an associate of a q2-ladder factor 1 - z_{i+1}/(z_i q2)
        const NormalizedFactor nf = normalize_factor(g);
        bool matched = false;
        for (int i = 0; i + 1 < n && !matched; ++i) {
            if (used[i]) continue;
            const NormalizedFactor lf = normalize_factor(q2_ladder_factor(i, n));
            if (!(lf.key == nf.key)) continue;
            // 1/g = (lf.unit / nf.unit) / ladder_i
            num = num * lf.unit * nf.unit.unit_inverse();
            used[i] = matched = true;
        }
        if (!matched)
            throw RegionViolation("kernel denominator " + g.to_string() +
                                  " is neither z-free nor a q2-ladder factor 1 - z_{i+1}/(z_i q2)");
        rational = true;
    }
    if (!rational) {
        Kernel poly = kR;
        poly.body = RatExpr(num);
        return pair_polynomial(poly, scalar_den, Rp);
    }
    // <R, R'> = <R', R> with R in H-form: complete the ladder and use residues
    for (int i = 0; i + 1 < n; ++i)
        if (!used[i]) num *= q2_ladder_factor(i, n);
    num *= kR.scale_num.with_arity(n);
    return pair_residue(Rp, num) * PairingValue(Laurent::constant(1), scalar_den);
}

Kernel h_form_kernel(const Laurent& p) {
    const int n = p.arity();
    std::vector<Laurent> den;
    for (int i = 0; i + 1 < n; ++i) den.push_back(Laurent::constant(1, n) - Laurent::ratio(i + 1, i, 0, -1, n));
    Kernel k;
    k.arity = n;
    k.body = RatExpr(p, std::move(den));
    return k;
}

namespace {

std::vector<std::vector<int>> compositions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = 1; k <= left; ++k) {
            cur.push_back(k);
            self(self, left - k);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

PairingValue pair_residue_signed(const ShuffleElem& R, const Laurent& p, int sign) {
    const int n = p.arity();
    const Laurent r = component_of(R, n, "pair_residue");
    if (r.is_zero()) return PairingValue();
    const Laurent o = Laurent::constant(1, n);
    Laurent num = r * p.inverted_z();
    // ladder factors 1 - z_i / (z_{i+1} q2), kept separately
    std::vector<Laurent> ladder;
    for (int i = 0; i + 1 < n; ++i) ladder.push_back(o - Laurent::ratio(i, i + 1, 0, -1, n));
    std::vector<Laurent> den;
    // 1/zeta(z_i / z_j) for i < j
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) inverse_zeta(i, j, n, num, den);

    PairingValue total;
    for (const auto& comp : compositions(n)) {
        const int k = static_cast<int>(comp.size());
        Substitution s{k, std::vector<MonoImage>(n, MonoImage{1, Mono{}})};
        std::vector<bool> internal(n > 0 ? n - 1 : 0, false);
        int pos = 0;
        for (int b = 0; b < k; ++b)
            for (int j = 0; j < comp[b]; ++j, ++pos) {
                s.images[pos].mono.z(b) = 1;
                s.images[pos].mono.q2() = comp[b] - 1 - j;
                if (j + 1 < comp[b]) internal[pos] = true;
            }
        Laurent cnum = num.substitute(s);
        if (cnum.is_zero()) continue;
        if ((n - k) % 2 && sign < 0) cnum = -cnum;
        std::vector<Laurent> cden;
        for (const auto& f : den) cden.push_back(f.substitute(s));
        for (int i = 0; i + 1 < n; ++i)
            if (!internal[i]) cden.push_back(ladder[i].substitute(s));
        for (const auto& f : cden)
            if (f.is_zero()) throw InternalAssertion("a denominator vanishes on a q2-string");
        total = total + from_constant_term(ordered_constant_term(cnum, cden, Region::ascending(k)), R.den());
    }
    return total * PairingValue(one(), q2_minus_one(n));
}

Kernel polynomial_kernel(Laurent r) {
    Kernel k;
    k.arity = r.arity();
    k.body = RatExpr(std::move(r));
    return k;
}

// <Sym[r zeta], Sym[p / ladder * zeta]> both ways, with r a polynomial so
// that the constant-term side needs no expansion of the kernel.
int calibrate() {
    const int n = 2;
    const Laurent one2 = Laurent::constant(1, n), x = Laurent::ratio(1, 0, 0, 0, n);
    const std::vector<Laurent> rs = {one2, x, x.unit_inverse(), one2 - Laurent::ratio(1, 0, 0, -1, n)};
    const std::vector<Laurent> ps = {one2, Laurent::ratio(1, 0, 0, -1, n), x.unit_inverse(), Laurent::z_pow(0, 1, n)};
    for (int sign : {-1, 1}) {
        bool ok = true;
        for (const auto& r : rs) {
            const Kernel kr = polynomial_kernel(r);
            const ShuffleElem R = kernel_value(kr);
            for (const auto& p : ps) {
                if (R.bidegree() != kernel_value(h_form_kernel(p)).bidegree()) continue;
                if (!(pair_residue_signed(R, p, sign) == pair(kr, kernel_value(h_form_kernel(p))))) ok = false;
            }
        }
        if (ok) return sign;
    }
    throw CalibrationFailure("no residue sign reconciles the residue formula with the constant-term pairing");
}

}  // namespace

int residue_sign() {
    static std::once_flag flag;
    static int sign = 0;
    std::call_once(flag, [] { sign = calibrate(); });
    return sign;
}

PairingValue pair_residue(const ShuffleElem& R, const Laurent& p) {
    return pair_residue_signed(R, p, residue_sign());
}

int ConvexPath::n() const {
    int s = 0;
    for (const auto& p : points) s += p.n;
    return s;
}

int ConvexPath::d() const {
    int s = 0;
    for (const auto& p : points) s += p.d;
    return s;
}

std::string ConvexPath::to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < points.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(points[i].n) + "," + std::to_string(points[i].d) + ")";
    }
    return s + "}";
}

namespace {

// slope order, then n
bool path_less(const SlopePoint& a, const SlopePoint& b) {
    const long lhs = static_cast<long>(a.d) * b.n, rhs = static_cast<long>(b.d) * a.n;
    if (lhs != rhs) return lhs < rhs;
    return a.n < b.n;
}

bool same_slope(const SlopePoint& a, const SlopePoint& b) {
    return static_cast<long>(a.d) * b.n == static_cast<long>(b.d) * a.n;
}

mpq_class slope(const SlopePoint& p) {
    mpq_class s(p.d, p.n);
    s.canonicalize();
    return s;
}

}  // namespace

ConvexPath canonical_path(std::vector<SlopePoint> points) {
    std::stable_sort(points.begin(), points.end(), path_less);
    return ConvexPath{std::move(points)};
}

Int path_norm(const ConvexPath& v) {
    Int z = 1;
    const auto& pts = v.points;
    for (size_t i = 0; i < pts.size();) {
        size_t j = i;
        std::vector<int> ts;
        while (j < pts.size() && same_slope(pts[i], pts[j])) ts.push_back(pts[j++].t());
        std::sort(ts.rbegin(), ts.rend());
        z *= z_lambda(make_partition(ts));
        i = j;
    }
    return z;
}

std::vector<ConvexPath> convex_paths(int n, int d, const SlopeWindow& window) {
    if (window.lo > window.hi) throw InvalidArgument("empty slope window");
    std::vector<ConvexPath> out;
    std::vector<SlopePoint> cur;
    auto rec = [&](auto&& self, int nleft, int dleft) -> void {
        if (nleft == 0) {
            if (dleft == 0) out.push_back(ConvexPath{cur});
            return;
        }
        for (int m = 1; m <= nleft; ++m) {
            mpq_class lo = window.lo * m, hi = window.hi * m;
            const Int dlo = Int(ceil(mpf_class(lo))), dhi = Int(floor(mpf_class(hi)));
            for (long e = dlo.get_si(); e <= dhi.get_si(); ++e) {
                const SlopePoint p{m, static_cast<int>(e)};
                if (slope(p) < window.lo || slope(p) > window.hi) continue;
                if (!cur.empty() && path_less(p, cur.back())) continue;
                // the remaining points must fit above this slope
                const int nrest = nleft - m;
                const long drest = dleft - e;
                if (nrest == 0 && drest != 0) continue;
                if (nrest > 0) {
                    mpq_class need(drest, nrest);
                    need.canonicalize();
                    if (need < slope(p) || need > window.hi) continue;
                }
                cur.push_back(p);
                self(self, nrest, static_cast<int>(drest));
                cur.pop_back();
            }
        }
    };
    rec(rec, n, d);
    auto key = [](const ConvexPath& v) {
        std::vector<std::pair<int, int>> k;
        for (const auto& p : v.points) k.emplace_back(p.n, p.d);
        return k;
    };
    std::sort(out.begin(), out.end(), [&](const ConvexPath& a, const ConvexPath& b) { return key(a) < key(b); });
    return out;
}

namespace {

template <class F>
Kernel path_kernel(const ConvexPath& v, F make) {
    if (v.points.empty()) throw InvalidArgument("empty convex path");
    Kernel k = make(v.points.front());
    for (size_t i = 1; i < v.points.size(); ++i) k = kernel_shuffle(k, make(v.points[i]));
    return k;
}

template <class F>
ShuffleElem path_value(const ConvexPath& v, F make) {
    ShuffleElem e = ShuffleElem::unit();
    for (const auto& p : v.points) e = shuffle_mul(e, make(p));
    return e;
}

}  // namespace

Kernel kernel_P_path(const ConvexPath& v) {
    return path_kernel(v, [](const SlopePoint& p) { return kernel_P(p); });
}

Kernel kernel_H_path(const ConvexPath& v) {
    return path_kernel(v, [](const SlopePoint& p) { return kernel_H(p); });
}

ShuffleElem gen_Pbar_path(const ConvexPath& v) {
    return path_value(v, [](const SlopePoint& p) { return gen_Pbar(p); });
}

ShuffleElem gen_Hbar_path(const ConvexPath& v) {
    return path_value(v, [](const SlopePoint& p) { return gen_Hbar(p); });
}

namespace {

std::pair<int, int> homogeneous_bidegree(const ShuffleElem& R) {
    const auto b = R.bidegree();
    if (!b) throw InvalidArgument("element is not homogeneous");
    return {b->first, static_cast<int>(b->second)};
}

SlopeWindow widened(const SlopeWindow& w) { return SlopeWindow{w.lo - 1, w.hi + 1}; }

bool contains(const std::vector<ConvexPath>& vs, const ConvexPath& v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

}  // namespace

IntegralityReport integrality_check(const ShuffleElem& R, const SlopeWindow& window) {
    const auto [n, d] = homogeneous_bidegree(R);
    IntegralityReport report;
    const auto paths = convex_paths(n, d, window);
    for (const auto& v : paths) {
        PairingValue val = pair(kernel_H_path(v), R);
        if (report.integral && !val.is_integral()) {
            report.integral = false;
            report.offending = v;
        }
        report.pairings.emplace_back(v, std::move(val));
    }
    for (const auto& v : convex_paths(n, d, widened(window))) {
        if (contains(paths, v)) continue;
        if (!pair(kernel_H_path(v), R).is_zero()) {
            report.window_stable = false;
            break;
        }
    }
    return report;
}

Json to_json(const IntegralityReport& report) {
    Json doc{{"integral", report.integral}, {"window_stable", report.window_stable}};
    doc["offending"] = report.offending ? Json(report.offending->to_string()) : Json(nullptr);
    Json rows = Json::array();
    for (const auto& [v, val] : report.pairings) rows.push_back(Json{{"path", v.to_string()}, {"pairing", to_json(val)}});
    doc["pairings"] = rows;
    return doc;
}

namespace {

Json path_json(const ConvexPath& v) {
    Json pts = Json::array();
    for (const auto& p : v.points) pts.push_back(Json::array({p.n, p.d}));
    return pts;
}

// Solves sum_v c_v G[v][w] = b_w over Q for invertible G.
std::vector<PairingValue> solve_transposed(std::vector<std::vector<mpq_class>> G, std::vector<PairingValue> b) {
    const size_t m = G.size();
    // work with A = G^T, rows indexed by w
    std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(m));
    for (size_t v = 0; v < m; ++v)
        for (size_t w = 0; w < m; ++w) A[w][v] = G[v][w];
    for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        while (piv < m && A[piv][col] == 0) ++piv;
        if (piv == m) throw InternalAssertion("singular Gram matrix");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        const mpq_class inv = 1 / A[col][col];
        for (auto& x : A[col]) x *= inv;
        b[col] = b[col].scaled(inv);
        for (size_t r = 0; r < m; ++r) {
            if (r == col || A[r][col] == 0) continue;
            const mpq_class f = A[r][col];
            for (size_t c = 0; c < m; ++c) A[r][c] -= f * A[col][c];
            b[r] = b[r] + b[col].scaled(-f);
        }
    }
    return b;
}

}  // namespace

std::vector<PbwTerm> pbw_expand(const ShuffleElem& R, const SlopeWindow& window) {
    const auto [n, d] = homogeneous_bidegree(R);
    const auto paths = convex_paths(n, d, window);
    const size_t m = paths.size();
    if (m == 0) throw NotInSpan("no convex path of bidegree (" + std::to_string(n) + "," + std::to_string(d) +
                                ") in the window", to_json(R).dump());
    std::vector<Kernel> hk;
    std::vector<ShuffleElem> hbar;
    for (const auto& v : paths) {
        hk.push_back(kernel_H_path(v));
        hbar.push_back(gen_Hbar_path(v));
    }
    std::vector<std::vector<mpq_class>> G(m, std::vector<mpq_class>(m));
    for (size_t v = 0; v < m; ++v)
        for (size_t w = 0; w < m; ++w) {
            const auto g = pair(hk[w], hbar[v]).as_rational();
            if (!g) throw InternalAssertion("Gram entry <Hbar_v, H_w> is not a rational number");
            G[v][w] = *g;
        }
    std::vector<PairingValue> b;
    for (size_t w = 0; w < m; ++w) b.push_back(pair(hk[w], R));
    const auto c = solve_transposed(std::move(G), std::move(b));

    ShuffleElem back;
    std::vector<PbwTerm> out;
    for (size_t v = 0; v < m; ++v) {
        const PairingValue cv = c[v].reduced();
        out.push_back({paths[v], cv});
        if (cv.is_zero()) continue;
        ShuffleElem t = hbar[v].scaled(cv.num());
        for (const auto& f : cv.den()) t = t.divided(f);
        back = back + t;
    }
    if (!(back == R)) throw NotInSpan("re-expansion differs from the input; widen the window",
                                      to_json((R - back).reduced()).dump());
    return out;
}

Json to_json(const std::vector<PbwTerm>& terms) {
    Json out = Json::array();
    for (const auto& t : terms) out.push_back(Json{{"path", path_json(t.path)}, {"coeff", to_json(t.coeff)}});
    return out;
}

}  // namespace tshuf
