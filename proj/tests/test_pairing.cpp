#include <doctest.h>

#include "oracle.hpp"
#include "tshuf/pairing.hpp"

using namespace tshuf;

namespace {

SlopePoint sp(int n, int d) { return slope_point(n, d); }
ConvexPath path(std::vector<SlopePoint> pts) { return canonical_path(std::move(pts)); }
SlopeWindow window(int lo, int hi) { return SlopeWindow{lo, hi}; }

Kernel poly_kernel(Laurent r) {
    Kernel k;
    k.arity = r.arity();
    k.body = RatExpr(std::move(r));
    return k;
}

// numerator of the H-form presentation of a path kernel built from ladders
Laurent h_form_numerator(const ConvexPath& v, bool use_p) {
    Laurent p = Laurent::constant(1);
    int off = 0;
    for (const auto& pt : v.points) {
        const Kernel k = use_p ? kernel_P(pt) : kernel_H(pt);
        const int total = off + pt.n;
        std::vector<int> shift(pt.n);
        for (int i = 0; i < pt.n; ++i) shift[i] = off + i;
        p = p.with_arity(total) * k.body.num().relabeled(shift, total);
        if (off > 0) p *= Laurent::constant(1, total) - Laurent::ratio(off, off - 1, 0, -1, total);
        off = total;
    }
    return p;
}

}  // namespace

TEST_CASE("pairing values") {
    const CoeffPoly q2m1 = Laurent::q2_pow(1) - Laurent::constant(1);
    const PairingValue a(Laurent::constant(1), {q2m1});
    CHECK_FALSE(a.is_integral());
    CHECK((a * PairingValue(q2m1)).is_integral());
    CHECK(a + a == PairingValue(Laurent::constant(2), {q2m1}));
    CHECK(PairingValue::rational(mpq_class(3, 6)).as_rational() == mpq_class(1, 2));
    CHECK_FALSE(a.as_rational().has_value());
    CHECK(PairingValue(q2m1 * q2m1, {q2m1}).reduced().den().empty());
    const Json doc = to_json(PairingValue(Laurent::constant(-3), {Laurent::constant(2)}));
    CHECK(doc.contains("num"));
    CHECK(doc.contains("den"));
}

TEST_CASE("pairing examples") {
    const auto v10 = path({sp(1, 0)}), v11 = path({sp(1, 1)}), v = path({sp(1, 0), sp(1, 0)});
    CHECK(pair(kernel_P_path(v10), gen_Pbar_path(v10)).as_rational() == mpq_class(1));
    CHECK(pair(kernel_P_path(v10), gen_Pbar_path(v11)).is_zero());
    CHECK(pair(kernel_P_path(v), gen_Pbar_path(v)).as_rational() == mpq_class(2));
    CHECK(path_norm(v) == 2);
    CHECK(path_norm(path({sp(1, 0), sp(1, 0), sp(1, 0)})) == 6);
    CHECK(path_norm(path({sp(2, 0), sp(1, 0)})) == 2);
    CHECK(path_norm(path({sp(1, -1), sp(1, 1)})) == 1);
    CHECK_THROWS_AS(pair(kernel_P_path(v), gen_Pbar_path(v10)), ArityMismatch);
    Kernel bad = poly_kernel(Laurent::constant(1, 2));
    bad.body = RatExpr(Laurent::constant(1, 2), {Laurent::constant(1, 2) - Laurent::ratio(0, 1, 1, 0, 2)});
    CHECK_THROWS_AS(pair(bad, gen_Pbar_path(v)), RegionViolation);
}

TEST_CASE("convex paths") {
    auto strs = [](const std::vector<ConvexPath>& vs) {
        std::vector<std::string> s;
        for (const auto& v : vs) s.push_back(v.to_string());
        return s;
    };
    CHECK(strs(convex_paths(2, 1, window(-1, 2))) ==
          std::vector<std::string>{"{(1,-1),(1,2)}", "{(1,0),(1,1)}", "{(2,1)}"});
    CHECK(strs(convex_paths(1, 5, window(5, 5))) == std::vector<std::string>{"{(1,5)}"});
    CHECK(strs(convex_paths(2, 0, window(0, 0))) == std::vector<std::string>{"{(1,0),(1,0)}", "{(2,0)}"});
    CHECK(convex_paths(2, 1, window(0, 0)).empty());
    CHECK(convex_paths(3, 0, SlopeWindow{mpq_class(-1, 2), mpq_class(1, 2)}).size() == 3);
    for (const auto& v : convex_paths(3, 1, window(-2, 2))) {
        CHECK(v.n() == 3);
        CHECK(v.d() == 1);
        CHECK(canonical_path(v.points) == v);
    }
}

TEST_CASE("orthogonality of P_v and Pbar_w") {
    for (auto [n, d] : {std::pair{2, 0}, {2, 1}, {3, 0}}) {
        const auto paths = convex_paths(n, d, window(-2, 2));
        for (const auto& v : paths) {
            const Kernel kv = kernel_P_path(v);
            for (const auto& w : paths) {
                CAPTURE(v.to_string());
                CAPTURE(w.to_string());
                const PairingValue val = pair(kv, gen_Pbar_path(w));
                if (v == w)
                    CHECK(val.as_rational() == mpq_class(path_norm(v)));
                else
                    CHECK(val.is_zero());
            }
        }
    }
}

TEST_CASE("bidegree selection") {
    const Kernel k = kernel_P_path(path({sp(1, 0), sp(1, 1)}));
    CHECK(pair(k, gen_Pbar_path(path({sp(1, 0), sp(1, 0)}))).is_zero());
    CHECK(pair(k, gen_Hbar(sp(2, 2))).is_zero());
}

TEST_CASE("pairing does not depend on the kernel presentation") {
    // P_{1,0} * P_{1,0} with a plain body and with a cancelling ladder factor
    const Kernel a = kernel_P_path(path({sp(1, 0), sp(1, 0)}));
    Kernel b = a;
    const Laurent lad = Laurent::constant(1, 2) - Laurent::ratio(1, 0, 0, -1, 2);
    b.body = RatExpr(lad, {lad});
    CHECK(kernel_value(a) == kernel_value(b));
    for (int d = -1; d <= 1; ++d)
        for (const auto& w : convex_paths(2, d, window(-1, 1))) {
            const ShuffleElem hw = kernel_value(kernel_H_path(w));
            CHECK(pair(a, hw) == pair(b, hw));
        }
}

TEST_CASE("residue formula agrees with the constant-term pairing") {
    CHECK((residue_sign() == 1 || residue_sign() == -1));
    oracle::Sampler S(7);
    // R from polynomial kernels (constant-term side), R' in H-form (residue side)
    for (int n = 1; n <= 3; ++n) {
        std::vector<Laurent> rs;
        for (int k = 0; k < 3; ++k) {
            Laurent r = S.laurent(n, 2, 1);
            // homogeneous of degree 0 or 1 in z
            Laurent h(n);
            for (const auto& [m, c] : r.terms())
                if (m.z_degree(n) == (k % 2)) h += Laurent::monomial(m, c, n);
            if (h.is_zero()) h = Laurent::z_pow(0, k % 2, n);
            rs.push_back(h);
        }
        for (int d = 0; d <= 1; ++d)
            for (const auto& w : convex_paths(n, d, window(-1, 1)))
                for (bool use_p : {false, true}) {
                    const Laurent p = h_form_numerator(w, use_p);
                    const ShuffleElem Rp = kernel_value(h_form_kernel(p));
                    for (const auto& r : rs) {
                        CAPTURE(w.to_string());
                        CAPTURE(r.to_string());
                        const Kernel kr = poly_kernel(r);
                        CHECK(pair_residue(kernel_value(kr), p) == pair(kr, Rp));
                    }
                }
    }
    // F_2 against H_{2,0}, and a degree mismatch
    const Laurent one2 = Laurent::constant(1, 2);
    CHECK(pair_residue(f_n(2), one2) == pair(kernel_H(sp(2, 0)), f_n(2)));
    CHECK(pair_residue(f_n(2), Laurent::z_pow(1, 1, 2)).is_zero());
}

TEST_CASE("integrality criterion") {
    for (auto [n, d] : {std::pair{2, 0}, {2, 1}})
        for (const auto& v : convex_paths(n, d, window(-1, 2))) {
            CAPTURE(v.to_string());
            const auto rep = integrality_check(gen_Hbar_path(v), window(-1, 2));
            CHECK(rep.integral);
        }
    const ShuffleElem neg = gen_Hbar(sp(1, 0)).divided(Laurent::q2_pow(1) - Laurent::constant(1));
    const auto rep = integrality_check(neg, window(0, 0));
    CHECK_FALSE(rep.integral);
    REQUIRE(rep.offending.has_value());
    CHECK(rep.offending->to_string() == "{(1,0)}");
    CHECK(integrality_check(f_n(2), window(-1, 1)).integral);
    CHECK(integrality_check(f_n(2), window(-1, 1)).window_stable);
}

TEST_CASE("PBW expansion") {
    const auto v21 = path({sp(2, 1)});
    const auto terms = pbw_expand(gen_Hbar_path(v21), window(-1, 2));
    for (const auto& t : terms) {
        CAPTURE(t.path.to_string());
        CHECK(t.coeff.as_rational() == mpq_class(t.path == v21 ? 1 : 0));
    }
    const ShuffleElem prod = shuffle_mul(gen_Hbar(sp(1, 0)), gen_Hbar(sp(1, 1)));
    const auto exp = pbw_expand(prod, window(-1, 2));
    bool integral = true;
    for (const auto& t : exp) integral = integral && t.coeff.is_integral();
    CHECK(integral);
    CHECK(integrality_check(prod, window(-1, 2)).integral);
    // the window misses the support of Hbar_{1,-1} * Hbar_{1,2}
    const ShuffleElem outside = shuffle_mul(gen_Hbar(sp(1, -1)), gen_Hbar(sp(1, 2)));
    CHECK_THROWS_AS(pbw_expand(outside, window(0, 1)), NotInSpan);
    // non-integral coefficients for the rescaled control
    const ShuffleElem neg = gen_Hbar(sp(1, 0)).divided(Laurent::q2_pow(1) - Laurent::constant(1));
    const auto negexp = pbw_expand(neg, window(0, 0));
    REQUIRE(negexp.size() == 1);
    CHECK_FALSE(negexp[0].coeff.is_integral());
    CHECK(to_json(exp).is_array());
}
