#pragma once

// Independent reference evaluation for tests: values are computed as exact
// rationals at random rational points, never through the library's own
// division or series code.

#include <algorithm>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "tshuf/laurent.hpp"
#include "tshuf/ratexpr.hpp"

namespace oracle {

using Q = mpq_class;

struct Point {
    Q q1, q2;
    std::vector<Q> z;
};

inline Q ipow(const Q& x, long k) {
    Q base = k < 0 ? Q(1) / x : x;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    Q r = 1;
    while (e) {
        if (e & 1ul) r *= base;
        e >>= 1ul;
        if (e) base *= base;
    }
    return r;
}

inline Q eval(const tshuf::Laurent& p, const Point& pt) {
    Q acc = 0;
    for (const auto& [m, c] : p.terms()) {
        Q v = Q(c) * ipow(pt.q1, m.q1()) * ipow(pt.q2, m.q2());
        for (int i = 0; i < p.arity(); ++i) v *= ipow(pt.z.at(i), m.z(i));
        acc += v;
    }
    return acc;
}

inline Q eval(const tshuf::RatExpr& e, const Point& pt) {
    Q v = eval(e.num(), pt);
    for (const auto& f : e.den()) v /= eval(f, pt);
    return v;
}

// Rationals with small numerators and denominators, avoiding 0 and +-1 so
// that binomial denominators rarely vanish.
class Sampler {
public:
    explicit Sampler(unsigned seed) : gen_(seed) {}

    Q rational() {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
        while (true) {
            Q v(num(gen_), den(gen_));
            v.canonicalize();
            if (v != 0 && v != 1 && v != -1) return v;
        }
    }

    Point point(int arity) {
        Point p{rational(), rational(), {}};
        // distinct coordinates keep every 1 - z_i/z_j away from zero
        while (static_cast<int>(p.z.size()) < arity) {
            Q v = rational();
            if (std::find(p.z.begin(), p.z.end(), v) == p.z.end()) p.z.push_back(v);
        }
        return p;
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    // Sparse random Laurent polynomial with small exponents.
    tshuf::Laurent laurent(int arity, int terms, int span = 2) {
        std::vector<tshuf::Laurent::Term> ts;
        for (int k = 0; k < terms; ++k) {
            tshuf::Mono m;
            m.q1() = integer(-span, span);
            m.q2() = integer(-span, span);
            for (int i = 0; i < arity; ++i) m.z(i) = integer(-span, span);
            int c = 0;
            while (c == 0) c = integer(-5, 5);
            ts.emplace_back(m, c);
        }
        return tshuf::Laurent::from_terms(arity, std::move(ts));
    }

    std::mt19937& engine() { return gen_; }

private:
    std::mt19937 gen_;
};

}  // namespace oracle

namespace oracle {

// Sum of all variable permutations of p (a symmetric polynomial).
inline tshuf::Laurent symmetrize(const tshuf::Laurent& p) {
    const int n = p.arity();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    tshuf::Laurent acc(n);
    do {
        acc += p.relabeled(perm, n);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

inline Q zeta(const Q& x, const Point& pt) {
    return (1 - x * pt.q1) * (1 - x * pt.q2) * (1 - pt.q1 * pt.q2 / x) / (1 - x);
}

// Value of the shuffle product of two symmetric polynomials at a point,
// summed over all (n+m)! orderings and divided by n! m!.
inline Q shuffle_value(const tshuf::Laurent& a, const tshuf::Laurent& b, const Point& pt) {
    const int n = a.arity(), m = b.arity(), total = n + m;
    std::vector<int> perm(total);
    for (int i = 0; i < total; ++i) perm[i] = i;
    Q acc = 0;
    long count = 0;
    do {
        Point pa{pt.q1, pt.q2, {}}, pb{pt.q1, pt.q2, {}};
        for (int i = 0; i < n; ++i) pa.z.push_back(pt.z[perm[i]]);
        for (int i = n; i < total; ++i) pb.z.push_back(pt.z[perm[i]]);
        Q v = eval(a, pa) * eval(b, pb);
        for (int i = 0; i < n; ++i)
            for (int j = n; j < total; ++j) v *= zeta(pt.z[perm[i]] / pt.z[perm[j]], pt);
        acc += v;
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int i = 2; i <= m; ++i) fact *= i;
    return acc / fact;
}

// Value of sum_{sigma in S_n} sigma(body * prod_{i<j} zeta(z_i/z_j)) at a point.
inline Q sym_value(const tshuf::RatExpr& body, int n, const Point& pt) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Q acc = 0;
    do {
        Point p{pt.q1, pt.q2, {}};
        for (int i = 0; i < n; ++i) p.z.push_back(pt.z[perm[i]]);
        Q v = body.arity() == 0 ? eval(body, Point{pt.q1, pt.q2, {}}) : eval(body, p);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) v *= zeta(p.z[i] / p.z[j], pt);
        acc += v;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

}  // namespace oracle
