#include <doctest.h>

#include "oracle.hpp"
#include "tshuf/membership.hpp"

using namespace tshuf;

namespace {

Laurent one(int n = 0) { return Laurent::constant(1, n); }
Laurent q1(int k = 1) { return Laurent::q1_pow(k); }
Laurent q2(int k = 1) { return Laurent::q2_pow(k); }
Laurent x(int i, int n) { return Laurent::z_pow(i - 1, 1, n); }

ShuffleElem random_multiple_of_f(oracle::Sampler& s, int n) {
    Laurent g = oracle::symmetrize(s.laurent(n, 2, 1));
    if (g.is_zero()) g = one(n);
    return ShuffleElem::from_component(g * f_n_poly(n));
}

Laurent reconstruct(const std::vector<ReductionStep>& steps) {
    Laurent total(steps.front().lambda.size());
    for (const auto& st : steps) total += reduction_piece(st.lambda, st.rho);
    return total;
}

}  // namespace

TEST_CASE("partitions") {
    auto names = [](int n) {
        std::vector<std::string> out;
        for (const auto& p : partitions_desc(n)) out.push_back(p.to_string());
        return out;
    };
    CHECK(names(3) == std::vector<std::string>{"(3)", "(2,1)", "(1,1,1)"});
    CHECK(names(1) == std::vector<std::string>{"(1)"});
    CHECK(names(4) == std::vector<std::string>{"(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"});
    for (int n = 1; n <= 6; ++n)
        for (const auto& p : partitions_desc(n)) {
            CHECK(p.transpose().transpose() == p);
            CHECK(p.transpose().size() == n);
            // n_i = #{u : t_u >= i}
            const auto t = p.transpose();
            for (int i = 1; i <= p.length(); ++i) {
                int count = 0;
                for (int tu : t.parts) count += tu >= i;
                CHECK(count == p.parts[i - 1]);
            }
        }
    CHECK_THROWS_AS(make_partition({1, 2}), InvalidArgument);
}

TEST_CASE("string specializations") {
    oracle::Sampler s(61);
    const Laurent R = oracle::symmetrize(s.laurent(3, 3));
    CHECK(phi(R, make_partition({1, 1, 1})) == R);
    CHECK(phi(f_n_poly(2), make_partition({2})).is_zero());
    CHECK(phi(f_n_poly(1), make_partition({1})) == (one() - q2()).with_arity(1));

    // oracle: evaluate R at the string point directly, in both orientations
    for (const auto& lambda : partitions_desc(3)) {
        const auto pt = s.point(lambda.length());
        oracle::Point desc{pt.q1, pt.q2, {}}, asc{pt.q1, pt.q2, {}};
        for (int a = 0; a < lambda.length(); ++a)
            for (int e = 0; e < lambda.parts[a]; ++e) {
                desc.z.push_back(pt.z[a] * oracle::ipow(pt.q2, lambda.parts[a] - 1 - e));
                asc.z.push_back(pt.z[a] * oracle::ipow(pt.q2, e));
            }
        const auto v = oracle::eval(phi(R, lambda), pt);
        CHECK(v == oracle::eval(R, desc));
        CHECK(v == oracle::eval(R, asc));
    }
}

TEST_CASE("divisibility kernel") {
    for (int n = 1; n <= 4; ++n) {
        Partition ones{std::vector<int>(n, 1)};
        CHECK(divisibility_kernel(ones) == (one() - q2()).pow(n).with_arity(n));
    }
    const Laurent zeta_q2 = (one() - q1()) * (one() + q2()) * (one() - q1() * q2());
    CHECK(divisibility_kernel(make_partition({2})) ==
          ((one() - q2()).pow(2) * zeta_q2).with_arity(1));
    const auto cross = divisibility_cross_factors(make_partition({2, 1}));
    REQUIRE(cross.size() == 2);
    CHECK(cross[0] == x(1, 2) * q1() - x(2, 2) * q2(-1));
    CHECK(cross[1] == x(2, 2) * q1() - x(1, 2));
    // both forms of the cross factors agree up to units for every partition
    for (int n = 1; n <= 5; ++n)
        for (const auto& lambda : partitions_desc(n)) CHECK_NOTHROW(divisibility_kernel(lambda));
}

TEST_CASE("pi3") {
    CHECK(pi3(make_partition({1, 1})) ==
          (one(2) - Laurent::ratio(0, 1, 0, 1, 2)) * (one(2) - Laurent::ratio(1, 0, 0, 1, 2)));
    CHECK(pi3(make_partition({2})) == one(1));
    CHECK(pi3(make_partition({2, 1})) ==
          (one(2) - Laurent::ratio(0, 1, 0, 2, 2)) * (one(2) - Laurent::ratio(1, 0, 0, 1, 2)));
}

TEST_CASE("membership of F_n and its multiples") {
    for (int n = 1; n <= 4; ++n) CHECK(is_in_S(f_n(n)).in);
    oracle::Sampler s(67);
    for (int trial = 0; trial < 5; ++trial) CHECK(is_in_S(random_multiple_of_f(s, s.integer(1, 3))).in);
}

TEST_CASE("non-members are rejected with a witness") {
    const auto rep = is_in_S(ShuffleElem::from_component(one(1)));
    CHECK_FALSE(rep.in);
    REQUIRE(rep.lambda);
    CHECK(*rep.lambda == make_partition({1}));
    CHECK(rep.remainder == one(1));
    const Json doc = to_json(rep);
    CHECK(doc["verdict"] == "out");
    CHECK(doc["partition"] == Json::array({1}));

    // (1 - q2)^2 at arity 2 passes (1,1) but fails at (2)
    const auto rep2 = is_in_S(ShuffleElem::from_component((one() - q2()).pow(2).with_arity(2)));
    CHECK_FALSE(rep2.in);
    CHECK(*rep2.lambda == make_partition({2}));

    const auto rep3 = is_in_S(f_n(1).divided(q1() - one()));
    CHECK_FALSE(rep3.in);
    CHECK(is_in_S(f_n(1).scaled(q1() - one()).divided(q1() - one())).in);
}

TEST_CASE("wheel conditions") {
    CHECK(wheel_check(f_n(3)));
    CHECK(wheel_check(f_n(4)));
    CHECK_FALSE(wheel_check(ShuffleElem::from_component(one(3))));
    CHECK_THROWS_AS(wheel_check(f_n(2)), InvalidArgument);
    oracle::Sampler s(71);
    for (int trial = 0; trial < 3; ++trial) {
        const ShuffleElem a = random_multiple_of_f(s, 1);
        const ShuffleElem b = random_multiple_of_f(s, 2);
        const ShuffleElem prod = shuffle_mul(a, b);
        REQUIRE(is_in_S(prod).in);
        CHECK(wheel_check(prod));
    }
}

TEST_CASE("closure under the shuffle product") {
    oracle::Sampler s(73);
    const int shapes[][2] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}};
    for (const auto& sh : shapes) {
        const ShuffleElem a = random_multiple_of_f(s, sh[0]);
        const ShuffleElem b = random_multiple_of_f(s, sh[1]);
        CHECK(is_in_S(shuffle_mul(a, b)).in);
    }
}

TEST_CASE("reduction to generators") {
    {
        const auto steps = reduce_to_generators(f_n(2));
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].lambda == make_partition({1, 1}));
        CHECK(steps[0].rho.is_unit());
        CHECK(reconstruct(steps) == f_n_poly(2));
    }
    {
        const ShuffleElem R =
            ShuffleElem::from_component((one() - q2()).with_arity(1) * Laurent::z_pow(0, 5, 1));
        const auto steps = reduce_to_generators(R);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].lambda == make_partition({1}));
        CHECK(steps[0].rho == Laurent::z_pow(0, 5, 1));
    }
    {
        const ShuffleElem R = shuffle_mul(f_n(1), f_n(1));
        const auto steps = reduce_to_generators(R);
        CHECK(reconstruct(steps) == R.component(2));
    }
    oracle::Sampler s(79);
    for (int trial = 0; trial < 3; ++trial) {
        const ShuffleElem a = random_multiple_of_f(s, 1);
        const ShuffleElem b = random_multiple_of_f(s, 1);
        const ShuffleElem R = shuffle_mul(a, b) + random_multiple_of_f(s, 2);
        CHECK(reconstruct(reduce_to_generators(R)) == R.component(2));
    }
    {
        const ShuffleElem R = shuffle_mul(random_multiple_of_f(s, 1), random_multiple_of_f(s, 2));
        CHECK(reconstruct(reduce_to_generators(R)) == R.component(3));
    }
    CHECK_THROWS_AS(reduce_to_generators(ShuffleElem::from_component(one(1))), NotInS);
}
