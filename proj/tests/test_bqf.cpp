#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace cvl;
using namespace cvl::bqf;

namespace {

std::vector<std::int64_t> fundamentals(std::int64_t bound) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 3; n <= bound; ++n) {
        if (arith::is_fundamental_discriminant(-n)) out.push_back(-n);
    }
    return out;
}

BinaryQuadraticForm act_s(const BinaryQuadraticForm& q) { return {q.c, -q.b, q.a}; }
BinaryQuadraticForm act_t(const BinaryQuadraticForm& q, int k) {
    return {q.a, q.b + 2 * k * q.a, q.a * k * k + q.b * k + q.c};
}

} // namespace

TEST(Reduce, Examples) {
    EXPECT_EQ(reduce_form({1, 1, 2}), (BinaryQuadraticForm{1, 1, 2}));
    EXPECT_EQ(reduce_form({37, 17, 2}), (BinaryQuadraticForm{1, 1, 2}));
    EXPECT_EQ(reduce_form({2, -1, 3}), (BinaryQuadraticForm{2, -1, 3}));
    EXPECT_EQ(reduce_form({3, -1, 2}), (BinaryQuadraticForm{2, 1, 3}));
    EXPECT_EQ(reduce_form({2, -2, 3}), (BinaryQuadraticForm{2, 2, 3}));
    EXPECT_EQ(reduce_form({3, -2, 3}), (BinaryQuadraticForm{3, 2, 3}));
    EXPECT_THROW(reduce_form({-1, 1, -2}), PreconditionError);
}

TEST(Reduce, OutputIsReducedAndMinimal) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dist(-40, 40);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::int64_t a = std::llabs(dist(rng)) + 1, b = dist(rng), c = std::llabs(dist(rng)) + 1;
        if (b * b - 4 * a * c >= 0) continue;
        const BinaryQuadraticForm q{a, b, c};
        const auto r = reduce_form(q);
        ASSERT_TRUE(r.is_reduced()) << q << " -> " << r;
        ASSERT_EQ(r.discriminant(), q.discriminant());
        ASSERT_EQ(r.a, oracle::min_value(q, 40)) << q;
    }
}

TEST(Reduce, IdempotentAndConstantOnOrbits) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> kind(0, 1), shift(-3, 3);
    for (std::int64_t d : fundamentals(500)) {
        for (const auto& q : class_group_representatives(d).representatives) {
            EXPECT_EQ(reduce_form(q), q);
            for (int word = 0; word < 100; ++word) {
                auto w = q;
                for (int letter = 0; letter < 8; ++letter) w = kind(rng) ? act_s(w) : act_t(w, shift(rng));
                if (w.a <= 0) w = act_s(w);
                ASSERT_GT(w.a, 0);
                ASSERT_EQ(reduce_form(w), q) << "D=" << d << " word image " << w;
            }
        }
    }
}

TEST(ClassGroup, Examples) {
    auto c3 = class_group_representatives(-3);
    EXPECT_EQ(c3.h, 1);
    EXPECT_EQ(c3.w, 6);
    EXPECT_EQ(c3.representatives, (std::vector<BinaryQuadraticForm>{{1, 1, 1}}));
    auto c23 = class_group_representatives(-23);
    EXPECT_EQ(c23.h, 3);
    EXPECT_EQ(c23.representatives, (std::vector<BinaryQuadraticForm>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}}));
    EXPECT_EQ(class_group_representatives(-47).h, 5);
    EXPECT_THROW(class_group_representatives(-12), PreconditionError);
    EXPECT_THROW(class_group_representatives(5), PreconditionError);
}

TEST(ClassGroup, SweepMatchesTripleLoopOracle) {
    for (std::int64_t d : fundamentals(2000)) {
        auto got = class_group_representatives(d).representatives;
        auto want = oracle::reduced_forms(d);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        ASSERT_EQ(got, want) << "D=" << d;
    }
}

TEST(ClassGroup, RepresentativesPairwiseInequivalent) {
    for (std::int64_t d : fundamentals(300)) {
        const auto reps = class_group_representatives(d).representatives;
        for (const auto& q : reps) {
            EXPECT_TRUE(q.is_reduced());
            EXPECT_TRUE(q.is_primitive());
            EXPECT_EQ(q.discriminant(), d);
        }
        // Distinct reduced forms are inequivalent; equivalent forms share their value census.
        std::set<std::map<std::int64_t, std::int64_t>> censuses;
        for (const auto& q : reps) censuses.insert(oracle::value_census(q, 3 * std::max<std::int64_t>(-d, 30), 30));
        EXPECT_GE(censuses.size(), (reps.size() + 1) / 2);
        EXPECT_EQ(std::set<BinaryQuadraticForm>(reps.begin(), reps.end()).size(), reps.size());
    }
}

TEST(ClassNumberBatch, Examples) {
    auto t50 = class_number_batch(50);
    EXPECT_EQ(t50.at(-47), 5);
    EXPECT_FALSE(t50.contains(-12));
    EXPECT_THROW(t50.at(-12), std::out_of_range);
    auto t4 = class_number_batch(4);
    EXPECT_EQ(t4.at(-3), 1);
    EXPECT_EQ(t4.at(-4), 1);
    EXPECT_THROW(class_number_batch(2), PreconditionError);
}

TEST(ClassNumberBatch, AgreesWithPerDiscriminantSweep) {
    auto table = class_number_batch(5000);
    auto parallel = class_number_batch(5000, 4);
    for (std::int64_t d : fundamentals(5000)) {
        ASSERT_EQ(table.at(d), class_group_representatives(d).h) << d;
        ASSERT_EQ(parallel.at(d), table.at(d));
    }
    EXPECT_EQ(table.entries().size(), fundamentals(5000).size());
}

TEST(Dirichlet, Examples) {
    EXPECT_EQ(class_number_dirichlet(-7), 1);
    EXPECT_EQ(class_number_dirichlet(-3), 1);
    EXPECT_EQ(class_number_dirichlet(-4), 1);
    EXPECT_THROW(class_number_dirichlet(-9), PreconditionError);
}

TEST(Dirichlet, EqualsSweep) {
    for (std::int64_t d : fundamentals(5000)) ASSERT_EQ(class_number_dirichlet(d), class_group_representatives(d).h) << d;
}

TEST(Lerch, Examples) {
    EXPECT_NEAR(class_number_lerch(-7, 1e-6).value, 1.0, 1e-6);
    EXPECT_NEAR(class_number_lerch(-23, 1e-6).value, 9.0, 1e-6);
    EXPECT_NEAR(class_number_lerch(-11, 1e-6).value, 1.0, 1e-6);
    EXPECT_THROW(class_number_lerch(-7, 1e-16), PrecisionError);
    EXPECT_THROW(class_number_lerch(-7, 0), PreconditionError);
}

TEST(Lerch, SquareOfClassNumber) {
    for (std::int64_t d : fundamentals(200)) {
        const auto h = class_group_representatives(d).h;
        const auto v = class_number_lerch(d, 1e-6);
        ASSERT_NEAR(v.value, static_cast<double>(h * h), 1e-6) << d;
        EXPECT_LT(v.tail_bound, 5e-7);
    }
}

TEST(Exp, Examples) {
    EXPECT_NEAR(class_number_exp(-11, 1e-6).value, 1.0, 1e-6);
    EXPECT_NEAR(class_number_exp(-35, 1e-6).value, 2.0, 1e-6);
    EXPECT_THROW(class_number_exp(-7, 1e-6), PreconditionError);
}

TEST(Exp, ClassNumberForFiveModEight) {
    for (std::int64_t d : fundamentals(500)) {
        if (arith::mod(d, 8) != 5) continue;
        ASSERT_NEAR(class_number_exp(d, 1e-6).value, static_cast<double>(class_group_representatives(d).h), 1e-6) << d;
    }
}

TEST(Compose, Examples) {
    const BinaryQuadraticForm f{2, 1, 3}, g{2, -1, 3};
    EXPECT_EQ(compose(f, f), g);
    EXPECT_EQ(compose(f, g), (BinaryQuadraticForm{1, 1, 6}));
    EXPECT_THROW(compose(f, principal_form(-7)), PreconditionError);
    EXPECT_THROW(compose({2, 2, 2}, {2, 2, 2}), PreconditionError);
}

TEST(Compose, GroupLawsExhaustive) {
    for (std::int64_t d : fundamentals(500)) {
        const auto reps = class_group_representatives(d).representatives;
        const auto e = principal_form(d);
        std::set<BinaryQuadraticForm> members(reps.begin(), reps.end());
        for (const auto& x : reps) {
            ASSERT_EQ(compose(e, x), x);
            ASSERT_EQ(compose(x, reduce_form({x.a, -x.b, x.c})), e);
            for (const auto& y : reps) {
                const auto xy = compose(x, y);
                ASSERT_TRUE(members.count(xy)) << d;
                ASSERT_EQ(xy, compose(y, x));
                for (const auto& z : reps) ASSERT_EQ(compose(xy, z), compose(x, compose(y, z))) << "D=" << d;
            }
        }
    }
}

TEST(Compose, MatchesUnitedFormSearch) {
    for (std::int64_t d : fundamentals(400)) {
        const auto reps = class_group_representatives(d).representatives;
        for (const auto& x : reps) {
            for (const auto& y : reps) ASSERT_EQ(compose(x, y), oracle::compose_by_search(x, y)) << "D=" << d << x << y;
        }
    }
}

TEST(Compose, ValueCensusOfSquareClass) {
    // The classes of f and f^2 at D = -23 represent different primes.
    const BinaryQuadraticForm f{2, 1, 3};
    const auto census = oracle::value_census(compose(f, f), 20);
    EXPECT_EQ(census.count(2), 1u);
    EXPECT_EQ(oracle::value_census(principal_form(-23), 20).count(2), 0u);
}

TEST(HeegnerForms, Examples) {
    EXPECT_EQ(heegner_forms(-7, 37, 17), (std::vector<BinaryQuadraticForm>{{37, 17, 2}}));
    EXPECT_EQ(heegner_forms(-11, 37, 10), (std::vector<BinaryQuadraticForm>{{37, 47, 15}}));
    const auto forms = heegner_forms(-40, 37, 16);
    ASSERT_EQ(forms.size(), 2u);
    for (const auto& q : forms) {
        EXPECT_EQ(q.a % 37, 0);
        EXPECT_EQ(arith::mod(q.b - 16, 37), 0);
        EXPECT_EQ(q.discriminant(), -40);
    }
    EXPECT_THROW(heegner_forms(-3, 37, 1), PreconditionError);
    EXPECT_THROW(heegner_forms(-7, 37, 5), PreconditionError);
    EXPECT_THROW(heegner_forms(-19, 37, 1), PreconditionError);
}

TEST(HeegnerForms, CoverEveryClassForEitherRoot) {
    for (std::int64_t n : {11, 37, 43}) {
        for (std::int64_t d : fundamentals(400)) {
            if (d >= -4 || arith::kronecker(d, n) != 1) continue;
            const std::int64_t b = arith::sqrt_mod(d, n);
            auto classes_of = [&](std::int64_t root) {
                std::multiset<BinaryQuadraticForm> out;
                for (const auto& q : heegner_forms(d, n, root)) {
                    EXPECT_EQ(q.a % n, 0);
                    EXPECT_EQ(arith::mod(q.b - root, n), 0);
                    EXPECT_EQ(q.discriminant(), d);
                    out.insert(reduce_form(q));
                }
                return out;
            };
            const auto first = classes_of(b), second = classes_of(n - b);
            const auto reps = class_group_representatives(d).representatives;
            EXPECT_EQ(first, std::multiset<BinaryQuadraticForm>(reps.begin(), reps.end())) << n << ' ' << d;
            EXPECT_EQ(first, second);
        }
    }
}

TEST(ThreeSquares, Examples) {
    const auto t = three_squares_theta(11);
    EXPECT_EQ(t.coeff(0), Rational(1, 2));
    EXPECT_EQ(t.coeff(3), 4);
    EXPECT_EQ(t.h2(-3), Rational(1, 3));
    EXPECT_EQ(t.coeff(11), 12);
    EXPECT_EQ(t.h2(-11), 1);
    EXPECT_EQ(t.coeff(7), 0);
    EXPECT_EQ(three_squares_theta(0).counts.size(), 1u);
    EXPECT_THROW(three_squares_theta(-1), PreconditionError);
}

TEST(ThreeSquares, MatchesBruteForce) {
    const auto t = three_squares_theta(300, 3);
    for (std::int64_t n = 0; n <= 300; ++n) ASSERT_EQ(t.counts[static_cast<std::size_t>(n)], oracle::three_squares(n)) << n;
}

TEST(ThreeSquares, TwelveTimesClassNumber) {
    const auto t = three_squares_theta(1000);
    for (std::int64_t d : fundamentals(1000)) {
        if (arith::mod(d, 8) != 5) continue;
        const auto c = class_group_representatives(d);
        ASSERT_EQ(t.coeff(-d), Rational(24 * c.h, c.w)) << d;
        if (d != -3) { ASSERT_EQ(t.coeff(-d), 12 * c.h) << d; }
    }
    EXPECT_EQ(t.coeff(3), 4);
}
