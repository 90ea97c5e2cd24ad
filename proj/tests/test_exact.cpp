#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "altzeta/exact.hpp"

#include <random>
#include <vector>

using namespace altzeta;

namespace {

// Independent oracle: brute-force enumeration of the nested tuples. Written
// against the definition only; deliberately ignorant of the DP in exact.cpp.
// Level j ranges over 1..upper, where upper is n for the outermost variable
// and k_{j-1} - 1 (strict) or k_{j-1} (weak) below it.
Rational enum_rec(const SignedIndex& index, bool star, int j, long upper) {
    if (j == index.depth()) return 1;
    Rational total = 0;
    for (long k = 1; k <= upper; ++k) {
        Rational term(1, Integer(pow(Integer(k), static_cast<unsigned>(index.slot(j).exponent))));
        if (index.slot(j).barred && k % 2 != 0) term = -term;
        total += term * enum_rec(index, star, j + 1, star ? k : k - 1);
    }
    return total;
}

Rational enum_nested(const SignedIndex& index, long n, bool star) {
    return enum_rec(index, star, 0, n);
}

} // namespace

TEST_CASE("documented example values") {
    CHECK(mhn(SignedIndex::parse("2,1"), 4) == Rational(17, 32));
    CHECK(mhn(SignedIndex::parse("b1"), 2) == Rational(-1, 2));
    CHECK(mhsn(SignedIndex::parse("1,1"), 2) == Rational(7, 4));
    CHECK(mhsn(SignedIndex::parse("1,b1"), 1) == Rational(-1));
    CHECK(mhn(SignedIndex::parse("1"), 3) == Rational(11, 6));
}

TEST_CASE("empty index and short cutoffs") {
    CHECK(mhn(SignedIndex(), 5) == 1);
    CHECK(mhsn(SignedIndex(), 0) == 1);
    CHECK(mhn(SignedIndex::parse("1,1,1"), 2) == 0); // n < depth
    CHECK(mhn(SignedIndex::parse("2"), 0) == 0);
    CHECK(mhsn(SignedIndex::parse("1,1"), 1) == 1);
}

TEST_CASE("DP agrees with brute-force enumeration on random indices") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> depth_dist(1, 4);
    std::uniform_int_distribution<int> exp_dist(1, 3);
    std::uniform_int_distribution<int> bar_dist(0, 1);
    std::uniform_int_distribution<long> n_dist(0, 12);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Slot> slots;
        int depth = depth_dist(rng);
        for (int i = 0; i < depth; ++i)
            slots.push_back(Slot{exp_dist(rng), bar_dist(rng) == 1});
        SignedIndex idx(slots);
        long n = n_dist(rng);
        CHECK(mhn(idx, n) == enum_nested(idx, n, false));
        CHECK(mhsn(idx, n) == enum_nested(idx, n, true));
    }
}

TEST_CASE("depth-1 strict and star sums coincide") {
    for (int s = 1; s <= 3; ++s) {
        for (int barred = 0; barred <= 1; ++barred) {
            SignedIndex idx({Slot{s, barred == 1}});
            for (long n = 0; n <= 50; ++n) CHECK(mhn(idx, n) == mhsn(idx, n));
        }
    }
}

TEST_CASE("depth-2 product splits into shuffles of the slots") {
    // a-sum times b-sum = (a,b)-sum + (b,a)-sum + (a+b)-sum, for unbarred slots.
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
            for (long n = 1; n <= 20; ++n) {
                Rational prod = mhn(SignedIndex({Slot{a, false}}), n) *
                                mhn(SignedIndex({Slot{b, false}}), n);
                Rational split = mhn(SignedIndex({Slot{a, false}, Slot{b, false}}), n) +
                                 mhn(SignedIndex({Slot{b, false}, Slot{a, false}}), n) +
                                 mhn(SignedIndex({Slot{a + b, false}}), n);
                CHECK(prod == split);
            }
        }
    }
}

TEST_CASE("Stirling cycle numbers: base cases and known rows") {
    CHECK(stirling1(0, 0) == 1);
    CHECK(stirling1(1, 0) == 0);
    CHECK(stirling1(3, 5) == 0);
    CHECK(stirling1(4, 2) == 11);
    CHECK(stirling1(5, 3) == 35);
    CHECK(stirling1(6, 1) == 120); // (n-1)!
    // Row sums equal n!.
    for (int n = 1; n <= 10; ++n) {
        Integer total = 0;
        for (int k = 0; k <= n; ++k) total += stirling1(n, k);
        CHECK(total == factorial(n));
    }
}

TEST_CASE("Stirling numbers equal scaled all-ones harmonic sums") {
    for (int n = 1; n <= 30; ++n)
        for (int k = 1; k <= n; ++k) CHECK(check_stirling_mhn(n, k));
}

TEST_CASE("low-order harmonic-sum specializations of Stirling numbers") {
    // In terms of h = mhn((1), n-1) and the depth-1 power sums at n-1.
    for (int n = 2; n <= 20; ++n) {
        long m = n - 1;
        Rational f = Rational(factorial(n - 1));
        Rational h = mhn(SignedIndex::parse("1"), m);
        Rational p2 = mhn(SignedIndex::parse("2"), m);
        Rational p3 = mhn(SignedIndex::parse("3"), m);
        Rational p4 = mhn(SignedIndex::parse("4"), m);
        CHECK(Rational(stirling1(n, 1)) == f);
        CHECK(Rational(stirling1(n, 2)) == f * h);
        CHECK(Rational(stirling1(n, 3)) == f / 2 * (h * h - p2));
        CHECK(Rational(stirling1(n, 4)) == f / 6 * (h * h * h - 3 * h * p2 + 2 * p3));
        CHECK(Rational(stirling1(n, 5)) ==
              f / 24 * (h * h * h * h - 6 * p4 - 6 * h * h * p2 + 3 * p2 * p2 + 8 * h * p3));
    }
}

TEST_CASE("star-sum binomial identity holds in the weak form") {
    for (int a = 0; a <= 3; ++a)
        for (long n = 1; n <= 25; ++n) CHECK(check_binom_star(n, a));
}

TEST_CASE("strict form of the binomial identity fails at n=1, a=1") {
    // The strict sum over k1 > k2 is empty at n = 1 while the binomial side
    // is not; this pins why the weak (star) reading is the right one.
    SignedIndex idx = SignedIndex::parse("2,1");
    CHECK(mhn(idx, 1) == 0);
    CHECK(mhsn(idx, 1) == 1);
    CHECK(check_binom_star(1, 1));
}

TEST_CASE("memoized lookups return identical values") {
    SignedIndex idx = SignedIndex::parse("b2,1,b1");
    Rational first = mhn(idx, 30);
    Rational second = mhn(idx, 30);
    CHECK(first == second);
    clear_exact_memo();
    CHECK(mhn(idx, 30) == first);
}
