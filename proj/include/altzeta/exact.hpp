#pragma once
// Exact finite nested sums and their cross-identities. These are the
// rational-arithmetic ground truth that both the accelerated numerics and
// the symbolic rewrites are checked against.

#include "altzeta/core.hpp"
#include "altzeta/index.hpp"

namespace altzeta {

// Strict nested harmonic sum over n >= k1 > k2 > ... > k_depth >= 1, each
// barred slot contributing (-1)^(k_j). Empty index -> 1; n < depth -> 0.
Rational mhn(const SignedIndex& index, long n);

// Weak ("star") variant: n >= k1 >= k2 >= ... >= k_depth >= 1.
Rational mhsn(const SignedIndex& index, long n);

// Unsigned Stirling numbers of the first kind (cycle counts):
// s(n, k) = s(n-1, k-1) + (n-1) s(n-1, k), s(0, 0) = 1.
Integer stirling1(int n, int k);

// s(n, k) == (n-1)! * mhn({1}_{k-1}, n-1) for 1 <= k <= n.
bool check_stirling_mhn(int n, int k);

// Star-sum identity against a central-binomial sum:
// mhsn(({2}_a, 1), n) == 2 * sum_{k=1}^{n} C(n,k) / (k^(2a+1) * C(n+k,k)).
bool check_binom_star(long n, int a);

// Drops the internal memo tables (test hook; also used to measure
// re-derivation counts).
void clear_exact_memo();

} // namespace altzeta
