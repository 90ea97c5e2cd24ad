#pragma once
// Symbolic rewrite engine: closed forms for the supported families of
// alternating nested zeta values and logarithmic integrals, over the basis
// {ln 2, zeta(n), Li_n(1/2), nested polylogarithms at 1/2}. Every operation
// returns a canonical SymExpr; residual atoms that have no closed form in
// the supported families are kept symbolic, never replaced by numbers.

#include "altzeta/expr.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace altzeta {

// Weight ceiling for all rewrite operations.
inline constexpr int kWeightLimit = 12;

// Basis normalization applied to every rewrite result: expands Li_2(1/2) and
// Li_3(1/2) over {zeta, ln 2} and merges products of even zeta values into a
// single even zeta value via exact Bernoulli ratios. Idempotent.
SymExpr normalize_constants(SymExpr e);

// zeta(s, {1}_ones) for s >= 2, ones >= 0, expressed in Zeta atoms only.
// Backed by an exact bivariate generating-function expansion; weight
// s + ones above the limit raises CapabilityError.
SymExpr adz_reduce(int s, int ones, int weight_limit = kWeightLimit);

// Nested polylog of an all-ones index at 1/2: value ln2^d / d!.
SymExpr mpl_half_all_ones(int depth);

// Nested polylog (2, {1}_m) at 1/2, m >= 0, over {Zeta, Ln2, LiHalf} only.
SymExpr mpl_half_2ones(int m);

// (3, 1) at 1/2, solved from the interleaved-ones relation at (m,k) = (2,1).
SymExpr mpl_half_31();

// Closed form of int_0^1 log^k(u) log^m(1+u)/u du (k >= 0, m >= 1).
// Correction-sum terms carry the sign (-1)^j of their inner index j.
SymExpr closed_I(int k, int m);

// Transcription variant of closed_I whose correction sums carry a uniform
// sign (-1)^k instead; coincides with closed_I for k <= 1. Retained so the
// verification suites can document how the two variants compare.
SymExpr closed_I_uniform_sign(int k, int m);

enum class JVariant { A, B };

// Closed form of int_0^1 log^k(1-t) log^m(1+t)/(1+t) dt (m >= 0).
// Variant A requires k >= 1 (DomainError at k = 0); variant B accepts any
// k >= 0.
SymExpr closed_J(int k, int m, JVariant variant);

// Transcription variant of variant B with the innermost summation bound tied
// to the middle summation variable instead of the outer one. Retained for
// the documentation comparison in the verification suites.
SymExpr closed_J_variantB_short_bound(int k, int m);

// zeta(bar(k+2), {1}_{m-1}) for k >= 0, m >= 1.
SymExpr reduce_head_family(int k, int m);

// zeta(bar1, {1}_{m-1}, bar1, {1}_{k-1}) for m >= 1, k >= 1.
SymExpr reduce_two_bars(int m, int k);

// zeta(bar1, {1}_{m-1}, 2, {1}_{k-1}) for m >= 1, k >= 1, over
// {Zeta, Ln2, LiHalf} only.
SymExpr reduce_interior_two(int m, int k);

// Two-sided relation satisfied by the pair of mirrored indices
// zeta(bar1, {1}_{m-1}, 3, {1}_{k-1}) and zeta(bar1, {1}_{k-1}, 3, {1}_{m-1});
// returned as (LHS, RHS) for numeric certification.
std::pair<SymExpr, SymExpr> relation_interior_three(int m, int k);

// Diagonal m == k of the relation above, solved for the single index
// zeta(bar1, {1}_{k-1}, 3, {1}_{k-1}). Fully closed at k = 1; for k >= 2 the
// mirrored lower-depth indices remain as residual nested-sum atoms.
SymExpr reduce_interior_three_diagonal(int k);

// zeta(bar1, {1}_{m-1}, bar1, bar1, {1}_{k-1}) for m >= 1, k >= 1, over
// {Zeta, Ln2, LiHalf} only.
SymExpr reduce_triple_bar(int m, int k);

// zeta(bar1, {1}_{m-1}, bar1, bar1, bar1, {1}_{k-1}) for m >= 1, k >= 1:
// equals a single nested polylog at 1/2 with sign (-1)^(m+1).
SymExpr map_quad_bar(int m, int k);

// Interleaved-ones relation between nested polylogs at 1/2 and zeta(m+1,{1}_k),
// returned as (LHS, RHS) for m >= 1, k >= 0.
std::pair<SymExpr, SymExpr> relation_61(int m, int k);

// Variant reading with the ones-block of the second sum shortened by one
// (k >= 1). Retained for the documentation comparison.
std::pair<SymExpr, SymExpr> relation_61_inner_variant(int m, int k);

// Solves relation_61(m, k) for its unique unresolved polylog atom, when
// exactly one remains after expanding the resolvable ones. Returns
// (atom, closed form) or nullopt.
std::optional<std::pair<ConstAtom, SymExpr>> relation_61_solve(int m, int k);

// Reference table of closed-form values transcribed verbatim from the
// source tables this library documents. Labels are either index-grammar
// strings ("b1,1,2"), integral names ("I(1,2)", "J(2,1)"), or polylog keys
// ("mplhalf:2,1"). Note two entries of this table disagree with the values
// forced by the recurrences; the verification suites report those
// mismatches rather than silently correcting either side.
const std::vector<std::pair<std::string, SymExpr>>& fixtures();

// Lookup by label; unknown labels raise CapabilityError.
const SymExpr& fixture(const std::string& label);

// Classifies an index into one of the supported rewrite families and
// reduces it. Raises CapabilityError naming the nearest supported family
// when the index matches none, or when its weight exceeds the limit.
// Returns the family name used alongside the reduction.
std::pair<std::string, SymExpr> reduce_index(const SignedIndex& index);

} // namespace altzeta
