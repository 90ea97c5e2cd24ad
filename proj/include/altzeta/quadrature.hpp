#pragma once
// Double-exponential (tanh-sinh) quadrature for the logarithmic integrals
// used as independent cross-checks of the closed forms. Integrands receive
// the distances to both interval endpoints computed directly from the
// transformed variable, so endpoint logarithms never lose precision to
// cancellation.

#include "altzeta/numeric.hpp"

namespace altzeta {

struct QuadResult {
    ApproxReal value;
    int levels_used = 0;
    bool converged = false;
};

enum class Segment { Full, LowerHalf, UpperHalf };

// Integrand over (0,1) written in terms of the distances to the endpoints:
// f(d0, d1) with d0 = u and d1 = 1 - u, both computed stably.
using Integrand = std::function<Float(const Float& d0, const Float& d1)>;

// Core rule: integrates f over (0,1), refining by level halving until two
// successive levels agree within 2^-(prec_bits+8), with a 14-level budget.
QuadResult tanh_sinh(const Integrand& f, long prec_bits, int max_levels = 14);

// int_0^1 log^k(u) log^m(1+u) / u du           (k >= 0, m >= 1)
QuadResult quad_I(int k, int m, long prec_bits);

// int_0^1 log^k(1-t) log^m(1+t) / (1+t) dt     (k >= 0, m >= 0)
QuadResult quad_J(int k, int m, long prec_bits);

// int_0^1 log^m(t) log^k(1-t) / (1+t) dt       (m >= 1, k >= 1)
QuadResult quad_T(int m, int k, long prec_bits);

// int t^(n-1) log^m(t) dt over the chosen segment of [0,1]
// (n >= 1, m >= 0).
QuadResult quad_logpow(int n, int m, Segment segment, long prec_bits);

} // namespace altzeta
