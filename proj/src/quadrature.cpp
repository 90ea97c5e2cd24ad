#include "altzeta/quadrature.hpp"

#include <cmath>
#include <vector>

namespace altzeta {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::cosh;
using boost::multiprecision::exp;
using boost::multiprecision::ldexp;
using boost::multiprecision::log;
using boost::multiprecision::log1p;
using boost::multiprecision::pow;
using boost::multiprecision::sinh;

Float pi_value() {
    Float v;
    mpfr_const_pi(v.backend().data(), MPFR_RNDN);
    return v;
}

// One abscissa of the rule at parameter g = (pi/2) sinh(t): returns the
// distances of the node to both endpoints of (0,1) and the weight, all
// computed without cancellation. For t >= 0 the node is u = 1/(1+q) with
// q = exp(-2g); the mirrored node is q/(1+q).
struct Node {
    Float d0;     // distance to 0 of the right-hand node (= the node itself)
    Float d1;     // distance to 1 of the right-hand node
    Float weight; // du weight (includes the map from (-1,1) to (0,1))
};

Node make_node(const Float& t, const Float& half_pi) {
    Float g = half_pi * sinh(t);
    Float q = exp(-2 * g);
    Float denom = 1 + q;
    Node n;
    n.d0 = 1 / denom;
    n.d1 = q / denom;
    // dt weight of tanh transform: (pi/2) cosh(t) / cosh^2(g); the extra 1/2
    // maps (-1,1) onto (0,1).
    Float ch = cosh(g);
    n.weight = half_pi * cosh(t) / (ch * ch) / 2;
    return n;
}

} // namespace

QuadResult tanh_sinh(const Integrand& f, long prec_bits, int max_levels) {
    long wdigits = bits_to_digits(prec_bits) + 12;
    PrecisionScope scope(static_cast<unsigned>(wdigits));
    Float half_pi = pi_value() / 2;

    // Stop once a node's weight alone is below this; integrands here grow at
    // most polynomially in |log d|, which the extra margin absorbs.
    Float weight_floor = ldexp(Float(1), -static_cast<int>(prec_bits + 64));
    Float level_tol = ldexp(Float(1), -static_cast<int>(prec_bits + 8));

    // Range of the summation variable: g grows like exp(t), so t_max only
    // needs to scale with log of the required precision.
    double t_max = std::asinh((static_cast<double>(prec_bits + 80) * 0.6931472) /
                              (2 * 1.5707963)) *
                   1.05;

    Float h = 1;
    Float running = 0; // sum of w*f over all nodes evaluated so far
    {
        Node center = make_node(Float(0), half_pi);
        running = center.weight * f(center.d0, center.d1);
        for (long k = 1; static_cast<double>(k) <= t_max; ++k) {
            Node n = make_node(Float(k), half_pi);
            if (n.weight < weight_floor) break;
            running += n.weight * (f(n.d0, n.d1) + f(n.d1, n.d0));
        }
    }
    Float estimate = h * running;

    QuadResult result;
    result.levels_used = 0;
    for (int level = 1; level <= max_levels; ++level) {
        h /= 2;
        // New nodes at odd multiples of h.
        Float contribution = 0;
        for (long k = 1; static_cast<double>(k) * static_cast<double>(h) <= t_max; k += 2) {
            Node n = make_node(Float(k) * h, half_pi);
            if (n.weight < weight_floor) break;
            contribution += n.weight * (f(n.d0, n.d1) + f(n.d1, n.d0));
        }
        running += contribution;
        Float next = h * running;
        Float diff = abs(next - estimate);
        estimate = next;
        result.levels_used = level;
        if (diff < level_tol) {
            result.converged = true;
            result.value = ar_make(estimate, prec_bits, diff + ldexp(abs(estimate) + 1, -static_cast<int>(prec_bits + 20)));
            result.value.method = "tanh-sinh";
            return result;
        }
        result.value = ar_make(estimate, prec_bits, diff);
    }
    result.converged = false;
    result.value.method = "tanh-sinh";
    return result;
}

QuadResult quad_I(int k, int m, long prec_bits) {
    if (k < 0 || m < 1) throw DomainError("quad_I: requires k >= 0, m >= 1");
    Integrand f = [k, m](const Float& d0, const Float& d1) -> Float {
        // log^k(u) log^m(1+u) / u with u = d0, 1+u = 2-d1.
        Float lu = log(d0);
        Float l1p = log1p(d0); // stable at both ends
        (void)d1;
        return pow(lu, k) * pow(l1p, m) / d0;
    };
    return tanh_sinh(f, prec_bits);
}

QuadResult quad_J(int k, int m, long prec_bits) {
    if (k < 0 || m < 0) throw DomainError("quad_J: requires k >= 0, m >= 0");
    Integrand f = [k, m](const Float& d0, const Float& d1) -> Float {
        // log^k(1-t) log^m(1+t) / (1+t) with t = d0.
        Float lom = log(d1);
        Float l1p = log1p(d0);
        Float onep = 2 - d1; // 1+t without cancellation
        return pow(lom, k) * pow(l1p, m) / onep;
    };
    return tanh_sinh(f, prec_bits);
}

QuadResult quad_T(int m, int k, long prec_bits) {
    if (m < 1 || k < 1) throw DomainError("quad_T: requires m >= 1, k >= 1");
    Integrand f = [m, k](const Float& d0, const Float& d1) -> Float {
        // log^m(t) log^k(1-t) / (1+t) with t = d0.
        Float lt = log(d0);
        Float lom = log(d1);
        Float onep = 2 - d1;
        return pow(lt, m) * pow(lom, k) / onep;
    };
    return tanh_sinh(f, prec_bits);
}

QuadResult quad_logpow(int n, int m, Segment segment, long prec_bits) {
    if (n < 1 || m < 0) throw DomainError("quad_logpow: requires n >= 1, m >= 0");
    Integrand f;
    switch (segment) {
        case Segment::Full:
            f = [n, m](const Float& d0, const Float& d1) -> Float {
                (void)d1;
                return pow(d0, n - 1) * pow(log(d0), m);
            };
            break;
        case Segment::LowerHalf:
            // t = u/2; log t = log u - log 2; dt = du/2.
            f = [n, m](const Float& d0, const Float& d1) -> Float {
                (void)d1;
                Float ln2 = log(Float(2));
                Float t = d0 / 2;
                return pow(t, n - 1) * pow(log(d0) - ln2, m) / 2;
            };
            break;
        case Segment::UpperHalf:
            // t = 1 - d1/2 is smooth here; log t = log1p(-d1/2).
            f = [n, m](const Float& d0, const Float& d1) -> Float {
                (void)d0;
                Float t = 1 - d1 / 2;
                return pow(t, n - 1) * pow(log1p(-d1 / 2), m) / 2;
            };
            break;
    }
    return tanh_sinh(f, prec_bits);
}

} // namespace altzeta
