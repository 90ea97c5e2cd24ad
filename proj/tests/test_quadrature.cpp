#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "altzeta/quadrature.hpp"

using namespace altzeta;

namespace {

Float ref_ln2() {
    Float x;
    mpfr_const_log2(x.backend().data(), MPFR_RNDN);
    return x;
}

Float ref_zeta(unsigned n) {
    Float x;
    mpfr_zeta_ui(x.backend().data(), n, MPFR_RNDN);
    return x;
}

} // namespace

TEST_CASE("core rule on smooth and endpoint-singular integrands") {
    PrecisionScope scope(55);
    long bits = digits_to_bits(45);
    Float tol("1e-40");

    // int_0^1 u du = 1/2
    QuadResult poly = tanh_sinh([](const Float& d0, const Float&) -> Float { return d0; }, bits);
    CHECK(poly.converged);
    CHECK(abs(poly.value.value - Float(1) / 2) < tol);

    // int_0^1 log(u) du = -1 (singular derivative at the left endpoint)
    QuadResult lg =
        tanh_sinh([](const Float& d0, const Float&) -> Float { return log(d0); }, bits);
    CHECK(lg.converged);
    CHECK(abs(lg.value.value - Float(-1)) < tol);

    // int_0^1 log(1-u) du = -1, same singularity mirrored to the right
    // endpoint; d1 keeps full precision there.
    QuadResult lgr =
        tanh_sinh([](const Float&, const Float& d1) -> Float { return log(d1); }, bits);
    CHECK(lgr.converged);
    CHECK(abs(lgr.value.value - Float(-1)) < tol);

    // int_0^1 log^2(u) log(1-u) du = 2 zeta(2) + 2 zeta(3) - 6: both endpoints
    // singular at once.
    Float expected = 2 * ref_zeta(2) + 2 * ref_zeta(3) - 6;
    QuadResult both = tanh_sinh(
        [](const Float& d0, const Float& d1) -> Float { return log(d0) * log(d0) * log(d1); },
        bits);
    CHECK(both.converged);
    CHECK(abs(both.value.value - expected) < tol);
}

TEST_CASE("refinement certifies against the previous level") {
    PrecisionScope scope(45);
    QuadResult lo = tanh_sinh([](const Float& d0, const Float&) -> Float { return log(d0) * log(d0); },
                              digits_to_bits(20));
    QuadResult hi = tanh_sinh([](const Float& d0, const Float&) -> Float { return log(d0) * log(d0); },
                              digits_to_bits(38));
    CHECK(lo.converged);
    CHECK(hi.converged);
    CHECK(hi.levels_used >= lo.levels_used);
    // int log^2 u du = 2
    CHECK(abs(hi.value.value - Float(2)) < Float("1e-35"));
    CHECK(lo.value.error_bound <= Float("1e-18"));
}

TEST_CASE("log-power integrals over segments match elementary antiderivatives") {
    PrecisionScope scope(55);
    long bits = digits_to_bits(45);
    Float tol("1e-40");
    Float ln2 = ref_ln2();

    // int_0^1 t log t dt = -1/4
    CHECK(abs(quad_logpow(2, 1, Segment::Full, bits).value.value - Float(-0.25)) < tol);
    // int_0^(1/2) log t dt = -(ln 2)/2 - 1/2
    CHECK(abs(quad_logpow(1, 1, Segment::LowerHalf, bits).value.value -
              (-ln2 / 2 - Float(0.5))) < tol);
    // int_(1/2)^1 dt = 1/2
    CHECK(abs(quad_logpow(1, 0, Segment::UpperHalf, bits).value.value - Float(0.5)) < tol);
    // int_0^1 t^2 log^2 t dt = 2/27
    CHECK(abs(quad_logpow(3, 2, Segment::Full, bits).value.value - Float(2) / 27) < tol);

    // Segment additivity: lower + upper = full, spot-checked on a sweep.
    for (int n = 1; n <= 4; ++n)
        for (int m = 0; m <= 3; ++m) {
            Float full = quad_logpow(n, m, Segment::Full, bits).value.value;
            Float lower = quad_logpow(n, m, Segment::LowerHalf, bits).value.value;
            Float upper = quad_logpow(n, m, Segment::UpperHalf, bits).value.value;
            CHECK(abs(full - (lower + upper)) < tol);
        }
}

TEST_CASE("logarithmic integrals reproduce their known weight-3 values") {
    PrecisionScope scope(55);
    long bits = digits_to_bits(45);
    Float tol("1e-40");
    Float ln2 = ref_ln2();

    // J(0,0) = ln 2
    CHECK(abs(quad_J(0, 0, bits).value.value - ln2) < tol);
    // J(0,1) = ln^2(2)/2
    CHECK(abs(quad_J(0, 1, bits).value.value - ln2 * ln2 / 2) < tol);
    // I(0,1) = zeta(2)/2
    CHECK(abs(quad_I(0, 1, bits).value.value - ref_zeta(2) / 2) < tol);
    // I(1,1) = -3 zeta(3)/4
    CHECK(abs(quad_I(1, 1, bits).value.value - (-3 * ref_zeta(3) / 4)) < tol);
    // J(1,1) = ln^3(2)/3 - zeta(2) ln(2)/2 + zeta(3)/8
    Float j11 = pow(ln2, 3) / 3 - ref_zeta(2) * ln2 / 2 + ref_zeta(3) / 8;
    CHECK(abs(quad_J(1, 1, bits).value.value - j11) < tol);
}

TEST_CASE("the mixed integral is stable at both endpoints") {
    PrecisionScope scope(55);
    long bits = digits_to_bits(45);
    // T(1,1) = int log(t) log(1-t)/(1+t) dt; reference from a 60-digit run.
    QuadResult lo = quad_T(1, 1, bits);
    QuadResult hi = quad_T(1, 1, digits_to_bits(60));
    CHECK(lo.converged);
    CHECK(hi.converged);
    CHECK(abs(lo.value.value - hi.value.value) < Float("1e-40"));
    // The integrand is positive on (0,1): both logs are negative there.
    CHECK(lo.value.value > 0);
}

TEST_CASE("results carry usable error bounds") {
    PrecisionScope scope(45);
    long bits = digits_to_bits(35);
    QuadResult q = quad_I(1, 2, bits);
    CHECK(q.converged);
    CHECK(q.value.error_bound > 0);
    CHECK(q.value.error_bound < Float("1e-30"));
    QuadResult better = quad_I(1, 2, digits_to_bits(50));
    CHECK(abs(q.value.value - better.value.value) <= q.value.error_bound + better.value.error_bound);
}
