// Acceptance gate. Each criterion prints exactly one PASS/FAIL line; the
// binary exits nonzero when any selected criterion fails. Run with no
// arguments for all criteria or with a single number for one of them.
// Tolerances and time budgets are pinned here.

#include "altzeta/exact.hpp"
#include "altzeta/numeric.hpp"
#include "altzeta/quadrature.hpp"
#include "altzeta/reduce.hpp"
#include "altzeta/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace altzeta;

// Pinned gates.
const char* kTolTight = "1e-25";    // quadrature and fixture certification
const char* kTolVariant = "1e-30";  // agreement between transcription variants
const char* kTolSum = "1e-8";       // reductions against direct summation
const char* kTolRelation = "1e-20"; // two-sided relations
constexpr double kFixtureSeconds = 60.0;
constexpr double kExactSeconds = 30.0;
constexpr long kDigits = 40;

ConstantCache& mem_cache() {
    static ConstantCache cache{std::string()};
    return cache;
}

EvalOptions eval_opts(long digits = 45) {
    EvalOptions o;
    o.precision_bits = digits_to_bits(digits);
    o.cache = &mem_cache();
    return o;
}

Float evq(const SymExpr& e) { return eval_expr(e, eval_opts()).value; }

Float evi(const std::string& index, const char* tol) {
    return eval_alt_outer(SignedIndex::parse(index), Float(tol), eval_opts()).value;
}

std::string ones(int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += ",1";
    return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Every reference-table entry matches an independent numeric evaluation
//    of the object it names, to 1e-25 at 40 digits, within 60 seconds.
bool criterion1(std::string& detail) {
    VerifyOptions vo;
    vo.digits = kDigits;
    vo.jobs = 1;
    vo.cache = &mem_cache();
    VerificationReport report = run_suite("fixtures", vo);
    std::ostringstream d;
    d << report.count("pass") << "/" << report.cases.size() << " entries in "
      << report.wall_seconds << " s";
    for (const CaseResult& c : report.cases)
        if (c.status != "pass") d << "; mismatch at " << c.label;
    detail = d.str();
    return report.all_passed() && report.wall_seconds < kFixtureSeconds;
}

// 2. The closed form of the first log-power integral matches quadrature to
//    1e-25 for 0 <= k <= 3, 1 <= m <= 3.
bool criterion2(std::string& detail) {
    PrecisionScope scope(55);
    Float tol(kTolTight);
    long bits = digits_to_bits(45);
    bool ok = true;
    std::ostringstream d;
    for (int k = 0; k <= 3; ++k)
        for (int m = 1; m <= 3; ++m) {
            Float gap = abs(quad_I(k, m, bits).value.value - evq(closed_I(k, m)));
            if (!(gap < tol)) {
                ok = false;
                d << " I(" << k << "," << m << ") off by " << gap.str(3, std::ios_base::scientific);
            }
        }
    detail = ok ? "12 integrals" : d.str();
    return ok;
}

// 3. The two closed forms of the second log-power integral agree to 1e-30
//    for 1 <= k <= 4, 0 <= m <= 4, and the two-single-bar reduction matches
//    direct summation to 1e-8 through weight 5.
bool criterion3(std::string& detail) {
    PrecisionScope scope(55);
    Float vtol(kTolVariant), stol(kTolSum);
    bool ok = true;
    std::ostringstream d;
    for (int k = 1; k <= 4; ++k)
        for (int m = 0; m <= 4; ++m) {
            Float gap = abs(evq(closed_J(k, m, JVariant::A)) - evq(closed_J(k, m, JVariant::B)));
            if (!(gap < vtol)) {
                ok = false;
                d << " J(" << k << "," << m << ") variants split by "
                  << gap.str(3, std::ios_base::scientific);
            }
        }
    for (int m = 1; m <= 4; ++m)
        for (int k = 1; m + k <= 5; ++k) {
            std::string idx = "b1" + ones(m - 1) + ",b1" + ones(k - 1);
            Float gap = abs(evq(reduce_two_bars(m, k)) - evi(idx, "1e-10"));
            if (!(gap < stol)) {
                ok = false;
                d << " " << idx << " off by " << gap.str(3, std::ios_base::scientific);
            }
        }
    detail = ok ? "20 variant pairs, 10 summation checks" : d.str();
    return ok;
}

// 4. The interior-two reduction matches direct summation to 1e-8 for
//    m + k <= 4 and reproduces the depth-2 and depth-3 table entries exactly.
bool criterion4(std::string& detail) {
    PrecisionScope scope(55);
    Float stol(kTolSum);
    bool ok = true;
    std::ostringstream d;
    for (int m = 1; m <= 3; ++m)
        for (int k = 1; m + k <= 4; ++k) {
            std::string idx = "b1" + ones(m - 1) + ",2" + ones(k - 1);
            Float gap = abs(evq(reduce_interior_two(m, k)) - evi(idx, "1e-10"));
            if (!(gap < stol)) {
                ok = false;
                d << " " << idx << " off by " << gap.str(3, std::ios_base::scientific);
            }
        }
    if (reduce_interior_two(1, 1) != fixture("b1,2")) {
        ok = false;
        d << " depth-2 expression mismatch";
    }
    if (reduce_interior_two(2, 1) != fixture("b1,1,2")) {
        ok = false;
        d << " depth-3 expression mismatch";
    }
    detail = ok ? "6 summation checks, 2 exact matches" : d.str();
    return ok;
}

// 5. The two-sided interior-three relation balances to 1e-20 for m, k <= 3,
//    and its diagonal closes exactly at k = 1.
bool criterion5(std::string& detail) {
    PrecisionScope scope(55);
    Float rtol(kTolRelation);
    bool ok = true;
    std::ostringstream d;
    for (int m = 1; m <= 3; ++m)
        for (int k = 1; k <= 3; ++k) {
            auto [lhs, rhs] = relation_interior_three(m, k);
            Float gap = abs(evq(lhs) - evq(rhs));
            if (!(gap < rtol)) {
                ok = false;
                d << " (" << m << "," << k << ") unbalanced by "
                  << gap.str(3, std::ios_base::scientific);
            }
        }
    SymExpr expected =
        SymExpr::atom(ConstAtom::zeta(3), Rational(3, 4)) * SymExpr::ln2_pow(1) +
        SymExpr::atom(ConstAtom::zeta(4), Rational(-5, 16));
    if (reduce_interior_three_diagonal(1) != expected) {
        ok = false;
        d << " diagonal base case is not (3/4) zeta(3) ln2 - (5/16) zeta(4)";
    }
    detail = ok ? "9 relation instances, exact diagonal base" : d.str();
    return ok;
}

// 6. The interleaved-ones relation balances to 1e-20 for m <= 3, k <= 3 and
//    solves at (2,1) for the depth-two polylog at one half, exactly.
bool criterion6(std::string& detail) {
    PrecisionScope scope(55);
    Float rtol(kTolRelation);
    bool ok = true;
    std::ostringstream d;
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k <= 3; ++k) {
            auto [lhs, rhs] = relation_61(m, k);
            Float gap = abs(evq(lhs) - evq(rhs));
            if (!(gap < rtol)) {
                ok = false;
                d << " (" << m << "," << k << ") unbalanced by "
                  << gap.str(3, std::ios_base::scientific);
            }
        }
    auto solved = relation_61_solve(2, 1);
    SymExpr expected = SymExpr::atom(ConstAtom::zeta(4), Rational(1, 8)) -
                       SymExpr::atom(ConstAtom::zeta(3), Rational(1, 8)) * SymExpr::ln2_pow(1) +
                       SymExpr::ln2_pow(4, Rational(1, 24));
    if (!solved || solved->first != ConstAtom::mpl_half(SignedIndex::parse("3,1")) ||
        solved->second != expected) {
        ok = false;
        d << " (2,1) did not solve to zeta(4)/8 - zeta(3) ln2 / 8 + ln^4(2)/24";
    }
    detail = ok ? "12 relation instances, exact solve at (2,1)" : d.str();
    return ok;
}

// 7. Exact-arithmetic identities: Stirling cycle counts against nested
//    harmonic sums (n <= 30), their low-order closed forms (n <= 20), and
//    the star-sum/central-binomial identity (n <= 40, a <= 3), within 30 s.
bool criterion7(std::string& detail) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream d;

    for (int n = 1; n <= 30 && ok; ++n)
        for (int k = 1; k <= n; ++k)
            if (!check_stirling_mhn(n, k)) {
                ok = false;
                d << " stirling identity fails at (" << n << "," << k << ")";
            }

    for (int n = 2; n <= 20; ++n) {
        Rational p1 = 0, p2 = 0, p3 = 0;
        for (int i = 1; i < n; ++i) {
            p1 += Rational(1, i);
            p2 += Rational(1, Integer(i) * i);
            p3 += Rational(1, Integer(i) * i * i);
        }
        Rational f = Rational(factorial(n - 1));
        bool row = Rational(stirling1(n, 1)) == f && Rational(stirling1(n, 2)) == f * p1 &&
                   Rational(stirling1(n, 3)) == f * (p1 * p1 - p2) / 2 &&
                   (n < 4 || Rational(stirling1(n, 4)) ==
                                 f * (p1 * p1 * p1 - 3 * p1 * p2 + 2 * p3) / 6) &&
                   Rational(stirling1(n, n - 1)) == Rational(binomial(n, 2));
        if (!row) {
            ok = false;
            d << " closed form fails at n=" << n;
        }
    }

    for (long n = 1; n <= 40 && ok; ++n)
        for (int a = 0; a <= 3; ++a)
            if (!check_binom_star(n, a)) {
                ok = false;
                d << " star identity fails at (" << n << "," << a << ")";
            }

    double secs = seconds_since(t0);
    if (secs >= kExactSeconds) {
        ok = false;
        d << " exceeded " << kExactSeconds << " s (" << secs << " s)";
    }
    if (ok) {
        std::ostringstream p;
        p << "all rows in " << secs << " s";
        detail = p.str();
    } else {
        detail = d.str();
    }
    return ok;
}

// 8. The plain trailing-ones family reduces through the generating function:
//    (2,{1}_m) collapses to a single zeta, (3,1) to zeta(4)/4, and the
//    mirror symmetry holds through weight 8.
bool criterion8(std::string& detail) {
    bool ok = true;
    std::ostringstream d;
    for (int m = 0; m <= 6; ++m)
        if (adz_reduce(2, m) != SymExpr::atom(ConstAtom::zeta(m + 2))) {
            ok = false;
            d << " (2,{1}_" << m << ") is not zeta(" << m + 2 << ")";
        }
    if (adz_reduce(3, 1) != SymExpr::atom(ConstAtom::zeta(4), Rational(1, 4))) {
        ok = false;
        d << " (3,1) is not zeta(4)/4";
    }
    for (int s = 2; s <= 8; ++s)
        for (int o = 0; s + o <= 8; ++o)
            if (adz_reduce(s, o) != adz_reduce(o + 2, s - 2)) {
                ok = false;
                d << " mirror fails at (" << s << "," << o << ")";
            }
    detail = ok ? "7 collapses, exact (3,1), mirror through weight 8" : d.str();
    return ok;
}

// 9. Log-power moments over the full, lower-half, and upper-half ranges
//    match their elementary closed forms to 1e-25 for n <= 6, m <= 4.
bool criterion9(std::string& detail) {
    PrecisionScope scope(55);
    long bits = digits_to_bits(45);
    Float tol(kTolTight);
    Float ln2;
    mpfr_const_log2(ln2.backend().data(), MPFR_RNDN);
    bool ok = true;
    std::ostringstream d;
    for (int n = 1; n <= 6; ++n)
        for (int m = 0; m <= 4; ++m) {
            Rational full_r = Rational(factorial(m)) * pow_rational(Rational(1, n), m + 1);
            Float full = ar_exact(full_r, bits).value * ((m % 2) ? -1 : 1);
            Float lower = 0;
            for (int l = 0; l <= m; ++l) {
                Rational c = Rational(factorial(l) * binomial(m, l)) *
                             pow_rational(Rational(1, 2), n) *
                             pow_rational(Rational(1, n), l + 1);
                lower += ar_exact(c, bits).value * pow(ln2, m - l);
            }
            if (m % 2) lower = -lower;
            Float upper = full - lower;
            Float g1 = abs(quad_logpow(n, m, Segment::Full, bits).value.value - full);
            Float g2 = abs(quad_logpow(n, m, Segment::LowerHalf, bits).value.value - lower);
            Float g3 = abs(quad_logpow(n, m, Segment::UpperHalf, bits).value.value - upper);
            if (!(g1 < tol && g2 < tol && g3 < tol)) {
                ok = false;
                d << " (n=" << n << ",m=" << m << ") gaps "
                  << g1.str(3, std::ios_base::scientific) << "/"
                  << g2.str(3, std::ios_base::scientific) << "/"
                  << g3.str(3, std::ios_base::scientific);
            }
        }
    detail = ok ? "30 moments, 3 ranges each" : d.str();
    return ok;
}

// 10. The mixed integral represents the double-bar head value, and the
//     triple-adjacent-bar index maps onto its single polylog at one half.
bool criterion10(std::string& detail) {
    PrecisionScope scope(55);
    bool ok = true;
    std::ostringstream d;
    Float t = quad_T(1, 1, digits_to_bits(45)).value.value;
    Float direct = evi("b2,b1", "1e-10");
    Float gap = abs(-t - direct);
    if (!(gap < Float(kTolSum))) {
        ok = false;
        d << " integral representation off by " << gap.str(3, std::ios_base::scientific);
    }
    Float mapped = evq(map_quad_bar(1, 1));
    Float tabulated = evq(fixture("b1,b1,b1,b1"));
    Float gap2 = abs(mapped - tabulated);
    if (!(gap2 < Float(kTolTight))) {
        ok = false;
        d << " polylog image off by " << gap2.str(3, std::ios_base::scientific);
    }
    detail = ok ? "integral and polylog images agree" : d.str();
    return ok;
}

struct Criterion {
    int id;
    const char* what;
    bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "reference table certified against independent numerics (1e-25, 40 digits, <60 s)",
     criterion1},
    {2, "first log-power integral: closed form vs quadrature (1e-25, k<=3, m<=3)", criterion2},
    {3, "second log-power integral variants (1e-30) and two-bar reductions vs summation (1e-8)",
     criterion3},
    {4, "interior-two reductions vs summation (1e-8) and exact table matches", criterion4},
    {5, "interior-three relation balance (1e-20) and exact diagonal base case", criterion5},
    {6, "interleaved-ones relation balance (1e-20) and exact solve at (2,1)", criterion6},
    {7, "exact Stirling/harmonic and star/central-binomial identities (<30 s)", criterion7},
    {8, "plain trailing-ones reductions and mirror symmetry through weight 8", criterion8},
    {9, "log-power moments vs elementary closed forms (1e-25, 3 ranges)", criterion9},
    {10, "mixed-integral and triple-bar polylog representations", criterion10},
};

} // namespace

int main(int argc, char** argv) {
    int selected = 0;
    if (argc > 1) {
        selected = std::atoi(argv[1]);
        if (selected < 1 || selected > 10) {
            std::cerr << "usage: acceptance [1..10]\n";
            return 2;
        }
    }

    bool all_ok = true;
    for (const Criterion& c : kCriteria) {
        if (selected != 0 && c.id != selected) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " - " << c.what;
        if (!detail.empty()) std::cout << " [" << detail << "]";
        std::cout << "\n" << std::flush;
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
