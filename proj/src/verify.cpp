#include "altzeta/verify.hpp"

#include "altzeta/exact.hpp"
#include "altzeta/quadrature.hpp"
#include "altzeta/reduce.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace altzeta {

// ---------------------------------------------------------------------------
// report plumbing

nlohmann::json CaseResult::to_json() const {
    return {{"label", label},   {"params", params},       {"lhs", lhs},
            {"rhs", rhs},       {"residual", residual},   {"tolerance", tolerance},
            {"status", status}};
}

int VerificationReport::count(const char* status) const {
    int n = 0;
    for (const CaseResult& c : cases)
        if (c.status == status) ++n;
    return n;
}

bool VerificationReport::all_passed() const { return count("fail") == 0; }

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const CaseResult& c : cases) arr.push_back(c.to_json());
    return {{"suite", suite},
            {"precision_digits", precision_digits},
            {"totals",
             {{"cases", static_cast<int>(cases.size())},
              {"pass", count("pass")},
              {"fail", count("fail")},
              {"skipped", count("skipped")}}},
            {"wall_seconds", wall_seconds},
            {"cases", arr}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"exact", "quadrature", "fixtures",
                                                   "theorems", "all"};
    return names;
}

// ---------------------------------------------------------------------------
// case helpers

namespace {

struct CaseSpec {
    std::string label;
    std::function<CaseResult()> run;
};

struct Ctx {
    long digits;
    long bits;
    ConstantCache* cache;

    EvalOptions eopt() const {
        EvalOptions o;
        o.precision_bits = bits;
        o.cache = cache;
        return o;
    }
};

std::string dec(const Float& x, long digits) {
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::fmtflags(0));
}

std::string sci(const Float& x) { return x.str(3, std::ios_base::scientific); }

CaseResult numeric_case(std::string label, nlohmann::json params, const Float& lhs,
                        const Float& rhs, const char* tol, long digits) {
    Float resid = abs(lhs - rhs);
    CaseResult r;
    r.label = std::move(label);
    r.params = std::move(params);
    r.lhs = dec(lhs, digits);
    r.rhs = dec(rhs, digits);
    r.residual = sci(resid);
    r.tolerance = tol;
    r.status = (resid <= Float(tol)) ? "pass" : "fail";
    return r;
}

CaseResult exact_case(std::string label, nlohmann::json params, const SymExpr& got,
                      const SymExpr& want) {
    CaseResult r;
    r.label = std::move(label);
    r.params = std::move(params);
    r.lhs = got.pretty();
    r.rhs = want.pretty();
    bool ok = got == want;
    r.residual = ok ? "0" : (got - want).pretty();
    r.tolerance = "0";
    r.status = ok ? "pass" : "fail";
    return r;
}

CaseResult rational_case(std::string label, nlohmann::json params, bool ok,
                         std::string lhs, std::string rhs) {
    CaseResult r;
    r.label = std::move(label);
    r.params = std::move(params);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.residual = ok ? "0" : "mismatch";
    r.tolerance = "0";
    r.status = ok ? "pass" : "fail";
    return r;
}

std::string pad2(int n) { return (n < 10 ? "0" : "") + std::to_string(n); }

Rational rsignq(int n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

SignedIndex one_slot(int exponent, bool barred) {
    return SignedIndex(std::vector<Slot>{Slot{exponent, barred}});
}

// Index-grammar strings for the bar families; double as report parameters.
std::string twobars_str(int m, int k) {
    std::string s = "b1";
    for (int i = 0; i < m - 1; ++i) s += ",1";
    s += ",b1";
    for (int i = 0; i < k - 1; ++i) s += ",1";
    return s;
}

std::string interior_str(int m, int mid, int k) {
    std::string s = "b1";
    for (int i = 0; i < m - 1; ++i) s += ",1";
    s += "," + std::to_string(mid);
    for (int i = 0; i < k - 1; ++i) s += ",1";
    return s;
}

std::string multibar_str(int m, int bars, int k) {
    std::string s = "b1";
    for (int i = 0; i < m - 1; ++i) s += ",1";
    for (int i = 0; i < bars; ++i) s += ",b1";
    for (int i = 0; i < k - 1; ++i) s += ",1";
    return s;
}

Float rat_float(const Rational& r, long bits) { return ar_exact(r, bits).value; }

// ---------------------------------------------------------------------------
// exact suite

void build_exact(std::vector<CaseSpec>& specs, const Ctx& ctx) {
    (void)ctx;
    for (int n = 1; n <= 30; ++n) {
        specs.push_back({"stirling-row:n=" + pad2(n), [n] {
            bool ok = true;
            int bad = 0;
            for (int k = 1; k <= n; ++k)
                if (!check_stirling_mhn(n, k)) { ok = false; bad = k; }
            return rational_case("stirling-row:n=" + pad2(n), {{"n", n}}, ok,
                                 "s(n,k), k=1.." + std::to_string(n),
                                 ok ? "(n-1)! h(1^(k-1); n-1)"
                                    : "mismatch at k=" + std::to_string(bad));
        }});
    }

    // Newton-identity specializations of the Stirling row entries expressed
    // through power sums of reciprocals.
    for (int kind = 1; kind <= 5; ++kind) {
        specs.push_back({"stirling-special:k=" + std::to_string(kind), [kind] {
            bool ok = true;
            std::string got = "ok", want = "ok";
            for (int n = std::max(2, kind); n <= 20 && ok; ++n) {
                auto p = [&](int j) { return mhn(one_slot(j, false), n - 1); };
                Rational lhs, rhs;
                switch (kind) {
                    case 1:
                        lhs = Rational(stirling1(n, 1));
                        rhs = Rational(factorial(n - 1));
                        break;
                    case 2:
                        lhs = Rational(stirling1(n, 2));
                        rhs = Rational(factorial(n - 1)) * p(1);
                        break;
                    case 3:
                        lhs = Rational(stirling1(n, 3));
                        rhs = Rational(factorial(n - 1)) / 2 * (p(1) * p(1) - p(2));
                        break;
                    case 4:
                        lhs = Rational(stirling1(n, 4));
                        rhs = Rational(factorial(n - 1)) / 6 *
                              (p(1) * p(1) * p(1) - 3 * p(1) * p(2) + 2 * p(3));
                        break;
                    case 5:
                        lhs = Rational(stirling1(n, n - 1));
                        rhs = Rational(binomial(n, 2));
                        break;
                }
                if (lhs != rhs) {
                    ok = false;
                    got = "n=" + std::to_string(n) + ": " + rational_to_string(lhs);
                    want = rational_to_string(rhs);
                }
            }
            return rational_case("stirling-special:k=" + std::to_string(kind),
                                 {{"form", kind}}, ok, got, want);
        }});
    }

    for (int a = 0; a <= 3; ++a) {
        specs.push_back({"binom-star:a=" + std::to_string(a), [a] {
            bool ok = true;
            int bad = 0;
            for (long n = 1; n <= 40; ++n)
                if (!check_binom_star(n, a)) { ok = false; bad = static_cast<int>(n); }
            return rational_case("binom-star:a=" + std::to_string(a), {{"a", a}}, ok,
                                 "h*(2^a,1; n), n=1..40",
                                 ok ? "2 sum C(n,k)/(k^(2a+1) C(n+k,k))"
                                    : "mismatch at n=" + std::to_string(bad));
        }});
    }

    // At depth 1 the strict and weak sums coincide.
    for (const char* slot : {"1", "2", "3", "b1", "b2", "b3"}) {
        std::string s(slot);
        specs.push_back({"depth1-star:slot=" + s, [s] {
            SignedIndex idx = SignedIndex::parse(s);
            bool ok = true;
            for (long n = 1; n <= 50 && ok; ++n) ok = mhn(idx, n) == mhsn(idx, n);
            return rational_case("depth1-star:slot=" + s, {{"slot", s}}, ok,
                                 "h(" + s + "; n)", "h*(" + s + "; n)");
        }});
    }

    // Depth-1 quasi-shuffle: the product of two finite sums splits into the
    // two interleavings plus the merged slot (exponents add, bars compose).
    struct StufflePair { const char* a; const char* b; };
    for (StufflePair pr : {StufflePair{"2", "1"}, {"b1", "1"}, {"b1", "b1"},
                           {"b2", "2"}, {"b2", "b1"}}) {
        std::string a(pr.a), b(pr.b);
        specs.push_back({"stuffle:a=" + a + ",b=" + b, [a, b] {
            Slot sa = SignedIndex::parse(a).slot(0);
            Slot sb = SignedIndex::parse(b).slot(0);
            Slot merged{sa.exponent + sb.exponent,
                        static_cast<bool>(sa.barred ^ sb.barred)};
            bool ok = true;
            for (long n = 1; n <= 20 && ok; ++n) {
                Rational lhs = mhn(SignedIndex({sa}), n) * mhn(SignedIndex({sb}), n);
                Rational rhs = mhn(SignedIndex({sa, sb}), n) +
                               mhn(SignedIndex({sb, sa}), n) +
                               mhn(SignedIndex({merged}), n);
                ok = lhs == rhs;
            }
            return rational_case("stuffle:a=" + a + ",b=" + b, {{"a", a}, {"b", b}},
                                 ok, "h(a;n) h(b;n)", "h(a,b;n)+h(b,a;n)+h(a*b;n)");
        }});
    }

    struct SpotValue { const char* index; long n; bool star; const char* value; };
    for (SpotValue sv : {SpotValue{"1", 4, false, "25/12"},
                         {"b1", 4, false, "-7/12"},
                         {"2,1", 3, false, "5/12"},
                         {"2,1", 2, true, "11/8"},
                         {"b2,1", 3, false, "1/12"}}) {
        std::string idx(sv.index), want(sv.value);
        long n = sv.n;
        bool star = sv.star;
        std::string label = std::string("spot-value:") + (star ? "star:" : "") + idx +
                            "@" + std::to_string(n);
        specs.push_back({label, [label, idx, n, star, want] {
            Rational got = star ? mhsn(SignedIndex::parse(idx), n)
                                : mhn(SignedIndex::parse(idx), n);
            return rational_case(label, {{"index", idx}, {"n", n}, {"star", star}},
                                 rational_to_string(got) == want,
                                 rational_to_string(got), want);
        }});
    }
}

// ---------------------------------------------------------------------------
// quadrature suite

void build_quadrature(std::vector<CaseSpec>& specs, const Ctx& ctx) {
    for (int n = 1; n <= 6; ++n)
        for (int m = 0; m <= 4; ++m)
            for (Segment seg : {Segment::Full, Segment::LowerHalf, Segment::UpperHalf}) {
                const char* seg_name = seg == Segment::Full      ? "full"
                                       : seg == Segment::LowerHalf ? "lower"
                                                                   : "upper";
                std::string label = "logpow:n=" + std::to_string(n) +
                                    ",m=" + std::to_string(m) + ",seg=" + seg_name;
                specs.push_back({label, [label, n, m, seg, seg_name, ctx] {
                    PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                    // Closed antiderivative values of int t^(n-1) log^m t dt.
                    Float full = rat_float(rsignq(m) * Rational(factorial(m)), ctx.bits) /
                                 pow(Float(n), m + 1);
                    Float ln2v = log(Float(2));
                    Float lower = 0;
                    for (int l = 0; l <= m; ++l)
                        lower += rat_float(Rational(factorial(l) * binomial(m, l)),
                                           ctx.bits) *
                                 pow(ln2v, m - l) /
                                 (pow(Float(2), n) * pow(Float(n), l + 1));
                    lower *= rat_float(rsignq(m), ctx.bits);
                    Float want = seg == Segment::Full      ? full
                                 : seg == Segment::LowerHalf ? lower
                                                             : full - lower;
                    QuadResult q = quad_logpow(n, m, seg, ctx.bits);
                    return numeric_case(label,
                                        {{"n", n}, {"m", m}, {"segment", seg_name}},
                                        q.value.value, want, kTolQuadMatch, ctx.digits);
                }});
            }

    specs.push_back({"j-ln2", [ctx] {
        PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
        QuadResult q = quad_J(0, 0, ctx.bits);
        return numeric_case("j-ln2", {{"k", 0}, {"m", 0}}, q.value.value,
                            log(Float(2)), kTolQuadMatch, ctx.digits);
    }});

    specs.push_back({"converge:poly", [ctx] {
        PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
        QuadResult q = tanh_sinh([](const Float& d0, const Float&) { return d0; },
                                 ctx.bits);
        CaseResult r = numeric_case("converge:poly", {{"integrand", "t"}},
                                    q.value.value, Float(1) / 2, kTolQuadMatch,
                                    ctx.digits);
        if (!q.converged) r.status = "fail";
        r.params["levels_used"] = q.levels_used;
        return r;
    }});
}

// ---------------------------------------------------------------------------
// fixtures suite

void build_fixtures_suite(std::vector<CaseSpec>& specs, const Ctx& ctx) {
    for (const auto& entry : fixtures()) {
        const std::string& label = entry.first;
        const SymExpr& expr = entry.second;
        specs.push_back({"fixture:" + label, [label, expr, ctx] {
            PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
            EvalOptions eo = ctx.eopt();
            Float rhs = eval_expr(expr, eo).value;
            Float lhs;
            nlohmann::json params;
            params["closed_form"] = expr.pretty();
            if (label.size() > 2 && (label[0] == 'I' || label[0] == 'J') &&
                label[1] == '(') {
                int k = label[2] - '0';
                int m = label[4] - '0';
                QuadResult q = (label[0] == 'I') ? quad_I(k, m, ctx.bits)
                                                 : quad_J(k, m, ctx.bits);
                lhs = q.value.value;
                params["k"] = k;
                params["m"] = m;
                params["evaluated_by"] = "quadrature";
            } else if (label.rfind("mplhalf:", 0) == 0) {
                SignedIndex idx = SignedIndex::parse(label.substr(8));
                lhs = eval_mpl_at(Rational(1, 2), idx, eo).value;
                params["index"] = idx.to_string();
                params["evaluated_by"] = "direct summation";
            } else {
                SignedIndex idx = SignedIndex::parse(label);
                lhs = eval_alt_outer(idx, Float("1e-27"), eo).value;
                params["index"] = idx.to_string();
                params["evaluated_by"] = "accelerated summation";
            }
            return numeric_case("fixture:" + label, std::move(params), lhs, rhs,
                                kTolQuadMatch, ctx.digits);
        }});
    }
}

// ---------------------------------------------------------------------------
// theorems suite

void build_theorems(std::vector<CaseSpec>& specs, const Ctx& ctx) {
    auto eo = [ctx] { return ctx.eopt(); };

    // Explicit closed form of the I integrals against quadrature.
    for (int k = 0; k <= 3; ++k)
        for (int m = 1; m <= 3; ++m) {
            std::string label =
                "head-explicit:k=" + std::to_string(k) + ",m=" + std::to_string(m);
            specs.push_back({label, [label, k, m, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                Float lhs = quad_I(k, m, ctx.bits).value.value;
                Float rhs = eval_expr(closed_I(k, m), e).value;
                return numeric_case(label, {{"k", k}, {"m", m}}, lhs, rhs,
                                    kTolQuadMatch, ctx.digits);
            }});
        }

    // For k >= 2 the two sign readings of the correction sums differ; the
    // alternating one must match quadrature and the uniform one must not.
    for (int k = 2; k <= 3; ++k)
        for (int m = 1; m <= 3; ++m) {
            std::string label =
                "head-sign:k=" + std::to_string(k) + ",m=" + std::to_string(m);
            specs.push_back({label, [label, k, m, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                Float q = quad_I(k, m, ctx.bits).value.value;
                Float alt = eval_expr(closed_I(k, m), e).value;
                Float uni = eval_expr(closed_I_uniform_sign(k, m), e).value;
                CaseResult r = numeric_case(label, {{"k", k}, {"m", m}}, q, alt,
                                            kTolQuadMatch, ctx.digits);
                Float gap = abs(q - uni);
                r.params["uniform_sign_offset"] = sci(gap);
                if (gap < Float(kTolAdjudicationGap)) r.status = "fail";
                return r;
            }});
        }

    // The two derivations of the J integrals agree.
    for (int k = 1; k <= 4; ++k)
        for (int m = 0; m <= 4; ++m) {
            std::string label =
                "j-agree:k=" + std::to_string(k) + ",m=" + std::to_string(m);
            specs.push_back({label, [label, k, m, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                Float a = eval_expr(closed_J(k, m, JVariant::A), e).value;
                Float b = eval_expr(closed_J(k, m, JVariant::B), e).value;
                return numeric_case(label, {{"k", k}, {"m", m}}, a, b,
                                    kTolVariantMatch, ctx.digits);
            }});
        }

    // The innermost summation bound of the B form must run over the outer
    // index; tying it to the middle index loses terms.
    {
        const std::pair<int, int> picks[] = {{1, 0}, {1, 1}, {2, 0}, {2, 1}};
        for (auto [k, m] : picks) {
            std::string label =
                "j-bound:k=" + std::to_string(k) + ",m=" + std::to_string(m);
            specs.push_back({label, [label, k, m, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                Float q = quad_J(k, m, ctx.bits).value.value;
                Float good = eval_expr(closed_J(k, m, JVariant::B), e).value;
                Float cut = eval_expr(closed_J_variantB_short_bound(k, m), e).value;
                CaseResult r = numeric_case(label, {{"k", k}, {"m", m}}, q, good,
                                            kTolQuadMatch, ctx.digits);
                Float gap = abs(q - cut);
                r.params["short_bound_offset"] = sci(gap);
                if (gap < Float(kTolAdjudicationGap)) r.status = "fail";
                return r;
            }});
        }
    }

    // Two-bar family against accelerated summation, and its base forms.
    for (int m = 1; m <= 4; ++m)
        for (int k = 1; m + k <= 5; ++k) {
            std::string idx = twobars_str(m, k);
            std::string label =
                "twobars-num:m=" + std::to_string(m) + ",k=" + std::to_string(k);
            specs.push_back({label, [label, idx, m, k, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                Float lhs = eval_expr(reduce_two_bars(m, k), e).value;
                Float rhs = eval_alt_outer(SignedIndex::parse(idx), Float("1e-10"), e).value;
                return numeric_case(label, {{"index", idx}, {"m", m}, {"k", k}}, lhs,
                                    rhs, kTolAccelMatch, ctx.digits);
            }});
        }
    for (int k = 1; k <= 4; ++k) {
        std::string label = "twobars-base:k=" + std::to_string(k);
        specs.push_back({label, [label, k] {
            // Value -Li_{k+1}(1/2), stated through the normalizer since the
            // k = 1, 2 polylogarithms expand over the basis.
            return exact_case(label, {{"m", 1}, {"k", k}}, reduce_two_bars(1, k),
                              normalize_constants(
                                  SymExpr::atom(ConstAtom::li_half(k + 1), Rational(-1))));
        }});
    }

    // Interior-2 family: numeric certification plus the two tabulated
    // closed forms it must reproduce exactly.
    for (int m = 1; m <= 3; ++m)
        for (int k = 1; m + k <= 4; ++k) {
            std::string idx = interior_str(m, 2, k);
            std::string label =
                "int2-num:m=" + std::to_string(m) + ",k=" + std::to_string(k);
            specs.push_back({label, [label, idx, m, k, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                Float lhs = eval_expr(reduce_interior_two(m, k), e).value;
                Float rhs = eval_alt_outer(SignedIndex::parse(idx), Float("1e-10"), e).value;
                return numeric_case(label, {{"index", idx}, {"m", m}, {"k", k}}, lhs,
                                    rhs, kTolAccelMatch, ctx.digits);
            }});
        }
    specs.push_back({"int2-exact:m=1,k=1", [] {
        return exact_case("int2-exact:m=1,k=1", {{"index", "b1,2"}},
                          reduce_interior_two(1, 1), fixture("b1,2"));
    }});
    specs.push_back({"int2-exact:m=2,k=1", [] {
        return exact_case("int2-exact:m=2,k=1", {{"index", "b1,1,2"}},
                          reduce_interior_two(2, 1), fixture("b1,1,2"));
    }});

    // Interior-3 family: the two-sided relation, its solved diagonal, and
    // the numeric certification of the diagonal's residual form.
    for (int m = 1; m <= 3; ++m)
        for (int k = 1; k <= 3; ++k) {
            std::string label =
                "int3-rel:m=" + std::to_string(m) + ",k=" + std::to_string(k);
            specs.push_back({label, [label, m, k, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                auto [lhs, rhs] = relation_interior_three(m, k);
                Float lv = eval_expr(lhs, e).value;
                Float rv = eval_expr(rhs, e).value;
                return numeric_case(label, {{"m", m}, {"k", k}}, lv, rv, kTolRelation,
                                    ctx.digits);
            }});
        }
    specs.push_back({"int3-diag-exact:k=1", [] {
        return exact_case("int3-diag-exact:k=1", {{"index", "b1,3"}},
                          reduce_interior_three_diagonal(1), fixture("b1,3"));
    }});
    for (int k = 2; k <= 3; ++k) {
        std::string idx = interior_str(k, 3, k);
        std::string label = "int3-diag-num:k=" + std::to_string(k);
        specs.push_back({label, [label, idx, k, ctx, eo] {
            PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
            EvalOptions e = eo();
            Float lhs = eval_expr(reduce_interior_three_diagonal(k), e).value;
            Float rhs = eval_alt_outer(SignedIndex::parse(idx), Float("1e-22"), e).value;
            return numeric_case(label, {{"index", idx}, {"k", k}}, lhs, rhs,
                                kTolRelation, ctx.digits);
        }});
    }

    // Interleaved-ones relation, its reading adjudication, and the solved
    // (3,1) polylog.
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k <= 3; ++k) {
            std::string label =
                "ones-rel:m=" + std::to_string(m) + ",k=" + std::to_string(k);
            specs.push_back({label, [label, m, k, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                auto [lhs, rhs] = relation_61(m, k);
                Float lv = eval_expr(lhs, e).value;
                Float rv = eval_expr(rhs, e).value;
                return numeric_case(label, {{"m", m}, {"k", k}}, lv, rv, kTolRelation,
                                    ctx.digits);
            }});
        }
    {
        const std::pair<int, int> picks[] = {{2, 1}, {3, 1}, {1, 3}, {3, 2}};
        for (auto [m, k] : picks) {
            std::string label =
                "ones-rel-reading:m=" + std::to_string(m) + ",k=" + std::to_string(k);
            specs.push_back({label, [label, m, k, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                auto [lhs, rhs] = relation_61(m, k);
                auto [vl, vr] = relation_61_inner_variant(m, k);
                Float lv = eval_expr(lhs, e).value;
                Float rv = eval_expr(rhs, e).value;
                CaseResult r = numeric_case(label, {{"m", m}, {"k", k}}, lv, rv,
                                            kTolRelation, ctx.digits);
                Float gap = abs(eval_expr(vl, e).value - eval_expr(vr, e).value);
                r.params["shortened_block_offset"] = sci(gap);
                if (gap < Float(kTolAdjudicationGap)) r.status = "fail";
                return r;
            }});
        }
    }
    specs.push_back({"ones-rel-solve:3,1", [] {
        return exact_case("ones-rel-solve:3,1", {{"solved_from", "m=2,k=1"}},
                          mpl_half_31(), fixture("mplhalf:3,1"));
    }});

    // Bar-free generating-function reductions.
    for (int m = 0; m <= 6; ++m) {
        std::string label = "adz-ones:m=" + std::to_string(m);
        specs.push_back({label, [label, m] {
            return exact_case(label, {{"s", 2}, {"ones", m}}, adz_reduce(2, m),
                              SymExpr::atom(ConstAtom::zeta(m + 2)));
        }});
    }
    specs.push_back({"adz-known:3,1", [] {
        return exact_case("adz-known:3,1", {{"s", 3}, {"ones", 1}}, adz_reduce(3, 1),
                          SymExpr::atom(ConstAtom::zeta(4), Rational(1, 4)));
    }});
    for (int s = 2; s <= 8; ++s)
        for (int ones = 0; s + ones <= 8; ++ones) {
            std::string label =
                "adz-dual:s=" + std::to_string(s) + ",ones=" + std::to_string(ones);
            specs.push_back({label, [label, s, ones] {
                return exact_case(label, {{"s", s}, {"ones", ones}},
                                  adz_reduce(s, ones), adz_reduce(ones + 2, s - 2));
            }});
        }

    // Triple-bar family against accelerated summation.
    {
        const std::pair<int, int> picks[] = {{1, 1}, {1, 2}, {2, 1}};
        for (auto [m, k] : picks) {
            std::string idx = multibar_str(m, 2, k);
            std::string label =
                "triplebar-num:m=" + std::to_string(m) + ",k=" + std::to_string(k);
            specs.push_back({label, [label, idx, m, k, ctx, eo] {
                PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
                EvalOptions e = eo();
                Float lhs = eval_expr(reduce_triple_bar(m, k), e).value;
                Float rhs = eval_alt_outer(SignedIndex::parse(idx), Float("1e-10"), e).value;
                return numeric_case(label, {{"index", idx}, {"m", m}, {"k", k}}, lhs,
                                    rhs, kTolAccelMatch, ctx.digits);
            }});
        }
    }

    // Quad-bar map and the T-integral representation.
    specs.push_back({"quadbar-num:m=1,k=1", [ctx, eo] {
        PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
        EvalOptions e = eo();
        Float lhs = eval_expr(map_quad_bar(1, 1), e).value;
        Float rhs = eval_alt_outer(SignedIndex::parse("b1,b1,b1,b1"), Float("1e-10"), e).value;
        return numeric_case("quadbar-num:m=1,k=1", {{"index", "b1,b1,b1,b1"}}, lhs,
                            rhs, kTolAccelMatch, ctx.digits);
    }});
    specs.push_back({"t-repr:m=1,k=1", [ctx, eo] {
        PrecisionScope scope(static_cast<unsigned>(ctx.digits + 15));
        EvalOptions e = eo();
        Float lhs = -quad_T(1, 1, ctx.bits).value.value;
        Float rhs = eval_alt_outer(SignedIndex::parse("b2,b1"), Float("1e-10"), e).value;
        return numeric_case("t-repr:m=1,k=1", {{"index", "b2,b1"}}, lhs, rhs,
                            kTolAccelMatch, ctx.digits);
    }});
}

} // namespace

// ---------------------------------------------------------------------------
// driver

VerificationReport run_suite(const std::string& suite, const VerifyOptions& options) {
    auto t0 = std::chrono::steady_clock::now();
    Ctx ctx{options.digits, digits_to_bits(options.digits), options.cache};

    std::vector<CaseSpec> specs;
    bool known = false;
    if (suite == "exact" || suite == "all") { build_exact(specs, ctx); known = true; }
    if (suite == "quadrature" || suite == "all") { build_quadrature(specs, ctx); known = true; }
    if (suite == "fixtures" || suite == "all") { build_fixtures_suite(specs, ctx); known = true; }
    if (suite == "theorems" || suite == "all") { build_theorems(specs, ctx); known = true; }
    if (!known)
        throw CapabilityError("run_suite: unknown suite '" + suite +
                              "' (expected exact|quadrature|fixtures|theorems|all)");

    std::vector<CaseResult> results(specs.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        for (size_t i; (i = cursor.fetch_add(1)) < specs.size();) {
            try {
                results[i] = specs[i].run();
            } catch (const std::exception& ex) {
                CaseResult r;
                r.label = specs[i].label;
                r.params["error"] = ex.what();
                r.tolerance = "0";
                r.status = "fail";
                results[i] = std::move(r);
            }
        }
    };
    // The big-float backend keeps a single process-wide working precision, so
    // concurrent cases would silently change each other's precision mid-run.
    // Until that is thread-local, every requested job count runs serialized.
    int jobs = 1;
    (void)options.jobs;
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    VerificationReport report;
    report.suite = suite;
    report.precision_digits = options.digits;
    report.cases = std::move(results);
    std::sort(report.cases.begin(), report.cases.end(),
              [](const CaseResult& a, const CaseResult& b) { return a.label < b.label; });
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace altzeta
