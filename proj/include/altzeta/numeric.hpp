#pragma once
// Arbitrary-precision numeric kernel: evaluation of atoms, nested
// polylogarithms, alternating nested sums, and whole expressions, with
// explicit worst-case error bounds carried through every operation.

#include "altzeta/core.hpp"
#include "altzeta/expr.hpp"
#include "altzeta/index.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace altzeta {

using Float = boost::multiprecision::mpfr_float;

long digits_to_bits(long digits10);
long bits_to_digits(long bits);

// Sets the thread-default mpfr precision (in decimal digits) for the
// lifetime of the scope and restores the previous value afterwards.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits10);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// A value together with the precision it was requested at and a certified
// absolute error bound. Arithmetic combines bounds with worst-case rules and
// adds one rounding ulp per operation.
struct ApproxReal {
    Float value;
    long precision_bits = 0;
    Float error_bound;
    std::string method; // how the value was obtained (metadata, may be empty)

    // Decimal rendering of the value with the given number of digits.
    std::string decimal(long digits10) const;
};

ApproxReal ar_make(Float v, long precision_bits, Float error_bound);
ApproxReal ar_exact(const Rational& r, long precision_bits);
ApproxReal ar_add(const ApproxReal& a, const ApproxReal& b);
ApproxReal ar_sub(const ApproxReal& a, const ApproxReal& b);
ApproxReal ar_mul(const ApproxReal& a, const ApproxReal& b);
ApproxReal ar_neg(ApproxReal a);
ApproxReal ar_scale(const Rational& c, const ApproxReal& a);
ApproxReal ar_pow(const ApproxReal& a, int e); // e >= 0

// Persistent store for pure constants (ln 2, zeta(n), polylogarithms at 1/2).
// File format: one "key<TAB>precision_bits<TAB>decimal_value" line per entry,
// ASCII-sorted by key; rewrites are atomic (temp file + rename). A stored
// value at p bits serves any request at <= p - guard bits.
class ConstantCache {
public:
    static constexpr long kGuardBits = 50;

    // Empty path -> purely in-memory (nothing persisted).
    explicit ConstantCache(std::string path);

    // $ALTZETA_CACHE_FILE if set, else $HOME/.cache/altzeta/constants.tsv.
    static std::string default_path();

    // Returns (decimal_value, stored_bits) when a stored entry satisfies the
    // requested precision including the guard margin.
    std::optional<std::pair<std::string, long>> lookup(const std::string& key,
                                                       long needed_bits);
    void store(const std::string& key, long bits, const std::string& decimal);
    void flush();

    struct Stats {
        long hits = 0;
        long misses = 0;
        long derivations = 0; // values computed from scratch
    };
    Stats stats() const;
    void count_derivation();

private:
    void load_once();

    mutable std::mutex mu_;
    std::string path_;
    bool loaded_ = false;
    bool dirty_ = false;
    std::map<std::string, std::pair<long, std::string>> entries_;
    Stats stats_;
};

struct EvalOptions {
    long precision_bits = 140;      // target precision of results
    ConstantCache* cache = nullptr; // optional persistent constant store

    // Optional rewrite hook for nested-sum atoms: when it returns an
    // expression free of further nested-sum atoms, the atom is evaluated
    // through that expression instead of by summation. Injected by callers
    // so this layer stays independent of the rewrite engine.
    std::function<std::optional<SymExpr>(const SignedIndex&)> closed_form_hook;
};

// Evaluates a single atom at the target precision. Pure constants go through
// the cache when one is supplied.
ApproxReal eval_atom(const ConstAtom& atom, const EvalOptions& opt);

// Nested polylogarithm at argument x over a bar-free index; |x| <= 1/2
// (DomainError outside). Direct summation with a geometric tail bound.
ApproxReal eval_mpl_at(const Rational& x, const SignedIndex& index,
                       const EvalOptions& opt);

// Alternating/plain nested sum over an admissible index, certified to the
// absolute tolerance tol. Dispatches on structure:
//  - barred outer slot, bar-free interior: alternating-series acceleration,
//    certified by doubling the order until two runs agree within tol/4;
//  - unbarred outer slot (exponent >= 2): direct summation with an
//    integral-comparison tail bound;
//  - interior bars: partial-sum extrapolation against an asymptotic basis at
//    two independent checkpoint ladders, certified by cross-agreement
//    within tol/4.
// Raises DomainError for inadmissible indices and AccuracyError (carrying
// the best achieved bound) when certification fails within budget.
ApproxReal eval_alt_outer(const SignedIndex& index, const Float& tol,
                          const EvalOptions& opt);

// Evaluates an expression term by term with propagated bounds.
ApproxReal eval_expr(const SymExpr& expr, const EvalOptions& opt);

} // namespace altzeta
