#pragma once
// Exact-arithmetic foundations shared across the library: the error taxonomy,
// big-integer/rational aliases, and small combinatorial helpers.

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace altzeta {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Error taxonomy. The CLI maps each type onto a distinct process exit code:
// ParseError/DomainError -> 2, AccuracyError -> 3, CapabilityError -> 4.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Divergent series, argument outside a function's domain, or a violated
// precondition of a documented contract.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The request is outside the supported families or exceeds a stated budget
// (e.g. the weight limit of the rewrite engine).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric routine could not certify the requested tolerance. Carries the
// tightest error bound that was actually achieved, as a decimal string.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, std::string best_bound)
        : std::runtime_error(what), best_bound_(std::move(best_bound)) {}

    const std::string& best_bound() const { return best_bound_; }

private:
    std::string best_bound_;
};

Integer factorial(int n);

// Binomial coefficient; zero when k < 0 or k > n.
Integer binomial(int n, int k);

// base^exp for exp >= 0.
Rational pow_rational(const Rational& base, int exp);

// zeta(2n) = even_zeta_pi_coefficient(2n) * pi^(2n). Exact rational computed
// from the Bernoulli-number recurrence; argument must be even and >= 2.
Rational even_zeta_pi_coefficient(int two_n);

// zeta(2a) * zeta(2b) / zeta(2a + 2b) as an exact rational (both arguments
// even and >= 2). Lets products of even zeta values collapse to a single one.
Rational even_zeta_product_ratio(int two_a, int two_b);

// "p/q" with q >= 1 and gcd(p, q) = 1; integers render as "p/1".
std::string rational_to_string(const Rational& r);

// Inverse of rational_to_string; also accepts a bare integer "p".
Rational rational_from_string(const std::string& text);

} // namespace altzeta
