#include "altzeta/core.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace altzeta {

Integer factorial(int n) {
    if (n < 0) throw DomainError("factorial: negative argument");
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

Rational pow_rational(const Rational& base, int exp) {
    if (exp < 0) throw DomainError("pow_rational: negative exponent");
    Rational r = 1;
    Rational b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

namespace {

// Bernoulli numbers B_0, B_1, ... (B_1 = -1/2), extended on demand via
// B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j.
const Rational& bernoulli(int m) {
    static std::vector<Rational> table = {Rational(1), Rational(-1, 2)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= m) {
        int n = static_cast<int>(table.size());
        Rational acc = 0;
        for (int j = 0; j < n; ++j) {
            acc += Rational(binomial(n + 1, j)) * table[static_cast<size_t>(j)];
        }
        table.push_back(-acc / Rational(n + 1));
    }
    return table[static_cast<size_t>(m)];
}

} // namespace

Rational even_zeta_pi_coefficient(int two_n) {
    if (two_n < 2 || two_n % 2 != 0)
        throw DomainError("even_zeta_pi_coefficient: argument must be even and >= 2");
    int n = two_n / 2;
    // zeta(2n) = (-1)^(n+1) B_{2n} (2 pi)^(2n) / (2 (2n)!)
    Rational c = bernoulli(two_n) * pow_rational(Rational(2), two_n) /
                 (Rational(2) * Rational(factorial(two_n)));
    if (n % 2 == 0) c = -c;
    return c;
}

Rational even_zeta_product_ratio(int two_a, int two_b) {
    return even_zeta_pi_coefficient(two_a) * even_zeta_pi_coefficient(two_b) /
           even_zeta_pi_coefficient(two_a + two_b);
}

std::string rational_to_string(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    Integer den = boost::multiprecision::denominator(r);
    return num.str() + "/" + den.str();
}

Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw ParseError("rational_from_string: zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw ParseError("rational_from_string: cannot parse '" + text + "'");
    }
}

} // namespace altzeta
