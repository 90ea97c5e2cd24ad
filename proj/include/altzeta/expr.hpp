#pragma once
// Symbolic layer: constant atoms, power-product monomials, and sparse
// rational-linear combinations of monomials. All structural invariants
// (canonical atom forms, sortedness, no zero coefficients) are enforced at
// construction time, so equality of canonical forms is plain equality.

#include "altzeta/core.hpp"
#include "altzeta/index.hpp"

#include <json.hpp>

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace altzeta {

enum class AtomKind {
    Ln2 = 0,   // log 2
    Zeta,      // zeta(n), n >= 2
    LiHalf,    // Li_n(1/2), n >= 2 (n == 1 canonicalizes to Ln2)
    MplHalf,   // nested polylogarithm at x = 1/2 over a bar-free index,
               // depth >= 2 (depth 1 canonicalizes to LiHalf)
    Mzv,       // alternating nested zeta value over an admissible index
};

class ConstAtom {
public:
    static ConstAtom ln2();
    static ConstAtom zeta(int n);                 // n >= 2 or DomainError
    static ConstAtom li_half(int n);              // n >= 1; n == 1 -> ln2()
    static ConstAtom mpl_half(SignedIndex index); // bar-free or DomainError
    static ConstAtom mzv(SignedIndex index);      // admissible or DomainError

    AtomKind kind() const { return kind_; }
    int order() const { return order_; }               // Zeta / LiHalf only
    const SignedIndex& index() const { return index_; } // MplHalf / Mzv only

    int weight() const;

    // Stable identity used by the constant store: "ln2", "zeta:3",
    // "lihalf:4", "mplhalf:2,1", "mzv:b2,1".
    std::string cache_key() const;

    std::string pretty() const;
    nlohmann::json to_json() const; // {"kind": "...", "params": [...]}

    std::strong_ordering operator<=>(const ConstAtom& o) const;
    bool operator==(const ConstAtom& o) const { return (*this <=> o) == 0; }

private:
    ConstAtom(AtomKind kind, int order, SignedIndex index)
        : kind_(kind), order_(order), index_(std::move(index)) {}

    AtomKind kind_;
    int order_ = 0;
    SignedIndex index_;
};

// Sorted power product of distinct atoms with positive exponents; the empty
// product is the constant monomial 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(const ConstAtom& atom, int pow = 1);

    static Monomial one() { return Monomial(); }

    const std::vector<std::pair<ConstAtom, int>>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    int weight() const;

    Monomial operator*(const Monomial& o) const;

    std::strong_ordering operator<=>(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return (*this <=> o) == 0; }

    std::string pretty() const;

private:
    std::vector<std::pair<ConstAtom, int>> factors_;
};

// Sparse sum of monomials with exact rational coefficients. The term map is
// kept canonical at all times: no zero coefficients, monomials unique and
// ordered by the total order on Monomial.
class SymExpr {
public:
    SymExpr() = default; // zero

    static SymExpr zero() { return SymExpr(); }
    static SymExpr constant(const Rational& c);
    static SymExpr atom(const ConstAtom& a, const Rational& coeff = 1);
    static SymExpr monomial(const Monomial& m, const Rational& coeff = 1);
    // Convenience: coeff * ln2^p.
    static SymExpr ln2_pow(int p, const Rational& coeff = 1);

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    // Largest monomial weight present (0 for constants and zero).
    int max_weight() const;

    void add_term(const Monomial& m, const Rational& coeff);

    SymExpr operator+(const SymExpr& o) const;
    SymExpr operator-(const SymExpr& o) const;
    SymExpr operator-() const;
    SymExpr operator*(const SymExpr& o) const;
    SymExpr operator*(const Rational& c) const;
    SymExpr& operator+=(const SymExpr& o);
    SymExpr& operator-=(const SymExpr& o);
    SymExpr pow(int e) const; // e >= 0

    bool operator==(const SymExpr& o) const { return terms_ == o.terms_; }

    // Rebuilds the canonical form from scratch. A no-op on expressions built
    // through the public interface; exposed so round-trips can prove
    // idempotence.
    SymExpr canonicalize() const;

    // True if any monomial contains an atom of the given kind.
    bool contains_kind(AtomKind kind) const;
    std::vector<ConstAtom> atoms_of_kind(AtomKind kind) const;

    // Coefficient of the monomial consisting of exactly the given atom.
    Rational linear_coefficient(const ConstAtom& a) const;

    // Removes every monomial that contains the atom (any power); returns the
    // removed part. Used when solving a relation for one unknown atom.
    SymExpr extract_terms_with(const ConstAtom& a);

    std::string pretty() const;
    nlohmann::json to_json() const; // array of {"coeff": "p/q", "atoms": [...]}

private:
    std::map<Monomial, Rational> terms_;
};

SymExpr operator*(const Rational& c, const SymExpr& e);

} // namespace altzeta
