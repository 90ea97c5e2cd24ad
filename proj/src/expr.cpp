#include "altzeta/expr.hpp"

#include <algorithm>
#include <sstream>

namespace altzeta {

// ---------------------------------------------------------------------------
// ConstAtom

ConstAtom ConstAtom::ln2() { return ConstAtom(AtomKind::Ln2, 0, SignedIndex()); }

ConstAtom ConstAtom::zeta(int n) {
    if (n < 2) throw DomainError("zeta atom requires order >= 2 (got " + std::to_string(n) + ")");
    return ConstAtom(AtomKind::Zeta, n, SignedIndex());
}

ConstAtom ConstAtom::li_half(int n) {
    if (n < 1) throw DomainError("li_half atom requires order >= 1");
    if (n == 1) return ln2(); // Li_1(1/2) = ln 2
    return ConstAtom(AtomKind::LiHalf, n, SignedIndex());
}

ConstAtom ConstAtom::mpl_half(SignedIndex index) {
    if (index.empty()) throw DomainError("mpl_half atom requires a nonempty index");
    if (!index.all_unbarred())
        throw DomainError("mpl_half atom requires a bar-free index (got " + index.to_string() + ")");
    if (index.depth() == 1) return li_half(index.slot(0).exponent);
    return ConstAtom(AtomKind::MplHalf, 0, std::move(index));
}

ConstAtom ConstAtom::mzv(SignedIndex index) {
    if (!index.admissible())
        throw DomainError("mzv atom requires an admissible index, i.e. outer exponent >= 2 "
                          "or == 1 with a bar (got '" + index.to_string() + "')");
    return ConstAtom(AtomKind::Mzv, 0, std::move(index));
}

int ConstAtom::weight() const {
    switch (kind_) {
        case AtomKind::Ln2: return 1;
        case AtomKind::Zeta:
        case AtomKind::LiHalf: return order_;
        case AtomKind::MplHalf:
        case AtomKind::Mzv: return index_.weight();
    }
    return 0;
}

std::string ConstAtom::cache_key() const {
    switch (kind_) {
        case AtomKind::Ln2: return "ln2";
        case AtomKind::Zeta: return "zeta:" + std::to_string(order_);
        case AtomKind::LiHalf: return "lihalf:" + std::to_string(order_);
        case AtomKind::MplHalf: return "mplhalf:" + index_.to_string();
        case AtomKind::Mzv: return "mzv:" + index_.to_string();
    }
    return {};
}

std::string ConstAtom::pretty() const {
    switch (kind_) {
        case AtomKind::Ln2: return "ln2";
        case AtomKind::Zeta: return "zeta(" + std::to_string(order_) + ")";
        case AtomKind::LiHalf: return "Li" + std::to_string(order_) + "(1/2)";
        case AtomKind::MplHalf: return "L(" + index_.to_string() + ";1/2)";
        case AtomKind::Mzv: return "Z(" + index_.to_string() + ")";
    }
    return {};
}

nlohmann::json ConstAtom::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case AtomKind::Ln2:
            j["kind"] = "ln2";
            j["params"] = nlohmann::json::array();
            break;
        case AtomKind::Zeta:
            j["kind"] = "zeta";
            j["params"] = {order_};
            break;
        case AtomKind::LiHalf:
            j["kind"] = "lihalf";
            j["params"] = {order_};
            break;
        case AtomKind::MplHalf: {
            j["kind"] = "mplhalf";
            nlohmann::json p = nlohmann::json::array();
            for (const Slot& s : index_.slots()) p.push_back(s.exponent);
            j["params"] = p;
            break;
        }
        case AtomKind::Mzv: {
            j["kind"] = "mzv";
            nlohmann::json p = nlohmann::json::array();
            for (const Slot& s : index_.slots())
                p.push_back((s.barred ? "b" : "") + std::to_string(s.exponent));
            j["params"] = p;
            break;
        }
    }
    return j;
}

std::strong_ordering ConstAtom::operator<=>(const ConstAtom& o) const {
    if (auto c = kind_ <=> o.kind_; c != 0) return c;
    if (auto c = order_ <=> o.order_; c != 0) return c;
    auto c = index_ <=> o.index_;
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const ConstAtom& atom, int pow) {
    if (pow < 1) throw DomainError("Monomial: powers must be >= 1");
    factors_.emplace_back(atom, pow);
}

int Monomial::weight() const {
    int w = 0;
    for (const auto& [atom, pow] : factors_) w += atom.weight() * pow;
    return w;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    size_t i = 0, j = 0;
    while (i < factors_.size() && j < o.factors_.size()) {
        auto c = factors_[i].first <=> o.factors_[j].first;
        if (c == 0) {
            out.factors_.emplace_back(factors_[i].first,
                                      factors_[i].second + o.factors_[j].second);
            ++i;
            ++j;
        } else if (c < 0) {
            out.factors_.push_back(factors_[i++]);
        } else {
            out.factors_.push_back(o.factors_[j++]);
        }
    }
    while (i < factors_.size()) out.factors_.push_back(factors_[i++]);
    while (j < o.factors_.size()) out.factors_.push_back(o.factors_[j++]);
    return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
    size_t n = std::min(factors_.size(), o.factors_.size());
    for (size_t i = 0; i < n; ++i) {
        if (auto c = factors_[i].first <=> o.factors_[i].first; c != 0) return c;
        if (auto c = factors_[i].second <=> o.factors_[i].second; c != 0) return c;
    }
    return factors_.size() <=> o.factors_.size();
}

std::string Monomial::pretty() const {
    if (factors_.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [atom, pow] : factors_) {
        if (!first) out << "*";
        first = false;
        out << atom.pretty();
        if (pow > 1) out << "^" << pow;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// SymExpr

SymExpr SymExpr::constant(const Rational& c) {
    SymExpr e;
    e.add_term(Monomial::one(), c);
    return e;
}

SymExpr SymExpr::atom(const ConstAtom& a, const Rational& coeff) {
    SymExpr e;
    e.add_term(Monomial(a), coeff);
    return e;
}

SymExpr SymExpr::monomial(const Monomial& m, const Rational& coeff) {
    SymExpr e;
    e.add_term(m, coeff);
    return e;
}

SymExpr SymExpr::ln2_pow(int p, const Rational& coeff) {
    if (p == 0) return constant(coeff);
    return monomial(Monomial(ConstAtom::ln2(), p), coeff);
}

int SymExpr::max_weight() const {
    int w = 0;
    for (const auto& [mono, coeff] : terms_) w = std::max(w, mono.weight());
    return w;
}

void SymExpr::add_term(const Monomial& m, const Rational& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

SymExpr SymExpr::operator+(const SymExpr& o) const {
    SymExpr out = *this;
    out += o;
    return out;
}

SymExpr& SymExpr::operator+=(const SymExpr& o) {
    for (const auto& [mono, coeff] : o.terms_) add_term(mono, coeff);
    return *this;
}

SymExpr SymExpr::operator-(const SymExpr& o) const {
    SymExpr out = *this;
    out -= o;
    return out;
}

SymExpr& SymExpr::operator-=(const SymExpr& o) {
    for (const auto& [mono, coeff] : o.terms_) add_term(mono, -coeff);
    return *this;
}

SymExpr SymExpr::operator-() const {
    SymExpr out;
    for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, -coeff);
    return out;
}

SymExpr SymExpr::operator*(const SymExpr& o) const {
    SymExpr out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

SymExpr SymExpr::operator*(const Rational& c) const {
    SymExpr out;
    if (c == 0) return out;
    for (const auto& [mono, coeff] : terms_) out.terms_.emplace(mono, coeff * c);
    return out;
}

SymExpr operator*(const Rational& c, const SymExpr& e) { return e * c; }

SymExpr SymExpr::pow(int e) const {
    if (e < 0) throw DomainError("SymExpr::pow: negative exponent");
    SymExpr out = constant(1);
    for (int i = 0; i < e; ++i) out = out * (*this);
    return out;
}

SymExpr SymExpr::canonicalize() const {
    SymExpr out;
    for (const auto& [mono, coeff] : terms_) out.add_term(mono, coeff);
    return out;
}

bool SymExpr::contains_kind(AtomKind kind) const {
    for (const auto& [mono, coeff] : terms_)
        for (const auto& [atom, pow] : mono.factors())
            if (atom.kind() == kind) return true;
    return false;
}

std::vector<ConstAtom> SymExpr::atoms_of_kind(AtomKind kind) const {
    std::vector<ConstAtom> out;
    for (const auto& [mono, coeff] : terms_)
        for (const auto& [atom, pow] : mono.factors())
            if (atom.kind() == kind &&
                std::find(out.begin(), out.end(), atom) == out.end())
                out.push_back(atom);
    return out;
}

Rational SymExpr::linear_coefficient(const ConstAtom& a) const {
    auto it = terms_.find(Monomial(a));
    return it == terms_.end() ? Rational(0) : it->second;
}

SymExpr SymExpr::extract_terms_with(const ConstAtom& a) {
    SymExpr removed;
    for (auto it = terms_.begin(); it != terms_.end();) {
        bool has = false;
        for (const auto& [atom, pow] : it->first.factors())
            if (atom == a) { has = true; break; }
        if (has) {
            removed.terms_.emplace(it->first, it->second);
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return removed;
}

std::string SymExpr::pretty() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        Rational c = coeff;
        if (first) {
            if (c < 0) { out << "-"; c = -c; }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        Integer num = boost::multiprecision::numerator(c);
        Integer den = boost::multiprecision::denominator(c);
        bool unit = (num == 1 && den == 1);
        if (!unit || mono.is_one()) {
            out << num.str();
            if (den != 1) out << "/" << den.str();
            if (!mono.is_one()) out << "*";
        }
        if (!mono.is_one()) out << mono.pretty();
    }
    return out.str();
}

nlohmann::json SymExpr::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [mono, coeff] : terms_) {
        nlohmann::json term;
        term["coeff"] = rational_to_string(coeff);
        nlohmann::json atoms = nlohmann::json::array();
        for (const auto& [atom, pow] : mono.factors()) {
            nlohmann::json a = atom.to_json();
            a["pow"] = pow;
            atoms.push_back(a);
        }
        term["atoms"] = atoms;
        arr.push_back(term);
    }
    return arr;
}

} // namespace altzeta
