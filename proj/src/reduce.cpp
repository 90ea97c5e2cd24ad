#include "altzeta/reduce.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace altzeta {

namespace {

// --- small expression builders ----------------------------------------------

SymExpr Zx(int n) { return SymExpr::atom(ConstAtom::zeta(n)); }
SymExpr Lix(int n) { return SymExpr::atom(ConstAtom::li_half(n)); }
SymExpr Lnp(int p, const Rational& c = 1) { return SymExpr::ln2_pow(p, c); }
SymExpr Cx(const Rational& c) { return SymExpr::constant(c); }

Rational rfact(int n) { return Rational(factorial(n)); }
Rational rbinom(int n, int k) { return Rational(binomial(n, k)); }
Rational rsign(int n) { return (n % 2 == 0) ? Rational(1) : Rational(-1); }

// Index (first, {1}_ones), bar-free.
SignedIndex tail_ones_index(int first, int ones) {
    std::vector<Slot> slots;
    slots.push_back(Slot{first, false});
    for (int i = 0; i < ones; ++i) slots.push_back(Slot{1, false});
    return SignedIndex(std::move(slots));
}

// Nested polylog at 1/2 over (first, {1}_ones), resolving the closed cases:
// an all-ones index collapses to a log power, a leading 2 goes through
// mpl_half_2ones, anything else stays a residual atom.
SymExpr mpl_tail_ones(int first, int ones) {
    if (first == 1) return mpl_half_all_ones(ones + 1);
    if (first == 2) return mpl_half_2ones(ones);
    return SymExpr::atom(ConstAtom::mpl_half(tail_ones_index(first, ones)));
}

// Alternating nested-sum atom builders for the families handled here. All of
// them have a barred outer slot, so they stay evaluable by acceleration.
SignedIndex bar_head_index(int outer, int ones) {
    std::vector<Slot> slots;
    slots.push_back(Slot{outer, true});
    for (int i = 0; i < ones; ++i) slots.push_back(Slot{1, false});
    return SignedIndex(std::move(slots));
}

// (bar1, {1}_{m-1}, mid, {1}_{k-1}) with an unbarred middle slot.
SignedIndex bar_ones_mid_index(int m, int mid, int k) {
    std::vector<Slot> slots;
    slots.push_back(Slot{1, true});
    for (int i = 0; i < m - 1; ++i) slots.push_back(Slot{1, false});
    slots.push_back(Slot{mid, false});
    for (int i = 0; i < k - 1; ++i) slots.push_back(Slot{1, false});
    return SignedIndex(std::move(slots));
}

// (bar1, {1}_{m-1}, then `bars` consecutive bar1 slots, {1}_{k-1}).
SignedIndex bar_ones_bars_index(int m, int bars, int k) {
    std::vector<Slot> slots;
    slots.push_back(Slot{1, true});
    for (int i = 0; i < m - 1; ++i) slots.push_back(Slot{1, false});
    for (int i = 0; i < bars; ++i) slots.push_back(Slot{1, true});
    for (int i = 0; i < k - 1; ++i) slots.push_back(Slot{1, false});
    return SignedIndex(std::move(slots));
}

// --- memo tables -------------------------------------------------------------

template <typename K>
class Memo {
public:
    std::optional<SymExpr> get(const K& key) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    const SymExpr& put(const K& key, SymExpr value) {
        std::lock_guard<std::mutex> lock(mu_);
        return map_.emplace(key, std::move(value)).first->second;
    }

private:
    std::mutex mu_;
    std::map<K, SymExpr> map_;
};

} // namespace

// ---------------------------------------------------------------------------
// normalize_constants

SymExpr normalize_constants(SymExpr e) {
    // Pass 1: expand Li_2(1/2) and Li_3(1/2) over {zeta, ln 2}.
    static const SymExpr li2 = Zx(2) * Cx(Rational(1, 2)) + Lnp(2, Rational(-1, 2));
    static const SymExpr li3 = Zx(3) * Cx(Rational(7, 8)) +
                               Zx(2) * Lnp(1, Rational(-1, 2)) + Lnp(3, Rational(1, 6));
    SymExpr expanded;
    for (const auto& [mono, coeff] : e.terms()) {
        SymExpr term = Cx(coeff);
        for (const auto& [atom, pow] : mono.factors()) {
            if (atom.kind() == AtomKind::LiHalf && atom.order() == 2)
                term = term * li2.pow(pow);
            else if (atom.kind() == AtomKind::LiHalf && atom.order() == 3)
                term = term * li3.pow(pow);
            else
                term = term * SymExpr::monomial(Monomial(atom, pow));
        }
        expanded += term;
    }

    // Pass 2: merge products of even zeta values into one even zeta value.
    SymExpr out;
    for (const auto& [mono, coeff] : expanded.terms()) {
        std::vector<int> evens;
        Monomial rest;
        for (const auto& [atom, pow] : mono.factors()) {
            if (atom.kind() == AtomKind::Zeta && atom.order() % 2 == 0) {
                for (int i = 0; i < pow; ++i) evens.push_back(atom.order());
            } else {
                rest = rest * Monomial(atom, pow);
            }
        }
        if (evens.size() < 2) {
            out.add_term(mono, coeff);
            continue;
        }
        Rational c = coeff;
        int merged = evens[0];
        for (size_t i = 1; i < evens.size(); ++i) {
            c *= even_zeta_product_ratio(merged, evens[i]);
            merged += evens[i];
        }
        out.add_term(rest * Monomial(ConstAtom::zeta(merged)), c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// adz_reduce: exact bivariate generating-function table

namespace {

using ZMono = std::vector<int>;          // sorted zeta orders, e.g. {2,2,3}
using ZPoly = std::map<ZMono, Rational>; // polynomial in formal zeta symbols
using BiPoly = std::map<std::pair<int, int>, ZPoly>;

void zpoly_add(ZPoly& a, const ZMono& m, const Rational& c) {
    auto it = a.find(m);
    if (it == a.end()) {
        if (c != 0) a.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) a.erase(it);
    }
}

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
    ZPoly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            ZMono m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            std::sort(m.begin(), m.end());
            zpoly_add(out, m, ca * cb);
        }
    return out;
}

BiPoly bipoly_mul(const BiPoly& a, const BiPoly& b, int degree_cap) {
    BiPoly out;
    for (const auto& [ka, pa] : a)
        for (const auto& [kb, pb] : b) {
            int i = ka.first + kb.first;
            int j = ka.second + kb.second;
            if (i + j > degree_cap) continue;
            ZPoly prod = zpoly_mul(pa, pb);
            ZPoly& slot = out[{i, j}];
            for (const auto& [m, c] : prod) zpoly_add(slot, m, c);
        }
    return out;
}

// Table of coefficients of 1 - exp(sum_{n>=2} z_n (x^n + y^n - (x+y)^n)/n)
// truncated at total degree kWeightLimit; entry (i, j) is the value of the
// nested zeta with outer exponent i+1 and j-1 trailing ones.
const BiPoly& adz_table() {
    static const BiPoly table = [] {
        const int W = kWeightLimit;
        BiPoly e; // the exponent series; x^n + y^n - (x+y)^n has no pure powers
        for (int n = 2; n <= W; ++n)
            for (int r = 1; r <= n - 1; ++r)
                zpoly_add(e[{r, n - r}], ZMono{n}, Rational(-binomial(n, r), n));

        BiPoly result; // accumulates -(E + E^2/2! + ...)
        BiPoly power = e;
        Rational inv_fact = 1;
        for (int p = 1; 2 * p <= W; ++p) {
            inv_fact /= p;
            for (const auto& [key, poly] : power) {
                ZPoly& slot = result[key];
                for (const auto& [m, c] : poly) zpoly_add(slot, m, -c * inv_fact);
            }
            if (2 * (p + 1) <= W) power = bipoly_mul(power, e, W);
        }
        return result;
    }();
    return table;
}

} // namespace

SymExpr adz_reduce(int s, int ones, int weight_limit) {
    if (s < 2 || ones < 0) throw DomainError("adz_reduce: requires s >= 2, ones >= 0");
    if (weight_limit > kWeightLimit)
        throw CapabilityError("adz_reduce: weight limit capped at " + std::to_string(kWeightLimit));
    if (s + ones > weight_limit)
        throw CapabilityError("adz_reduce: weight " + std::to_string(s + ones) +
                              " exceeds the limit " + std::to_string(weight_limit));
    const BiPoly& table = adz_table();
    auto it = table.find({s - 1, ones + 1});
    SymExpr out;
    if (it != table.end()) {
        for (const auto& [zmono, coeff] : it->second) {
            Monomial m;
            for (int order : zmono) m = m * Monomial(ConstAtom::zeta(order));
            out.add_term(m, coeff);
        }
    }
    return normalize_constants(std::move(out));
}

// ---------------------------------------------------------------------------
// nested polylogs at 1/2 with closed forms

SymExpr mpl_half_all_ones(int depth) {
    if (depth < 0) throw DomainError("mpl_half_all_ones: negative depth");
    return Lnp(depth, Rational(1) / Rational(factorial(depth)));
}

SymExpr mpl_half_2ones(int m) {
    if (m < 0) throw DomainError("mpl_half_2ones: negative ones count");
    static Memo<int> memo;
    if (auto hit = memo.get(m)) return *hit;

    // Solved recursively from the telescoped partial-fraction identity
    //   sum_{i=1}^{K} (-1)^i i! ln2^{K-i} C(K,i) (zeta(i+1) - V_i)
    //     = (-1)^K K! Li_{K+1}(1/2) - ln2^{K+1},
    // where V_i is this function at i-1 ones; the i = K term isolates V_K.
    int K = m + 1;
    SymExpr rhs = Lix(K + 1) * Cx(rsign(K) * rfact(K)) - Lnp(K + 1);
    for (int i = 1; i <= K - 1; ++i) {
        SymExpr bracket = Zx(i + 1) - mpl_half_2ones(i - 1);
        rhs -= bracket * Cx(rsign(i) * rfact(i) * rbinom(K, i)) * Lnp(K - i);
    }
    SymExpr value = Zx(K + 1) - rhs * Cx(rsign(K) / rfact(K));
    return memo.put(m, normalize_constants(std::move(value)));
}

// ---------------------------------------------------------------------------
// closed integral forms

namespace {

// Shared shape of the explicit I-integral form; sign_on_j selects whether
// the correction sums alternate with the inner summation variable j (the
// form forced by the series expansion) or carry a fixed sign (-1)^k.
SymExpr closed_I_impl(int k, int m, bool sign_on_j) {
    if (k < 0 || m < 1) throw DomainError("closed_I: requires k >= 0, m >= 1");
    if (k + m + 1 > kWeightLimit)
        throw CapabilityError("closed_I: weight " + std::to_string(k + m + 1) +
                              " exceeds the limit " + std::to_string(kWeightLimit));
    int w = m + k;
    SymExpr out = Lnp(w + 1, Rational(1, w + 1)) + Zx(w + 1) * Cx(rfact(w));
    for (int l = 0; l <= w; ++l)
        out -= Lix(l + 1) * Cx(rfact(l) * rbinom(w, l)) * Lnp(w - l);
    for (int j = 1; j <= k; ++j) {
        Rational sign = sign_on_j ? rsign(j) : rsign(k);
        out += (adz_reduce(w + 2 - j, j - 1) + adz_reduce(w + 1 - j, j)) *
               Cx(sign * rfact(j) * rfact(w - j) * rbinom(k, j));
        for (int l = 0; l <= w - j; ++l) {
            out -= (mpl_tail_ones(l + 2, j - 1) + mpl_tail_ones(l + 1, j)) *
                   Cx(sign * rfact(j) * rfact(l) * rbinom(k, j) * rbinom(w - j, l)) *
                   Lnp(w - j - l);
        }
    }
    return normalize_constants(std::move(out));
}

} // namespace

SymExpr closed_I(int k, int m) { return closed_I_impl(k, m, true); }

SymExpr closed_I_uniform_sign(int k, int m) { return closed_I_impl(k, m, false); }

namespace {

SymExpr closed_J_variantB_impl(int k, int m, bool bound_on_i) {
    if (k < 0 || m < 0) throw DomainError("closed_J: requires k >= 0, m >= 0");
    SymExpr out;
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= m; ++j) {
            int l_max = bound_on_i ? i : j;
            for (int l = 0; l <= l_max; ++l) {
                Rational c = rsign(i + j) * rfact(j) * rfact(l) * rbinom(k, i) *
                             rbinom(i, l) * rbinom(m, j);
                if (c == 0) continue;
                out += mpl_tail_ones(l + 1, j) * Cx(c) * Lnp(m + k - j - l);
            }
        }
    return normalize_constants(std::move(out));
}

} // namespace

SymExpr closed_J(int k, int m, JVariant variant) {
    if (k < 0 || m < 0) throw DomainError("closed_J: requires k >= 0, m >= 0");
    if (k + m + 1 > kWeightLimit)
        throw CapabilityError("closed_J: weight " + std::to_string(k + m + 1) +
                              " exceeds the limit " + std::to_string(kWeightLimit));
    if (variant == JVariant::B) return closed_J_variantB_impl(k, m, true);

    if (k < 1) throw DomainError("closed_J variant A: requires k >= 1");
    SymExpr out = Lnp(m + k + 1, Rational(1, m + 1));
    for (int i = 1; i <= k; ++i)
        for (int j = 0; j <= m; ++j) {
            out += adz_reduce(j + 2, i - 1) *
                   Cx(rsign(i + j) * rfact(i) * rfact(j) * rbinom(k, i) * rbinom(m, j)) *
                   Lnp(m + k - i - j);
            for (int l = 0; l <= j; ++l) {
                out -= mpl_tail_ones(l + 2, i - 1) *
                       Cx(rsign(i + j) * rfact(i) * rfact(l) * rbinom(k, i) * rbinom(m, j) *
                          rbinom(j, l)) *
                       Lnp(m + k - i - l);
            }
        }
    return normalize_constants(std::move(out));
}

SymExpr closed_J_variantB_short_bound(int k, int m) {
    return closed_J_variantB_impl(k, m, false);
}

// ---------------------------------------------------------------------------
// family reductions

SymExpr reduce_head_family(int k, int m) {
    if (k < 0 || m < 1) throw DomainError("reduce_head_family: requires k >= 0, m >= 1");
    if (k + m + 1 > kWeightLimit)
        throw CapabilityError("reduce_head_family: weight " + std::to_string(k + m + 1) +
                              " exceeds the limit " + std::to_string(kWeightLimit));
    if (k == 0) {
        // Outer exponent 2: pure {zeta, ln2, LiHalf} combination.
        SymExpr out = Lnp(m + 1, Rational(1) / rfact(m + 1)) + Zx(m + 1) - Lix(m + 1);
        for (int j = 1; j <= m; ++j)
            out -= Lix(j) * Lnp(m + 1 - j, Rational(1) / rfact(m + 1 - j));
        return normalize_constants(out * Cx(rsign(m)));
    }
    if (k == 1) {
        // Outer exponent 3.
        SymExpr core = Zx(m + 2) * Cx(Rational(m)) -
                       Lnp(m + 2, Rational((m + 1) * (m + 1)) / rfact(m + 2)) -
                       adz_reduce(m + 1, 1);
        SymExpr sum_mpl, sum_li;
        for (int l = 0; l <= m; ++l) {
            Rational c = rfact(l) * rbinom(m, l);
            sum_mpl += mpl_tail_ones(l + 1, 1) * Cx(c) * Lnp(m - l);
            sum_li += Lix(l + 2) * Cx(c) * Lnp(m - l);
        }
        SymExpr out = core + sum_mpl * Cx(Rational(1) / rfact(m)) -
                      sum_li * Cx(Rational(1) / rfact(m - 1));
        return normalize_constants(out * Cx(rsign(m + 1)));
    }
    return normalize_constants(closed_I(k, m) * Cx(rsign(m + k) / (rfact(m) * rfact(k))));
}

SymExpr reduce_two_bars(int m, int k) {
    if (m < 1 || k < 1) throw DomainError("reduce_two_bars: requires m >= 1, k >= 1");
    if (m + k > kWeightLimit)
        throw CapabilityError("reduce_two_bars: weight " + std::to_string(m + k) +
                              " exceeds the limit " + std::to_string(kWeightLimit));
    static Memo<std::pair<int, int>> memo;
    auto key = std::make_pair(m, k);
    if (auto hit = memo.get(key)) return *hit;

    SymExpr out;
    if (m == 1) {
        // Leading double bar collapses to a single polylog value.
        out = -Lix(k + 1);
    } else if (k == 1) {
        // Trailing single bar: recursion on the ones-block length, with the
        // m = 1 base handled above.
        out = Lnp(m + 1, Rational(1) / rfact(m)) - Zx(2) * Lnp(m - 1, Rational(1) / rfact(m - 1));
        for (int i = 1; i <= m - 1; ++i)
            out -= reduce_two_bars(m - i, 1) * Lnp(i, Rational(1) / rfact(i));
        SymExpr inner;
        for (int j = 1; j <= m - 1; ++j) {
            SymExpr bracket;
            for (int l = 1; l <= j; ++l)
                bracket += Lix(l + 2) * Cx(rfact(l) * rbinom(j, l)) * Lnp(m - l - 1);
            bracket -= Zx(j + 2) * Cx(rfact(j)) * Lnp(m - j - 1);
            inner += bracket * Cx(rsign(j + 1) * rbinom(m - 1, j));
        }
        out -= inner * Cx(Rational(1) / rfact(m - 1));
    } else if (m == 2) {
        out = SymExpr::atom(ConstAtom::ln2()) * Lix(k + 1) -
              closed_J(k, 1, JVariant::B) * Cx(rsign(k) / rfact(k));
    } else {
        out = closed_J(k, m - 1, JVariant::B) * Cx(rsign(k - 1) / (rfact(k) * rfact(m - 1)));
        for (int i = 1; i <= m - 1; ++i)
            out -= reduce_two_bars(m - i, k) * Lnp(i, Rational(1) / rfact(i));
    }
    return memo.put(key, normalize_constants(std::move(out)));
}

SymExpr reduce_interior_two(int m, int k) {
    if (m < 1 || k < 1) throw DomainError("reduce_interior_two: requires m >= 1, k >= 1");
    if (m + k + 1 > kWeightLimit)
        throw CapabilityError("reduce_interior_two: weight " + std::to_string(m + k + 1) +
                              " exceeds the limit " + std::to_string(kWeightLimit));
    static Memo<std::pair<int, int>> memo;
    auto key = std::make_pair(m, k);
    if (auto hit = memo.get(key)) return *hit;

    SymExpr out = reduce_head_family(0, m + k) * Cx(rsign(m) * rbinom(m + k, k)) -
                  reduce_head_family(0, k) * Lnp(m, Rational(1) / rfact(m));
    for (int i = 1; i <= m - 1; ++i)
        out -= reduce_interior_two(m - i, k) * Lnp(i, Rational(1) / rfact(i));
    return memo.put(key, normalize_constants(std::move(out)));
}

std::pair<SymExpr, SymExpr> relation_interior_three(int m, int k) {
    if (m < 1 || k < 1)
        throw DomainError("relation_interior_three: requires m >= 1, k >= 1");
    auto mzv3 = [](int a, int b) {
        return SymExpr::atom(ConstAtom::mzv(bar_ones_mid_index(a, 3, b)));
    };
    auto head = [](int outer, int x) {
        return SymExpr::atom(ConstAtom::mzv(bar_head_index(outer, x - 1)));
    };

    SymExpr lhs = mzv3(m, k) * Cx(rsign(m)) + mzv3(k, m) * Cx(rsign(k));
    SymExpr rhs = head(3, k) * Cx(rsign(m + 1) / rfact(m)) * Lnp(m) +
                  head(3, m) * Cx(rsign(k + 1) / rfact(k)) * Lnp(k) +
                  head(2, m) * head(2, k);
    for (int i = 1; i <= m - 1; ++i)
        rhs += mzv3(m - i, k) * Cx(rsign(m + 1) / rfact(i)) * Lnp(i);
    for (int i = 1; i <= k - 1; ++i)
        rhs += mzv3(k - i, m) * Cx(rsign(k + 1) / rfact(i)) * Lnp(i);
    return {lhs, rhs};
}

SymExpr reduce_interior_three_diagonal(int k) {
    if (k < 1) throw DomainError("reduce_interior_three_diagonal: requires k >= 1");
    if (2 * k + 2 > kWeightLimit)
        throw CapabilityError("reduce_interior_three_diagonal: weight " +
                              std::to_string(2 * k + 2) + " exceeds the limit " +
                              std::to_string(kWeightLimit));
    SymExpr out;
    for (int i = 1; i <= k - 1; ++i) {
        SymExpr off = SymExpr::atom(ConstAtom::mzv(bar_ones_mid_index(k - i, 3, k)));
        out -= off * Lnp(i, Rational(1) / rfact(i));
    }
    out -= reduce_head_family(1, k) * Lnp(k, Rational(1) / rfact(k));
    out += reduce_head_family(0, k).pow(2) * Cx(rsign(k) / 2);
    return normalize_constants(std::move(out));
}

SymExpr reduce_triple_bar(int m, int k) {
    if (m < 1 || k < 1) throw DomainError("reduce_triple_bar: requires m >= 1, k >= 1");
    if (m + k + 1 > kWeightLimit)
        throw CapabilityError("reduce_triple_bar: weight " + std::to_string(m + k + 1) +
                              " exceeds the limit " + std::to_string(kWeightLimit));
    static Memo<std::pair<int, int>> memo;
    auto key = std::make_pair(m, k);
    if (auto hit = memo.get(key)) return *hit;

    SymExpr core = closed_J(1, k - 1, JVariant::A) * Cx(Rational(k)) * Lnp(m) -
                   closed_J(1, m + k - 1, JVariant::A) * Cx(Rational(m + k));
    SymExpr out = core * Cx(rsign(k - 1) / (rfact(m) * rfact(k)));
    for (int i = 1; i <= m - 1; ++i)
        out -= reduce_triple_bar(m - i, k) * Lnp(i, Rational(1) / rfact(i));
    return memo.put(key, normalize_constants(std::move(out)));
}

SymExpr map_quad_bar(int m, int k) {
    if (m < 1 || k < 1) throw DomainError("map_quad_bar: requires m >= 1, k >= 1");
    if (m + k + 2 > kWeightLimit)
        throw CapabilityError("map_quad_bar: weight " + std::to_string(m + k + 2) +
                              " exceeds the limit " + std::to_string(kWeightLimit));
    std::vector<Slot> slots;
    slots.push_back(Slot{k + 1, false});
    slots.push_back(Slot{2, false});
    for (int i = 0; i < m - 1; ++i) slots.push_back(Slot{1, false});
    return SymExpr::atom(ConstAtom::mpl_half(SignedIndex(std::move(slots))), rsign(m + 1));
}

// ---------------------------------------------------------------------------
// interleaved-ones relation

namespace {

std::pair<SymExpr, SymExpr> relation_61_impl(int m, int k, int second_block_ones) {
    SymExpr lhs;
    for (int l = 0; l <= k; ++l)
        lhs += SymExpr::atom(ConstAtom::mpl_half(tail_ones_index(l + 2, m - 1))) *
               Cx(rfact(m) * rfact(l) * rbinom(k, l)) * Lnp(k - l);
    for (int l = 0; l <= m; ++l)
        lhs += SymExpr::atom(ConstAtom::mpl_half(tail_ones_index(l + 1, second_block_ones))) *
               Cx(rfact(k) * rfact(l) * rbinom(m, l)) * Lnp(m - l);
    SymExpr rhs = adz_reduce(m + 1, k) * Cx(rfact(m) * rfact(k));
    return {lhs, rhs};
}

} // namespace

std::pair<SymExpr, SymExpr> relation_61(int m, int k) {
    if (m < 1 || k < 0) throw DomainError("relation_61: requires m >= 1, k >= 0");
    if (m + k + 1 > kWeightLimit)
        throw CapabilityError("relation_61: weight " + std::to_string(m + k + 1) +
                              " exceeds the limit " + std::to_string(kWeightLimit));
    return relation_61_impl(m, k, k);
}

std::pair<SymExpr, SymExpr> relation_61_inner_variant(int m, int k) {
    if (m < 1 || k < 1)
        throw DomainError("relation_61_inner_variant: requires m >= 1, k >= 1");
    return relation_61_impl(m, k, k - 1);
}

namespace {

SymExpr substitute_atom(const SymExpr& e, const ConstAtom& a, const SymExpr& rep) {
    SymExpr out;
    for (const auto& [mono, coeff] : e.terms()) {
        SymExpr term = Cx(coeff);
        Monomial rest;
        for (const auto& [atom, pow] : mono.factors()) {
            if (atom == a)
                term = term * rep.pow(pow);
            else
                rest = rest * Monomial(atom, pow);
        }
        out += term * SymExpr::monomial(rest);
    }
    return out;
}

// Replaces every resolvable polylog atom (all-ones, or leading 2 with a
// trailing ones block) by its closed form.
SymExpr resolve_known_mpl(SymExpr e) {
    for (bool changed = true; changed;) {
        changed = false;
        for (const ConstAtom& atom : e.atoms_of_kind(AtomKind::MplHalf)) {
            const SignedIndex& idx = atom.index();
            bool tail_is_ones = true;
            for (int j = 1; j < idx.depth(); ++j)
                if (idx.slot(j).exponent != 1) tail_is_ones = false;
            if (!tail_is_ones) continue;
            int first = idx.slot(0).exponent;
            if (first > 2) continue;
            SymExpr rep = (first == 1) ? mpl_half_all_ones(idx.depth())
                                       : mpl_half_2ones(idx.depth() - 1);
            e = substitute_atom(e, atom, rep);
            changed = true;
            break;
        }
    }
    return e;
}

} // namespace

std::optional<std::pair<ConstAtom, SymExpr>> relation_61_solve(int m, int k) {
    auto [lhs, rhs] = relation_61(m, k);
    SymExpr residual = resolve_known_mpl(lhs - rhs);
    std::vector<ConstAtom> unknowns = residual.atoms_of_kind(AtomKind::MplHalf);
    if (unknowns.size() != 1) return std::nullopt;
    const ConstAtom& target = unknowns[0];
    SymExpr pulled = residual.extract_terms_with(target);
    // Solvable only when the unknown appears as a bare linear term.
    Rational c = pulled.linear_coefficient(target);
    SymExpr check = SymExpr::atom(target, c);
    if (!(pulled == check) || c == 0) return std::nullopt;
    SymExpr solution = normalize_constants(residual * Cx(Rational(-1) / c));
    return std::make_pair(target, std::move(solution));
}

SymExpr mpl_half_31() {
    static std::once_flag flag;
    static SymExpr cached;
    std::call_once(flag, [] {
        auto solved = relation_61_solve(2, 1);
        if (!solved || !(solved->first == ConstAtom::mpl_half(tail_ones_index(3, 1))))
            throw CapabilityError("mpl_half_31: relation did not isolate the expected atom");
        cached = solved->second;
    });
    return cached;
}

// ---------------------------------------------------------------------------
// fixtures

namespace {

std::vector<std::pair<std::string, SymExpr>> build_fixtures() {
    std::vector<std::pair<std::string, SymExpr>> out;
    auto add = [&](const char* label, SymExpr e) { out.emplace_back(label, std::move(e)); };
    SymExpr ln2 = SymExpr::atom(ConstAtom::ln2());

    // Logarithmic integrals.
    add("J(0,1)", Lnp(2, Rational(1, 2)));
    add("I(1,1)", Zx(3) * Cx(Rational(-3, 4)));
    add("J(1,1)", Lnp(3, Rational(1, 3)) - Zx(2) * ln2 * Cx(Rational(1, 2)) +
                      Zx(3) * Cx(Rational(1, 8)));
    add("J(2,1)", Lnp(4, Rational(1, 4)) + Zx(3) * ln2 * Cx(Rational(2)) -
                      Zx(2) * Lnp(2) - Zx(4) * Cx(Rational(1, 4)));
    add("I(0,3)", Zx(4) * Cx(Rational(6)) + Zx(2) * Lnp(2, Rational(3, 2)) -
                      Lnp(4, Rational(1, 4)) - Zx(3) * ln2 * Cx(Rational(21, 4)) -
                      Lix(4) * Cx(Rational(6)));
    add("I(1,2)", Zx(4) * Cx(Rational(15, 4)) + Zx(2) * Lnp(2) - Lnp(4, Rational(1, 6)) -
                      Zx(3) * ln2 * Cx(Rational(7, 2)) - Lix(4) * Cx(Rational(4)));
    add("J(1,2)", Lnp(4, Rational(1, 3)) + Zx(3) * ln2 * Cx(Rational(2)) +
                      Lix(4) * Cx(Rational(2)) - Zx(2) * Lnp(2) - Zx(4) * Cx(Rational(2)));
    add("I(0,4)", Lix(5) * Cx(Rational(-24)) - Lix(4) * ln2 * Cx(Rational(24)) -
                      Lnp(5, Rational(4, 5)) - Zx(3) * Lnp(2, Rational(21, 2)) +
                      Zx(5) * Cx(Rational(24)) + Zx(2) * Lnp(3, Rational(4)));

    // Alternating nested zeta values.
    add("b1,1,b1", Zx(3) * Cx(Rational(1, 8)) - Lnp(3, Rational(1, 6)));
    add("b1,2", Zx(2) * ln2 * Cx(Rational(1, 2)) - Zx(3) * Cx(Rational(1, 4)));
    add("b1,3", Zx(3) * ln2 * Cx(Rational(3, 4)) - Zx(4) * Cx(Rational(5, 16)));
    add("b2,1,1", Lix(4) + Lnp(4, Rational(1, 24)) + Zx(3) * ln2 * Cx(Rational(7, 8)) -
                      Zx(2) * Lnp(2, Rational(1, 4)) - Zx(4));
    add("b1,1,2", Lix(4) * Cx(Rational(3)) + Lnp(4, Rational(1, 8)) +
                      Zx(3) * ln2 * Cx(Rational(23, 8)) - Zx(2) * Lnp(2) -
                      Zx(4) * Cx(Rational(3)));
    add("b1,1,1,b1", Lix(4) + Lnp(4, Rational(1, 12)) + Zx(3) * ln2 * Cx(Rational(7, 8)) -
                         Zx(2) * Lnp(2, Rational(1, 2)) - Zx(4));

    // Nested polylogs at 1/2.
    add("mplhalf:2", Zx(2) * Cx(Rational(1, 2)) - Lnp(2, Rational(1, 2)));
    add("mplhalf:2,1", Zx(3) * Cx(Rational(1, 8)) - Lnp(3, Rational(1, 6)));
    add("mplhalf:2,1,1", Zx(4) + Zx(2) * Lnp(2, Rational(1, 4)) - Lix(4) -
                             Lnp(4, Rational(1, 12)) - Zx(3) * ln2 * Cx(Rational(7, 8)));
    add("mplhalf:3,1", Zx(4) * Cx(Rational(1, 8)) - Zx(3) * ln2 * Cx(Rational(1, 8)) +
                           Lnp(4, Rational(1, 24)));

    // Deeper bar patterns.
    add("b1,b1,b1,b1", Lnp(4, Rational(1, 24)) + Zx(3) * ln2 * Cx(Rational(1, 4)) -
                           Zx(2) * Lnp(2, Rational(1, 4)) + Zx(4) * Cx(Rational(1, 16)));
    add("b1,b1,b1,1", Lix(4) * Cx(Rational(3)) + Lnp(4, Rational(1, 6)) +
                          Zx(3) * ln2 * Cx(Rational(23, 8)) - Zx(2) * Lnp(2) -
                          Zx(4) * Cx(Rational(3)));
    add("b1,1,b1,b1", Lix(4) * Cx(Rational(-3)) - Lnp(4, Rational(1, 12)) -
                          Zx(3) * ln2 * Cx(Rational(11, 4)) -
                          Zx(2) * Lnp(2, Rational(3, 4)) + Zx(4) * Cx(Rational(3)));
    return out;
}

} // namespace

const std::vector<std::pair<std::string, SymExpr>>& fixtures() {
    static const std::vector<std::pair<std::string, SymExpr>> table = build_fixtures();
    return table;
}

const SymExpr& fixture(const std::string& label) {
    for (const auto& [name, expr] : fixtures())
        if (name == label) return expr;
    throw CapabilityError("fixture: no entry labeled '" + label + "'");
}

// ---------------------------------------------------------------------------
// index classification

namespace {

bool is_plain_one(const Slot& s) { return s.exponent == 1 && !s.barred; }

} // namespace

std::pair<std::string, SymExpr> reduce_index(const SignedIndex& index) {
    if (index.empty()) throw DomainError("reduce_index: empty index");
    if (index.weight() > kWeightLimit)
        throw CapabilityError("reduce_index: weight " + std::to_string(index.weight()) +
                              " exceeds the rewrite limit " + std::to_string(kWeightLimit));
    const auto& slots = index.slots();
    int depth = index.depth();

    auto rest_plain_ones = [&](int from) {
        for (int i = from; i < depth; ++i)
            if (!is_plain_one(slots[static_cast<size_t>(i)])) return false;
        return true;
    };

    if (index.all_unbarred()) {
        if (slots[0].exponent >= 2 && rest_plain_ones(1))
            return {"plain-head", adz_reduce(slots[0].exponent, depth - 1)};
        throw CapabilityError("reduce_index: no rewrite for '" + index.to_string() +
                              "'; nearest supported family: plain outer exponent with "
                              "trailing ones (e.g. 3,1,1)");
    }

    if (slots[0].barred && slots[0].exponent >= 2) {
        if (rest_plain_ones(1))
            return {"alternating-head", reduce_head_family(slots[0].exponent - 2, depth)};
        throw CapabilityError("reduce_index: no rewrite for '" + index.to_string() +
                              "'; nearest supported family: barred outer exponent with "
                              "trailing ones (e.g. b3,1,1)");
    }

    if (!slots[0].barred || slots[0].exponent != 1)
        throw CapabilityError("reduce_index: no rewrite for '" + index.to_string() +
                              "'; supported families start with a barred slot or are "
                              "bar-free with trailing ones");

    // Outer slot is bar1. Find the special interior slots.
    std::vector<int> special; // positions of slots that are not plain ones
    for (int i = 1; i < depth; ++i)
        if (!is_plain_one(slots[static_cast<size_t>(i)])) special.push_back(i);

    if (special.empty()) {
        // bar1 followed by ones only: value (-1)^depth ln2^depth / depth!.
        return {"bar-ones", Lnp(depth, rsign(depth) / rfact(depth))};
    }

    auto bar1_at = [&](int i) {
        const Slot& s = slots[static_cast<size_t>(i)];
        return s.barred && s.exponent == 1;
    };

    if (special.size() == 1) {
        int p = special[0];
        const Slot& s = slots[static_cast<size_t>(p)];
        int m = p;
        int k = depth - p;
        if (bar1_at(p)) return {"two-bars", reduce_two_bars(m, k)};
        if (!s.barred && s.exponent == 2)
            return {"interior-two", reduce_interior_two(m, k)};
        if (!s.barred && s.exponent == 3) {
            if (m == k)
                return {"interior-three-diagonal", reduce_interior_three_diagonal(k)};
            throw CapabilityError("reduce_index: '" + index.to_string() +
                                  "' only satisfies a two-sided relation (its mirrored "
                                  "partner is involved); the diagonal with equal ones "
                                  "blocks reduces directly");
        }
        throw CapabilityError("reduce_index: no rewrite for '" + index.to_string() +
                              "'; interior slots up to exponent 3 are supported");
    }

    if (special.size() == 2 && special[1] == special[0] + 1 && bar1_at(special[0]) &&
        bar1_at(special[1]) && rest_plain_ones(special[1] + 1)) {
        int m = special[0];
        int k = depth - special[0] - 1;
        return {"triple-bar", reduce_triple_bar(m, k)};
    }

    if (special.size() == 3 && special[1] == special[0] + 1 && special[2] == special[0] + 2 &&
        bar1_at(special[0]) && bar1_at(special[1]) && bar1_at(special[2]) &&
        rest_plain_ones(special[2] + 1)) {
        int m = special[0];
        int k = depth - special[0] - 2;
        return {"quad-bar", map_quad_bar(m, k)};
    }

    throw CapabilityError("reduce_index: no rewrite for '" + index.to_string() +
                          "'; nearest supported families: two-bars (b1,..,b1,..), "
                          "triple-bar (b1,..,b1,b1,..), quad-bar (b1,..,b1,b1,b1,..)");
}

} // namespace altzeta
