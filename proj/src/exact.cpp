#include "altzeta/exact.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace altzeta {

namespace {

std::mutex g_memo_mu;
std::map<std::tuple<std::string, long, bool>, Rational> g_memo;

// Shared DP over the cut-off n. A_j(N) is the sum over admissible tuples
// whose outermost variable is bounded by N and whose slots start at j.
// Strict: A_j(N) = A_j(N-1) + sign_j(N)/N^{s_j} * A_{j+1}(N-1), updating j
// in ascending order so the previous step's A_{j+1} is still visible.
// Weak (star): the inner variable may equal N, so A_{j+1} must already be
// updated for this N; update j in descending order.
Rational nested_sum(const SignedIndex& index, long n, bool star) {
    int depth = index.depth();
    if (depth == 0) return 1;
    if (n <= 0) return 0;

    {
        std::lock_guard<std::mutex> lock(g_memo_mu);
        auto it = g_memo.find({index.to_string(), n, star});
        if (it != g_memo.end()) return it->second;
    }

    std::vector<Rational> acc(static_cast<size_t>(depth) + 1, Rational(0));
    acc[static_cast<size_t>(depth)] = 1;
    auto slot_weight = [&](int j, long k) {
        const Slot& s = index.slot(j - 1);
        Rational w(1, Integer(pow(Integer(k), static_cast<unsigned>(s.exponent))));
        if (s.barred && (k % 2 != 0)) w = -w;
        return w;
    };
    for (long k = 1; k <= n; ++k) {
        if (star) {
            for (int j = depth; j >= 1; --j)
                acc[static_cast<size_t>(j - 1)] += slot_weight(j, k) * acc[static_cast<size_t>(j)];
        } else {
            for (int j = 1; j <= depth; ++j)
                acc[static_cast<size_t>(j - 1)] += slot_weight(j, k) * acc[static_cast<size_t>(j)];
        }
    }

    Rational result = acc[0];
    {
        std::lock_guard<std::mutex> lock(g_memo_mu);
        g_memo.emplace(std::make_tuple(index.to_string(), n, star), result);
    }
    return result;
}

} // namespace

Rational mhn(const SignedIndex& index, long n) { return nested_sum(index, n, false); }

Rational mhsn(const SignedIndex& index, long n) { return nested_sum(index, n, true); }

Integer stirling1(int n, int k) {
    if (n < 0 || k < 0) throw DomainError("stirling1: negative argument");
    if (k > n) return 0;
    if (n == 0) return 1; // k == 0 here
    if (k == 0) return 0;
    // Row-by-row recurrence; rows are small for the ranges we serve.
    std::vector<Integer> row = {Integer(1)}; // row for n = 0
    for (int i = 1; i <= n; ++i) {
        std::vector<Integer> next(static_cast<size_t>(i) + 1, Integer(0));
        for (int j = 1; j <= i; ++j) {
            Integer up = (j <= i - 1) ? row[static_cast<size_t>(j)] : Integer(0);
            Integer diag = row[static_cast<size_t>(j - 1)];
            next[static_cast<size_t>(j)] = diag + Integer(i - 1) * up;
        }
        next[0] = 0;
        row = std::move(next);
    }
    return row[static_cast<size_t>(k)];
}

bool check_stirling_mhn(int n, int k) {
    if (k < 1 || k > n) throw DomainError("check_stirling_mhn: requires 1 <= k <= n");
    Rational lhs = Rational(stirling1(n, k));
    Rational rhs = Rational(factorial(n - 1)) * mhn(SignedIndex::ones(k - 1), n - 1);
    return lhs == rhs;
}

bool check_binom_star(long n, int a) {
    if (n < 1 || a < 0) throw DomainError("check_binom_star: requires n >= 1, a >= 0");
    std::vector<Slot> slots;
    for (int i = 0; i < a; ++i) slots.push_back(Slot{2, false});
    slots.push_back(Slot{1, false});
    Rational lhs = mhsn(SignedIndex(std::move(slots)), n);

    Rational rhs = 0;
    for (long k = 1; k <= n; ++k) {
        Integer num = binomial(static_cast<int>(n), static_cast<int>(k));
        Integer den = Integer(pow(Integer(k), static_cast<unsigned>(2 * a + 1))) *
                      binomial(static_cast<int>(n + k), static_cast<int>(k));
        rhs += Rational(num, den);
    }
    rhs *= 2;
    return lhs == rhs;
}

void clear_exact_memo() {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    g_memo.clear();
}

} // namespace altzeta
