#pragma once
// Signed multi-index: a list of (exponent, bar) slots ordered from the
// outermost summation variable to the innermost. A barred slot makes its
// summation variable alternate in sign.

#include "altzeta/core.hpp"

#include <compare>
#include <string_view>
#include <vector>

namespace altzeta {

struct Slot {
    int exponent = 1;    // >= 1
    bool barred = false; // contributes (-1)^k through its variable k

    auto operator<=>(const Slot&) const = default;
};

class SignedIndex {
public:
    SignedIndex() = default; // empty index, depth 0
    explicit SignedIndex(std::vector<Slot> slots);

    // Text grammar: comma-separated slots, each an optional 'b' prefix
    // followed by a positive integer, e.g. "b1,1,2". Raises ParseError
    // naming the offending token.
    static SignedIndex parse(std::string_view text);

    std::string to_string() const;

    int depth() const { return static_cast<int>(slots_.size()); }
    int weight() const; // sum of exponents
    bool empty() const { return slots_.empty(); }
    const std::vector<Slot>& slots() const { return slots_; }
    const Slot& slot(int i) const { return slots_[static_cast<size_t>(i)]; }

    bool all_unbarred() const;

    // True when the infinite nested sum converges: the outer exponent is
    // >= 2, or it is 1 and the outer slot is barred.
    bool admissible() const;

    auto operator<=>(const SignedIndex&) const = default;

    // Builders used by the rewrite layer.
    static SignedIndex ones(int count, bool first_barred = false);
    SignedIndex prepend(Slot s) const;
    SignedIndex append(Slot s) const;
    SignedIndex append_all(const SignedIndex& tail) const;

private:
    std::vector<Slot> slots_;
};

} // namespace altzeta
