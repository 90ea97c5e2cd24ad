#include "altzeta/index.hpp"

#include <charconv>
#include <sstream>

namespace altzeta {

SignedIndex::SignedIndex(std::vector<Slot> slots) : slots_(std::move(slots)) {
    for (const Slot& s : slots_) {
        if (s.exponent < 1)
            throw DomainError("SignedIndex: slot exponents must be >= 1");
    }
}

SignedIndex SignedIndex::parse(std::string_view text) {
    std::vector<Slot> slots;
    size_t pos = 0;
    bool first = true;
    while (first || pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view token = text.substr(
            pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        first = false;

        // Trim surrounding spaces; the grammar itself has none.
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);

        std::string shown(token);
        if (token.empty())
            throw ParseError("index parse error: empty slot token");

        Slot slot;
        if (token.front() == 'b') {
            slot.barred = true;
            token.remove_prefix(1);
        }
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || value < 1)
            throw ParseError("index parse error: bad slot token '" + shown +
                             "' (expected optional 'b' then a positive integer)");
        slot.exponent = value;
        slots.push_back(slot);

        if (comma == std::string_view::npos) break;
        pos = comma + 1;
        if (pos == text.size())
            throw ParseError("index parse error: trailing comma");
    }
    if (slots.empty()) throw ParseError("index parse error: empty index");
    return SignedIndex(std::move(slots));
}

std::string SignedIndex::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < slots_.size(); ++i) {
        if (i) out << ',';
        if (slots_[i].barred) out << 'b';
        out << slots_[i].exponent;
    }
    return out.str();
}

int SignedIndex::weight() const {
    int w = 0;
    for (const Slot& s : slots_) w += s.exponent;
    return w;
}

bool SignedIndex::all_unbarred() const {
    for (const Slot& s : slots_)
        if (s.barred) return false;
    return true;
}

bool SignedIndex::admissible() const {
    if (slots_.empty()) return false;
    return slots_[0].exponent >= 2 || slots_[0].barred;
}

SignedIndex SignedIndex::ones(int count, bool first_barred) {
    std::vector<Slot> slots(static_cast<size_t>(count), Slot{1, false});
    if (count > 0 && first_barred) slots[0].barred = true;
    return SignedIndex(std::move(slots));
}

SignedIndex SignedIndex::prepend(Slot s) const {
    std::vector<Slot> slots;
    slots.reserve(slots_.size() + 1);
    slots.push_back(s);
    slots.insert(slots.end(), slots_.begin(), slots_.end());
    return SignedIndex(std::move(slots));
}

SignedIndex SignedIndex::append(Slot s) const {
    std::vector<Slot> slots = slots_;
    slots.push_back(s);
    return SignedIndex(std::move(slots));
}

SignedIndex SignedIndex::append_all(const SignedIndex& tail) const {
    std::vector<Slot> slots = slots_;
    slots.insert(slots.end(), tail.slots_.begin(), tail.slots_.end());
    return SignedIndex(std::move(slots));
}

} // namespace altzeta
