#include <algorithm>

#include "keymine/error.hpp"
#include "keymine/reference.hpp"

namespace keymine::reference {

NGraphTable count_ngraphs_serial(const LetterStream& stream, int n) {
    NGraphTable table(n);
    NGraphTable::NGram window;
    for (const auto& t : stream.tokens) {
        if (!t.is_letter()) {
            window.clear();
            continue;
        }
        window.push_back(t.letter);
        if (window.size() > static_cast<std::size_t>(n)) window.erase(window.begin());
        if (window.size() == static_cast<std::size_t>(n)) table.add(window);
    }
    return table;
}

std::vector<CountedItemset> count_supports_serial(const TransactionDB& db, std::span<const Itemset> candidates) {
    std::vector<CountedItemset> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) {
        if (c.empty()) throw DomainError("empty candidate itemset");
        for (const auto i : c) {
            if (i >= db.universe().size()) throw DomainError("candidate item outside the universe");
        }
        CountedItemset counted{c, 0};
        for (const auto& t : db.transactions()) {
            if (std::includes(t.items.begin(), t.items.end(), c.begin(), c.end())) ++counted.support_count;
        }
        out.push_back(std::move(counted));
    }
    return out;
}

EvalReport evaluate_serial(const LetterStream& stream, const Layout& layout) {
    EvalReport r;
    r.layout_name = layout.name;
    std::optional<Hand> prev;
    for (const auto& t : stream.tokens) {
        ++r.total_chars;
        const std::optional<Hand> h = t.is_letter() ? layout.hand_of(t.code_point) : std::nullopt;
        if (!h) {
            ++r.undetermined;
        } else {
            ++(*h == Hand::Left ? r.left_load : r.right_load);
            if (prev && *prev != *h) ++r.hand_switching;
        }
        prev = h;
    }
    return r;
}

}  // namespace keymine::reference
