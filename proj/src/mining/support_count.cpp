#include <algorithm>

#include "keymine/error.hpp"
#include "keymine/mining.hpp"

namespace keymine {

namespace {

void check_candidates(const TransactionDB& db, std::span<const Itemset> candidates) {
    for (const auto& c : candidates) {
        if (c.empty()) throw DomainError("empty candidate itemset");
        if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end()) {
            throw DomainError("candidate itemset is not in canonical order");
        }
        if (c.back() >= db.universe().size()) {
            throw DomainError("candidate holds item id " + std::to_string(c.back()) + " outside a universe of " +
                              std::to_string(db.universe().size()));
        }
    }
}

}  // namespace

std::vector<CountedItemset> count_supports(const TransactionDB& db, std::span<const Itemset> candidates) {
    check_candidates(db, candidates);

    // Bucket candidates by their first item: a transaction can only contain
    // candidates whose first item it holds, and each candidate is then tested
    // at most once per transaction.
    std::vector<std::vector<std::uint32_t>> by_first(db.universe().size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        by_first[candidates[i].front()].push_back(static_cast<std::uint32_t>(i));
    }

    const auto& txns = db.transactions();
    std::vector<std::uint64_t> counts(candidates.size(), 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(candidates.size(), 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t ti = 0; ti < static_cast<std::ptrdiff_t>(txns.size()); ++ti) {
            const auto& items = txns[static_cast<std::size_t>(ti)].items;
            for (auto it = items.begin(); it != items.end(); ++it) {
                for (const auto ci : by_first[*it]) {
                    const auto& cand = candidates[ci];
                    if (std::includes(it, items.end(), cand.begin(), cand.end())) ++local[ci];
                }
            }
        }
#pragma omp critical(keymine_support_merge)
        for (std::size_t i = 0; i < local.size(); ++i) counts[i] += local[i];
    }

    std::vector<CountedItemset> out;
    out.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) out.push_back({candidates[i], counts[i]});
    return out;
}

}  // namespace keymine
