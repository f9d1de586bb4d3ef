#include <algorithm>
#include <bit>

#include "keymine/error.hpp"
#include "keymine/mining.hpp"

namespace keymine {

namespace {

std::vector<Itemset> sorted_copy(std::span<const Itemset> sets) {
    std::vector<Itemset> out(sets.begin(), sets.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<CountedItemset> keep_frequent(const std::vector<CountedItemset>& counted, std::uint64_t min_count) {
    std::vector<CountedItemset> out;
    for (const auto& c : counted) {
        if (c.support_count >= min_count) out.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<Itemset> join_step(std::span<const Itemset> prev) {
    const auto sets = sorted_copy(prev);
    std::vector<Itemset> out;
    if (sets.empty()) return out;
    const std::size_t width = sets.front().size();
    for (const auto& s : sets) {
        if (s.size() != width) throw DomainError("join_step needs itemsets of equal size");
    }
    if (width == 0) return out;

    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            // Sorted order keeps every l2 sharing l1's (k-2)-prefix contiguous.
            if (!std::equal(sets[i].begin(), sets[i].end() - 1, sets[j].begin())) break;
            if (sets[i].back() < sets[j].back()) {
                Itemset cand = sets[i];
                cand.push_back(sets[j].back());
                out.push_back(std::move(cand));
            }
        }
    }
    return out;
}

std::vector<Itemset> prune_step(std::span<const Itemset> joined, std::span<const Itemset> prev) {
    const auto frequent = sorted_copy(prev);
    std::vector<Itemset> out;
    Itemset subset;
    for (const auto& cand : joined) {
        bool keep = true;
        for (std::size_t drop = 0; drop < cand.size() && keep; ++drop) {
            subset.clear();
            for (std::size_t i = 0; i < cand.size(); ++i) {
                if (i != drop) subset.push_back(cand[i]);
            }
            keep = std::binary_search(frequent.begin(), frequent.end(), subset);
        }
        if (keep) out.push_back(cand);
    }
    return out;
}

std::vector<Itemset> generate_candidates(const FrequentLevel& prev) {
    std::vector<Itemset> sets;
    sets.reserve(prev.itemsets.size());
    for (const auto& c : prev.itemsets) sets.push_back(c.items);
    return prune_step(join_step(sets), sets);
}

std::vector<FrequentLevel> mine_frequent(const TransactionDB& db, const MiningParams& params, MiningStats* stats) {
    params.validate();
    if (db.universe().empty()) throw DomainError("cannot mine a transaction DB with an empty universe");

    MiningStats local_stats;
    MiningStats& st = stats ? *stats : local_stats;
    st = {};

    std::vector<Itemset> candidates;
    for (ItemId i = 0; i < db.universe().size(); ++i) candidates.push_back({i});

    std::vector<FrequentLevel> levels;
    for (std::size_t k = 1; !candidates.empty(); ++k) {
        FrequentLevel level;
        level.k = k;
        level.candidates_evaluated = count_supports(db, candidates);
        ++st.scans;
        st.candidates_per_level.push_back(candidates.size());
        level.itemsets = keep_frequent(level.candidates_evaluated, params.min_support_count);
        if (level.itemsets.empty()) break;
        candidates = generate_candidates(level);
        levels.push_back(std::move(level));
    }
    return levels;
}

std::vector<FrequentLevel> brute_force_frequent(const TransactionDB& db, const MiningParams& params) {
    params.validate();
    const std::size_t m = db.universe().size();
    if (m > kBruteForceLimit) {
        throw RefusalError("brute-force enumeration refused: universe of " + std::to_string(m) +
                           " items exceeds the limit of " + std::to_string(kBruteForceLimit));
    }
    std::vector<std::uint32_t> masks;
    masks.reserve(db.size());
    for (const auto& t : db.transactions()) {
        std::uint32_t mask = 0;
        for (const auto i : t.items) mask |= std::uint32_t{1} << i;
        masks.push_back(mask);
    }

    std::vector<FrequentLevel> by_size(m + 1);
    for (std::size_t k = 0; k <= m; ++k) by_size[k].k = k;
    const std::uint32_t limit = m == 0 ? 0 : (std::uint32_t{1} << m);
    for (std::uint32_t subset = 1; subset < limit; ++subset) {
        std::uint64_t count = 0;
        for (const auto t : masks) count += (t & subset) == subset;
        CountedItemset c;
        for (ItemId i = 0; i < m; ++i) {
            if (subset & (std::uint32_t{1} << i)) c.items.push_back(i);
        }
        c.support_count = count;
        auto& level = by_size[static_cast<std::size_t>(std::popcount(subset))];
        if (count >= params.min_support_count) level.itemsets.push_back(c);
        level.candidates_evaluated.push_back(std::move(c));
    }

    std::vector<FrequentLevel> out;
    for (std::size_t k = 1; k <= m; ++k) {
        auto& level = by_size[k];
        if (level.itemsets.empty()) break;
        const auto by_items = [](const CountedItemset& a, const CountedItemset& b) { return a.items < b.items; };
        std::sort(level.itemsets.begin(), level.itemsets.end(), by_items);
        std::sort(level.candidates_evaluated.begin(), level.candidates_evaluated.end(), by_items);
        out.push_back(std::move(level));
    }
    return out;
}

bool same_frequent_itemsets(std::span<const FrequentLevel> a, std::span<const FrequentLevel> b) {
    if (a.size() != b.size()) return false;
    const auto by_items = [](const CountedItemset& x, const CountedItemset& y) { return x.items < y.items; };
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].k != b[i].k) return false;
        auto x = a[i].itemsets;
        auto y = b[i].itemsets;
        std::sort(x.begin(), x.end(), by_items);
        std::sort(y.begin(), y.end(), by_items);
        if (x != y) return false;
    }
    return true;
}

}  // namespace keymine
