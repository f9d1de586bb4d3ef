#include <map>
#include <ostream>

#include "keymine/error.hpp"
#include "keymine/mining.hpp"
#include "util.hpp"

namespace keymine {

std::vector<AssociationRule> generate_rules(std::span<const FrequentLevel> levels, std::uint64_t db_size,
                                            const MiningParams& params) {
    params.validate();
    if (db_size == 0) throw DomainError("generate_rules needs a positive db_size");

    std::map<Itemset, std::uint64_t> counts;
    for (const auto& level : levels) {
        for (const auto& c : level.itemsets) counts.emplace(c.items, c.support_count);
    }

    std::vector<AssociationRule> rules;
    for (const auto& level : levels) {
        if (level.k < 2) continue;
        for (const auto& f : level.itemsets) {
            const std::size_t k = f.items.size();
            if (k >= 64) throw DomainError("itemset too large for rule enumeration");
            const std::uint64_t full = (std::uint64_t{1} << k) - 1;
            for (std::uint64_t mask = 1; mask < full; ++mask) {
                AssociationRule r;
                for (std::size_t i = 0; i < k; ++i) {
                    ((mask >> i) & 1 ? r.antecedent : r.consequent).push_back(f.items[i]);
                }
                const auto it = counts.find(r.antecedent);
                if (it == counts.end() || it->second == 0) {
                    throw ConsistencyError("support count of a frequent itemset's subset is missing");
                }
                r.union_count = f.support_count;
                r.antecedent_count = it->second;
                r.confidence = static_cast<double>(r.union_count) / static_cast<double>(r.antecedent_count);
                r.support = static_cast<double>(r.union_count) / static_cast<double>(db_size);
                if (r.confidence >= params.min_confidence) rules.push_back(std::move(r));
            }
        }
    }
    return rules;
}

TransactionDB digraphs_as_transactions(const NGraphTable& digraphs, const AlphabetConfig& alphabet) {
    if (digraphs.order() != 2) throw DomainError("digraphs_as_transactions needs an order-2 table");

    std::vector<bool> present(alphabet.size(), false);
    for (const auto& [gram, count] : digraphs.counts()) {
        present.at(gram[0]) = true;
        present.at(gram[1]) = true;
    }
    std::vector<std::string> universe;
    std::vector<ItemId> item_of(alphabet.size(), 0);
    for (LetterId l = 0; l < alphabet.size(); ++l) {
        if (!present[l]) continue;
        item_of[l] = static_cast<ItemId>(universe.size());
        universe.push_back(alphabet.letter_utf8(l));
    }

    TransactionDB db(std::move(universe));
    std::uint64_t tid = 0;
    for (const auto& [gram, count] : digraphs.counts()) {
        const Itemset items{item_of[gram[0]], item_of[gram[1]]};
        for (std::uint64_t i = 0; i < count; ++i) db.add("T" + std::to_string(++tid), items);
    }
    return db;
}

void write_itemsets_tsv(std::ostream& out, std::span<const CountedItemset> itemsets, const TransactionDB& db) {
    out << "itemset\tcount\tsupport\n";
    const double n = static_cast<double>(db.size());
    for (const auto& c : itemsets) {
        const double support = db.size() == 0 ? 0.0 : static_cast<double>(c.support_count) / n;
        out << db.format(c.items) << '\t' << c.support_count << '\t' << detail::format_fixed(support, 6) << '\n';
    }
}

void write_rules_tsv(std::ostream& out, std::span<const AssociationRule> rules, const TransactionDB& db) {
    out << "antecedent\tconsequent\tsupport\tconfidence\n";
    for (const auto& r : rules) {
        out << db.format(r.antecedent) << '\t' << db.format(r.consequent) << '\t'
            << detail::format_fixed(r.support, 6) << '\t' << detail::format_fixed(r.confidence, 6) << '\n';
    }
}

nlohmann::json levels_to_json(std::span<const FrequentLevel> levels, const TransactionDB& db) {
    const auto counted = [&](const std::vector<CountedItemset>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : v) {
            arr.push_back({{"itemset", db.format(c.items)},
                           {"count", c.support_count},
                           {"support", db.size() == 0 ? 0.0
                                                      : static_cast<double>(c.support_count) /
                                                            static_cast<double>(db.size())}});
        }
        return arr;
    };
    nlohmann::json out = nlohmann::json::array();
    for (const auto& level : levels) {
        out.push_back({{"k", level.k},
                       {"frequent", counted(level.itemsets)},
                       {"candidates", counted(level.candidates_evaluated)}});
    }
    return out;
}

nlohmann::json rules_to_json(std::span<const AssociationRule> rules, const TransactionDB& db) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rules) {
        out.push_back({{"antecedent", db.format(r.antecedent)},
                       {"consequent", db.format(r.consequent)},
                       {"support", r.support},
                       {"confidence", r.confidence}});
    }
    return out;
}

}  // namespace keymine
