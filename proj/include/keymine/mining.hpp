#pragma once

// Apriori frequent-itemset mining and strong-rule generation over a generic
// in-memory transaction database.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "keymine/corpus.hpp"

namespace keymine {

/// Index into TransactionDB::universe(); ItemId order is universe order.
using ItemId = std::uint32_t;

/// Sorted (universe order), duplicate-free.
using Itemset = std::vector<ItemId>;

struct Transaction {
    std::string tid;
    Itemset items;
};

class TransactionDB {
public:
    /// `universe` lists item names in canonical order; names must be unique and non-empty.
    explicit TransactionDB(std::vector<std::string> universe);

    /// Items are deduplicated and sorted. Throws DomainError for an id outside the universe.
    void add(std::string tid, Itemset items);
    /// Same as add() but by item name.
    void add_named(std::string tid, std::span<const std::string> names);

    const std::vector<std::string>& universe() const noexcept { return universe_; }
    const std::vector<Transaction>& transactions() const noexcept { return transactions_; }
    std::size_t size() const noexcept { return transactions_.size(); }

    std::optional<ItemId> find(std::string_view name) const;
    const std::string& name(ItemId id) const { return universe_.at(id); }

    /// Space-separated item names, e.g. "I1 I2 I5".
    std::string format(const Itemset& items) const;

private:
    std::vector<std::string> universe_;
    std::unordered_map<std::string, ItemId> index_;
    std::vector<Transaction> transactions_;
};

struct MiningParams {
    std::uint64_t min_support_count = 1;
    /// Values above 1 are accepted and simply unsatisfiable.
    double min_confidence = 0.0;

    /// Throws DomainError when min_support_count < 1 or min_confidence is negative / NaN.
    void validate() const;
};

struct CountedItemset {
    Itemset items;
    std::uint64_t support_count = 0;

    friend bool operator==(const CountedItemset&, const CountedItemset&) = default;
};

/// L_k together with the C_k it was filtered from.
struct FrequentLevel {
    std::size_t k = 0;
    std::vector<CountedItemset> itemsets;
    std::vector<CountedItemset> candidates_evaluated;
};

struct MiningStats {
    std::size_t scans = 0;
    /// |C_k| for every level that was counted, starting at k = 1.
    std::vector<std::size_t> candidates_per_level;
};

struct AssociationRule {
    Itemset antecedent;
    Itemset consequent;
    std::uint64_t union_count = 0;
    std::uint64_t antecedent_count = 0;
    double support = 0.0;
    double confidence = 0.0;

    friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

/// Number of transactions containing each candidate as a subset; output
/// order matches `candidates`. OpenMP-parallel over transactions.
std::vector<CountedItemset> count_supports(const TransactionDB& db, std::span<const Itemset> candidates);

/// Self-join of L_{k-1}: pairs sharing the first k-2 items with l1[k-1] < l2[k-1].
std::vector<Itemset> join_step(std::span<const Itemset> prev);
/// Drops candidates with a (k-1)-subset outside `prev`.
std::vector<Itemset> prune_step(std::span<const Itemset> joined, std::span<const Itemset> prev);
/// join_step followed by prune_step; the result is C_k in lexicographic order.
std::vector<Itemset> generate_candidates(const FrequentLevel& prev);

/// Level-wise Apriori. Returns the non-empty levels L_1, L_2, ... in order.
std::vector<FrequentLevel> mine_frequent(const TransactionDB& db, const MiningParams& params,
                                         MiningStats* stats = nullptr);

/// Exhaustive subset enumeration; refuses universes above kBruteForceLimit items.
inline constexpr std::size_t kBruteForceLimit = 20;
std::vector<FrequentLevel> brute_force_frequent(const TransactionDB& db, const MiningParams& params);

/// True when both level lists contain the same frequent itemsets with the same counts.
bool same_frequent_itemsets(std::span<const FrequentLevel> a, std::span<const FrequentLevel> b);

/// Every A => F\A over frequent F (|F| >= 2) with count(F)/count(A) >= min_confidence.
std::vector<AssociationRule> generate_rules(std::span<const FrequentLevel> levels, std::uint64_t db_size,
                                            const MiningParams& params);

/// One transaction per digraph occurrence holding the unordered pair of its
/// letters (a doubled letter gives a singleton). The universe is the set of
/// letters present, in alphabet order, named by their UTF-8 spelling.
TransactionDB digraphs_as_transactions(const NGraphTable& digraphs, const AlphabetConfig& alphabet);

/// Header `tid\titems`; items space-separated. Universe order is natural
/// order of item names ("I2" < "I10") unless `universe` is given.
TransactionDB read_transactions_tsv(std::istream& in, std::optional<std::vector<std::string>> universe = {});
void write_transactions_tsv(std::ostream& out, const TransactionDB& db);

/// Header `itemset\tcount\tsupport`.
void write_itemsets_tsv(std::ostream& out, std::span<const CountedItemset> itemsets, const TransactionDB& db);
/// Header `antecedent\tconsequent\tsupport\tconfidence`.
void write_rules_tsv(std::ostream& out, std::span<const AssociationRule> rules, const TransactionDB& db);

nlohmann::json levels_to_json(std::span<const FrequentLevel> levels, const TransactionDB& db);
nlohmann::json rules_to_json(std::span<const AssociationRule> rules, const TransactionDB& db);

/// Natural ordering: digit runs compare numerically.
bool natural_less(std::string_view a, std::string_view b);

}  // namespace keymine
