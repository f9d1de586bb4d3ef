#pragma once

// Two-hand letter assignment driven by digraph association strength, and
// frequency-ordered placement onto a keyboard geometry.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "keymine/corpus.hpp"
#include "keymine/mining.hpp"

namespace keymine {

enum class Hand { Left, Right };
enum class Finger { Index = 1, Middle = 2, Ring = 3, Pinky = 4, Thumb = 5 };
enum class Row { Home, Top, Bottom };
enum class Layer { Base, Shift };

inline Hand opposite(Hand h) noexcept { return h == Hand::Left ? Hand::Right : Hand::Left; }
std::string_view to_string(Hand h) noexcept;

/// What to do with step-4 letters whose signals disagree or tie.
enum class TiePolicy {
    PaperLiteral,  ///< anything but a clear "left is stronger" goes left
    BalancedTies,  ///< mixed-signal letters alternate right, left, right, ...
};

std::string_view to_string(TiePolicy p) noexcept;
TiePolicy parse_tie_policy(std::string_view s);

struct KeyPosition {
    std::string id;
    Hand hand = Hand::Left;
    Finger finger = Finger::Index;
    Row row = Row::Home;
    Layer layer = Layer::Base;
    double cost = 1.0;

    friend bool operator==(const KeyPosition&, const KeyPosition&) = default;
};

class KeyboardGeometry {
public:
    /// Throws DomainError on duplicate ids, non-positive costs, or a hand without a base-layer key.
    explicit KeyboardGeometry(std::vector<KeyPosition> positions);

    const std::vector<KeyPosition>& positions() const noexcept { return positions_; }
    const KeyPosition* find(std::string_view id) const;

    nlohmann::json to_json() const;
    static KeyboardGeometry from_json(const nlohmann::json& j);

    /// QWERTY letter block: 3 rows x 10 columns on the base layer and the same
    /// 30 keys again on the shift layer. Home row is cheapest, index and middle
    /// fingers cheaper than ring and pinky, shift costs more than any base key.
    static KeyboardGeometry standard();

    friend bool operator==(const KeyboardGeometry&, const KeyboardGeometry&) = default;

private:
    std::vector<KeyPosition> positions_;
};

KeyboardGeometry load_geometry(const std::filesystem::path& path);

struct Layout {
    std::string name;
    /// Where the geometry came from: "standard" or a path relative to the layout file.
    std::string geometry_ref = "standard";
    KeyboardGeometry geometry = KeyboardGeometry::standard();
    std::map<CodePoint, std::string> mapping;

    /// Throws DomainError unless the mapping is injective and every position exists.
    void validate() const;
    std::optional<Hand> hand_of(CodePoint cp) const;

    /// {name, geometry_ref, mapping: {letter: position_id}}
    nlohmann::json to_json() const;
};

/// Parses a layout object; `geometry` resolves geometry_ref. Throws ParseError with the field path.
Layout layout_from_json(const nlohmann::json& j, const KeyboardGeometry& geometry);
/// Loads a layout file, resolving geometry_ref against the file's directory
/// unless `geometry_override` is given.
Layout load_layout(const std::filesystem::path& path, const std::optional<KeyboardGeometry>& geometry_override = {});
void save_layout(const std::filesystem::path& path, const Layout& layout);

/// Singleton and pair counts over a digraph transaction DB, keyed by letter.
class CooccurrenceIndex {
public:
    CooccurrenceIndex(const TransactionDB& db, const AlphabetConfig& alphabet);

    std::uint64_t db_size() const noexcept { return db_size_; }
    /// Transactions containing the letter.
    std::uint64_t single(LetterId x) const;
    /// Transactions containing both letters (x != y).
    std::uint64_t pair(LetterId x, LetterId y) const;

private:
    std::size_t n_;
    std::uint64_t db_size_;
    std::vector<std::uint64_t> single_;
    std::vector<std::uint64_t> pair_;
};

struct HandAffinity {
    LetterId letter = 0;
    /// Sums of pair counts against each hand's assigned set; the fractions
    /// below are these divided by |D| (support) or count({letter}) (confidence).
    std::uint64_t left_pair_count = 0;
    std::uint64_t right_pair_count = 0;
    std::uint64_t letter_count = 0;
    std::uint64_t db_size = 0;

    double left_support = 0.0;
    double right_support = 0.0;
    double left_confidence = 0.0;
    double right_confidence = 0.0;

    friend bool operator==(const HandAffinity&, const HandAffinity&) = default;
};

struct Decision {
    std::size_t rank = 0;  ///< 1-based position in the monograph ranking
    LetterId letter = 0;
    Hand hand = Hand::Left;
    bool seeded = false;   ///< placed by the first-four rule, no affinity involved
    bool mixed = false;    ///< neither hand is strictly stronger on both measures
    HandAffinity affinity;
};

struct HandPartition {
    std::vector<LetterId> left;
    std::vector<LetterId> right;
    std::vector<Decision> trace;
    TiePolicy policy = TiePolicy::PaperLiteral;

    std::optional<Hand> hand_of(LetterId letter) const;
};

HandAffinity affinity(LetterId letter, const HandPartition& assigned, const CooccurrenceIndex& index);
/// Convenience overload; throws DomainError when the letter has no monograph occurrences.
HandAffinity affinity(LetterId letter, const HandPartition& assigned, const TransactionDB& db,
                      const NGraphTable& monographs, const AlphabetConfig& alphabet);

/// Step-4 predicate. `next_mixed_right` carries the BalancedTies alternation state.
Hand choose_hand(const HandAffinity& a, TiePolicy policy, bool& next_mixed_right);
bool is_mixed(const HandAffinity& a) noexcept;

/// Ranks letters by monograph count; seeds ranks 1,4 right and 2,3 left; then
/// walks the remaining ranks, sending a letter right only when both its left
/// support and left confidence exceed the right ones.
HandPartition assign_hands(const NGraphTable& monographs, const TransactionDB& db, const AlphabetConfig& alphabet,
                           TiePolicy policy = TiePolicy::PaperLiteral);

struct AuditResult {
    bool passed = true;
    std::optional<std::size_t> failed_rank;
    std::optional<LetterId> failed_letter;
    std::string message;
};

/// Replays every recorded decision from the state implied by the trace.
/// Throws AuditImpossibleError when the partition carries no trace.
AuditResult audit_partition(const HandPartition& partition, const NGraphTable& monographs, const TransactionDB& db,
                            const AlphabetConfig& alphabet);

/// Letters of the alphabet with a zero monograph count.
std::vector<LetterId> unplaceable_letters(const NGraphTable& monographs, const AlphabetConfig& alphabet);

struct PlacementOptions {
    std::string name = "designed";
    std::string geometry_ref = "standard";
    /// Append letters absent from the corpus to the cheapest free shift-layer keys.
    bool place_unseen = false;
};

/// Per hand, letters by descending count go onto positions by ascending cost
/// (base before shift at equal cost). Throws CapacityError on overflow.
Layout place_keys(const HandPartition& partition, const NGraphTable& monographs, const KeyboardGeometry& geometry,
                  const AlphabetConfig& alphabet, const PlacementOptions& options = {});

/// Header `rank\tletter\tLS\tRS\tLC\tRC\thand`.
void write_trace_tsv(std::ostream& out, const HandPartition& partition, const AlphabetConfig& alphabet);

}  // namespace keymine
