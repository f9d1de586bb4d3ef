#include <array>
#include <ostream>

#include "keymine/error.hpp"
#include "keymine/layout.hpp"
#include "util.hpp"

namespace keymine {

namespace {

// Seeding of ranking positions 1..4.
constexpr std::array<Hand, 4> kSeedHands{Hand::Right, Hand::Left, Hand::Left, Hand::Right};

void push(HandPartition& p, LetterId letter, Hand hand) {
    (hand == Hand::Left ? p.left : p.right).push_back(letter);
}

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Within one HandAffinity both supports share the denominator |D| and both
// confidences share count({letter}), so the step-4 comparisons reduce to
// comparisons of the integer numerators. A zero denominator makes both
// values zero.
int compare_support(const HandAffinity& a) {
    if (a.db_size == 0) return 0;
    return (a.left_pair_count > a.right_pair_count) - (a.left_pair_count < a.right_pair_count);
}

int compare_confidence(const HandAffinity& a) {
    if (a.letter_count == 0) return 0;
    return (a.left_pair_count > a.right_pair_count) - (a.left_pair_count < a.right_pair_count);
}

}  // namespace

std::string_view to_string(TiePolicy p) noexcept {
    return p == TiePolicy::PaperLiteral ? "paper-literal" : "balanced-ties";
}

TiePolicy parse_tie_policy(std::string_view s) {
    if (s == "paper-literal") return TiePolicy::PaperLiteral;
    if (s == "balanced-ties") return TiePolicy::BalancedTies;
    throw DomainError("tie policy must be 'paper-literal' or 'balanced-ties', got '" + std::string(s) + "'");
}

std::optional<Hand> HandPartition::hand_of(LetterId letter) const {
    for (const auto l : left) {
        if (l == letter) return Hand::Left;
    }
    for (const auto r : right) {
        if (r == letter) return Hand::Right;
    }
    return std::nullopt;
}

CooccurrenceIndex::CooccurrenceIndex(const TransactionDB& db, const AlphabetConfig& alphabet)
    : n_(alphabet.size()), db_size_(db.size()), single_(n_, 0), pair_(n_ * n_, 0) {
    std::vector<LetterId> letter_of;
    letter_of.reserve(db.universe().size());
    for (const auto& name : db.universe()) {
        const auto id = alphabet.find_utf8(name);
        if (!id) throw DomainError("transaction item '" + name + "' is not a letter of alphabet '" + alphabet.name() + "'");
        letter_of.push_back(*id);
    }

    const auto m = static_cast<ItemId>(db.universe().size());
    std::vector<Itemset> candidates;
    candidates.reserve(m + static_cast<std::size_t>(m) * (m - (m ? 1 : 0)) / 2);
    for (ItemId i = 0; i < m; ++i) candidates.push_back({i});
    for (ItemId i = 0; i < m; ++i) {
        for (ItemId j = i + 1; j < m; ++j) candidates.push_back({i, j});
    }
    for (const auto& c : count_supports(db, candidates)) {
        if (c.items.size() == 1) {
            single_[letter_of[c.items[0]]] = c.support_count;
        } else {
            const auto x = letter_of[c.items[0]];
            const auto y = letter_of[c.items[1]];
            pair_[x * n_ + y] = c.support_count;
            pair_[y * n_ + x] = c.support_count;
        }
    }
}

std::uint64_t CooccurrenceIndex::single(LetterId x) const { return x < n_ ? single_[x] : 0; }

std::uint64_t CooccurrenceIndex::pair(LetterId x, LetterId y) const {
    if (x >= n_ || y >= n_ || x == y) return 0;
    return pair_[x * n_ + y];
}

HandAffinity affinity(LetterId letter, const HandPartition& assigned, const CooccurrenceIndex& index) {
    HandAffinity a;
    a.letter = letter;
    a.db_size = index.db_size();
    a.letter_count = index.single(letter);
    for (const auto l : assigned.left) a.left_pair_count += index.pair(letter, l);
    for (const auto r : assigned.right) a.right_pair_count += index.pair(letter, r);
    a.left_support = ratio(a.left_pair_count, a.db_size);
    a.right_support = ratio(a.right_pair_count, a.db_size);
    a.left_confidence = ratio(a.left_pair_count, a.letter_count);
    a.right_confidence = ratio(a.right_pair_count, a.letter_count);
    return a;
}

HandAffinity affinity(LetterId letter, const HandPartition& assigned, const TransactionDB& db,
                      const NGraphTable& monographs, const AlphabetConfig& alphabet) {
    if (monographs.order() != 1) throw DomainError("affinity needs an order-1 monograph table");
    if (monographs.count({letter}) == 0) {
        throw DomainError("confidence undefined for letter '" + alphabet.letter_utf8(letter) +
                          "' which never occurs in the corpus");
    }
    return affinity(letter, assigned, CooccurrenceIndex(db, alphabet));
}

bool is_mixed(const HandAffinity& a) noexcept {
    const int s = compare_support(a);
    const int c = compare_confidence(a);
    return !((s > 0 && c > 0) || (s < 0 && c < 0));
}

Hand choose_hand(const HandAffinity& a, TiePolicy policy, bool& next_mixed_right) {
    const int s = compare_support(a);
    const int c = compare_confidence(a);
    // Strong pull toward the left set: put the letter on the right to alternate.
    if (s > 0 && c > 0) return Hand::Right;
    if (policy == TiePolicy::PaperLiteral || (s < 0 && c < 0)) return Hand::Left;
    const Hand h = next_mixed_right ? Hand::Right : Hand::Left;
    next_mixed_right = !next_mixed_right;
    return h;
}

HandPartition assign_hands(const NGraphTable& monographs, const TransactionDB& db, const AlphabetConfig& alphabet,
                           TiePolicy policy) {
    const auto ranking = monograph_ranking(monographs);
    if (ranking.empty()) throw DomainError("cannot assign hands: the monograph table is empty");
    const CooccurrenceIndex index(db, alphabet);

    HandPartition p;
    p.policy = policy;
    bool next_mixed_right = true;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        Decision d;
        d.rank = i + 1;
        d.letter = ranking[i].letter;
        d.affinity = affinity(d.letter, p, index);
        d.mixed = is_mixed(d.affinity);
        if (i < kSeedHands.size()) {
            d.seeded = true;
            d.hand = kSeedHands[i];
        } else {
            d.hand = choose_hand(d.affinity, policy, next_mixed_right);
        }
        push(p, d.letter, d.hand);
        p.trace.push_back(d);
    }
    return p;
}

AuditResult audit_partition(const HandPartition& partition, const NGraphTable& monographs, const TransactionDB& db,
                            const AlphabetConfig& alphabet) {
    if (partition.trace.empty()) throw AuditImpossibleError("partition carries no decision trace");

    const auto fail = [&](std::size_t rank, std::optional<LetterId> letter, std::string why) {
        AuditResult r;
        r.passed = false;
        r.failed_rank = rank;
        r.failed_letter = letter;
        r.message = "rank " + std::to_string(rank) +
                    (letter ? " ('" + alphabet.letter_utf8(*letter) + "')" : std::string()) + ": " + std::move(why);
        return r;
    };

    const auto ranking = monograph_ranking(monographs);
    const CooccurrenceIndex index(db, alphabet);
    HandPartition replay;
    replay.policy = partition.policy;
    bool next_mixed_right = true;

    for (std::size_t i = 0; i < partition.trace.size(); ++i) {
        const Decision& d = partition.trace[i];
        if (i >= ranking.size()) return fail(i + 1, d.letter, "trace is longer than the monograph ranking");
        if (d.rank != i + 1 || d.letter != ranking[i].letter) {
            return fail(i + 1, d.letter, "trace order disagrees with the monograph ranking");
        }
        const HandAffinity a = affinity(d.letter, replay, index);
        if (!(a == d.affinity)) return fail(d.rank, d.letter, "recorded affinity does not match the replayed state");

        Hand expected;
        if (i < kSeedHands.size()) {
            if (!d.seeded) return fail(d.rank, d.letter, "seed slot not marked as seeded");
            expected = kSeedHands[i];
        } else {
            if (d.seeded) return fail(d.rank, d.letter, "letter past the seed slots marked as seeded");
            expected = choose_hand(a, partition.policy, next_mixed_right);
        }
        if (d.hand != expected) {
            return fail(d.rank, d.letter,
                        "recorded hand " + std::string(to_string(d.hand)) + ", predicate gives " +
                            std::string(to_string(expected)));
        }
        push(replay, d.letter, d.hand);
    }
    if (partition.trace.size() != ranking.size()) {
        return fail(partition.trace.size() + 1, std::nullopt, "trace is shorter than the monograph ranking");
    }
    for (const Hand h : {Hand::Left, Hand::Right}) {
        const auto& got = h == Hand::Left ? partition.left : partition.right;
        const auto& want = h == Hand::Left ? replay.left : replay.right;
        for (std::size_t i = 0; i < std::max(got.size(), want.size()); ++i) {
            if (i >= got.size() || i >= want.size() || got[i] != want[i]) {
                const LetterId l = i < got.size() ? got[i] : want[i];
                std::size_t rank = 0;
                for (const auto& d : partition.trace) {
                    if (d.letter == l) rank = d.rank;
                }
                return fail(rank, l, std::string(to_string(h)) + " hand list disagrees with the trace");
            }
        }
    }
    return {};
}

std::vector<LetterId> unplaceable_letters(const NGraphTable& monographs, const AlphabetConfig& alphabet) {
    std::vector<LetterId> out;
    for (LetterId l = 0; l < alphabet.size(); ++l) {
        if (monographs.count({l}) == 0) out.push_back(l);
    }
    return out;
}

void write_trace_tsv(std::ostream& out, const HandPartition& partition, const AlphabetConfig& alphabet) {
    out << "rank\tletter\tLS\tRS\tLC\tRC\thand\n";
    for (const auto& d : partition.trace) {
        out << d.rank << '\t' << alphabet.letter_utf8(d.letter) << '\t'
            << detail::format_fixed(d.affinity.left_support, 9) << '\t'
            << detail::format_fixed(d.affinity.right_support, 9) << '\t'
            << detail::format_fixed(d.affinity.left_confidence, 9) << '\t'
            << detail::format_fixed(d.affinity.right_confidence, 9) << '\t' << to_string(d.hand) << '\n';
    }
}

}  // namespace keymine
