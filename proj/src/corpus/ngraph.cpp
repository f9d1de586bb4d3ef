#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "keymine/corpus.hpp"
#include "keymine/error.hpp"
#include "util.hpp"

namespace keymine {

namespace {

// Code points fit in 21 bits and so do alphabet indices; three of them pack
// into one 64-bit key.
constexpr unsigned kIdBits = 21;
constexpr std::uint64_t kIdMask = (std::uint64_t{1} << kIdBits) - 1;

void check_order(int n) {
    if (n < 1 || n > 3) throw DomainError("n-graph order must be 1, 2 or 3, got " + std::to_string(n));
}

NGraphTable::NGram unpack(std::uint64_t key, int n) {
    NGraphTable::NGram gram(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
        gram[static_cast<std::size_t>(j)] = static_cast<LetterId>(key & kIdMask);
        key >>= kIdBits;
    }
    return gram;
}

struct RowOrder {
    bool operator()(const std::pair<const NGraphTable::NGram*, std::uint64_t>& a,
                    const std::pair<const NGraphTable::NGram*, std::uint64_t>& b) const {
        if (a.second != b.second) return a.second > b.second;
        return *a.first < *b.first;
    }
};

std::vector<std::pair<const NGraphTable::NGram*, std::uint64_t>> ranked_rows(const NGraphTable& table) {
    std::vector<std::pair<const NGraphTable::NGram*, std::uint64_t>> rows;
    rows.reserve(table.counts().size());
    for (const auto& [gram, count] : table.counts()) rows.emplace_back(&gram, count);
    std::sort(rows.begin(), rows.end(), RowOrder{});
    return rows;
}

std::string gram_text(const NGraphTable::NGram& gram, const AlphabetConfig& alphabet) {
    std::string s;
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if (i) s.push_back('+');
        s += alphabet.letter_utf8(gram[i]);
    }
    return s;
}

double percentage(std::uint64_t count, std::uint64_t total) {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

NGraphTable::NGraphTable(int n) : n_(n) { check_order(n); }

std::uint64_t NGraphTable::count(const NGram& gram) const {
    const auto it = counts_.find(gram);
    return it == counts_.end() ? 0 : it->second;
}

void NGraphTable::add(const NGram& gram, std::uint64_t count) {
    if (gram.size() != static_cast<std::size_t>(n_)) {
        throw DomainError("n-gram of length " + std::to_string(gram.size()) + " added to order-" +
                          std::to_string(n_) + " table");
    }
    if (count == 0) return;
    counts_[gram] += count;
    total_ += count;
}

void NGraphTable::merge(const NGraphTable& other) {
    if (other.n_ != n_) throw DomainError("cannot merge n-graph tables of different order");
    for (const auto& [gram, count] : other.counts_) counts_[gram] += count;
    total_ += other.total_;
}

NGraphTable count_ngraphs(const LetterStream& stream, int n) {
    check_order(n);
    NGraphTable table(n);
    const auto& tokens = stream.tokens;
    if (tokens.size() < static_cast<std::size_t>(n)) return table;
    const auto windows = static_cast<std::ptrdiff_t>(tokens.size() - static_cast<std::size_t>(n) + 1);

    std::unordered_map<std::uint64_t, std::uint64_t> merged;
#pragma omp parallel
    {
        std::unordered_map<std::uint64_t, std::uint64_t> local;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < windows; ++i) {
            std::uint64_t key = 0;
            bool valid = true;
            for (int j = 0; j < n; ++j) {
                const Token& t = tokens[static_cast<std::size_t>(i + j)];
                if (!t.is_letter()) {
                    valid = false;
                    break;
                }
                key = (key << kIdBits) | t.letter;
            }
            if (valid) ++local[key];
        }
#pragma omp critical(keymine_ngraph_merge)
        for (const auto& [key, count] : local) merged[key] += count;
    }

    for (const auto& [key, count] : merged) table.add(unpack(key, n), count);
    return table;
}

NGraphTable count_ngraphs(std::span<const LetterStream> streams, int n) {
    NGraphTable table(n);
    for (const auto& s : streams) table.merge(count_ngraphs(s, n));
    return table;
}

std::vector<RankedLetter> monograph_ranking(const NGraphTable& monographs) {
    if (monographs.order() != 1) throw DomainError("monograph_ranking needs an order-1 table");
    std::vector<RankedLetter> out;
    for (const auto& [gram, count] : ranked_rows(monographs)) {
        out.push_back({gram->front(), count, percentage(count, monographs.total())});
    }
    return out;
}

void write_ngraph_tsv(std::ostream& out, const NGraphTable& table, const AlphabetConfig& alphabet) {
    out << "ngram\tcount\tpercentage\n";
    for (const auto& [gram, count] : ranked_rows(table)) {
        out << gram_text(*gram, alphabet) << '\t' << count << '\t'
            << detail::format_fixed(percentage(count, table.total()), 6) << '\n';
    }
}

nlohmann::json ngraph_to_json(const NGraphTable& table, const AlphabetConfig& alphabet) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [gram, count] : ranked_rows(table)) {
        rows.push_back({{"ngram", gram_text(*gram, alphabet)},
                        {"count", count},
                        {"percentage", percentage(count, table.total())}});
    }
    return {{"n", table.order()}, {"total", table.total()}, {"rows", std::move(rows)}};
}

}  // namespace keymine
