#pragma once

// Corpus ingestion: UTF-8 text -> normalized letter stream -> n-graph tables.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace keymine {

using CodePoint = char32_t;

/// Index of a letter inside its AlphabetConfig. Ordering by LetterId is
/// alphabet order, which is the tie-break everywhere ranks are computed.
using LetterId = std::uint32_t;

std::string encode_utf8(CodePoint cp);

/// The typeable letters of a script, in a fixed order.
class AlphabetConfig {
public:
    /// Throws DomainError on an empty set, a duplicate, or a whitespace code point.
    AlphabetConfig(std::string name, std::vector<CodePoint> letters);

    const std::string& name() const noexcept { return name_; }
    std::span<const CodePoint> letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }

    CodePoint letter(LetterId id) const { return letters_.at(id); }
    std::string letter_utf8(LetterId id) const { return encode_utf8(letter(id)); }
    std::optional<LetterId> find(CodePoint cp) const;
    /// Looks a letter up by its UTF-8 spelling (exactly one code point).
    std::optional<LetterId> find_utf8(std::string_view s) const;

    nlohmann::json to_json() const;
    static AlphabetConfig from_json(const nlohmann::json& j);

    friend bool operator==(const AlphabetConfig& a, const AlphabetConfig& b) {
        return a.name_ == b.name_ && a.letters_ == b.letters_;
    }

private:
    std::string name_;
    std::vector<CodePoint> letters_;
    std::unordered_map<CodePoint, LetterId> index_;
};

AlphabetConfig load_alphabet(const std::filesystem::path& path);

struct Token {
    static constexpr LetterId kUndetermined = std::numeric_limits<LetterId>::max();

    CodePoint code_point = 0;
    LetterId letter = kUndetermined;

    bool is_letter() const noexcept { return letter != kUndetermined; }

    friend bool operator==(const Token&, const Token&) = default;
};

/// Whitespace-free token sequence from one source.
struct LetterStream {
    std::string source_id;
    std::vector<Token> tokens;

    std::size_t letter_count() const noexcept;
    std::size_t undetermined_count() const noexcept { return tokens.size() - letter_count(); }
};

/// Decodes UTF-8, normalizes to NFC, drops White_Space code points and
/// classifies the rest against `alphabet`. Throws IngestError (with the byte
/// offset of the first bad sequence) on invalid UTF-8.
LetterStream tokenize(std::string_view utf8, const AlphabetConfig& alphabet, std::string source_id = {});

/// Letter-tuple frequency table of a fixed order n in {1, 2, 3}.
class NGraphTable {
public:
    using NGram = std::vector<LetterId>;
    using Counts = std::map<NGram, std::uint64_t>;

    explicit NGraphTable(int n);

    int order() const noexcept { return n_; }
    const Counts& counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept { return total_; }
    bool empty() const noexcept { return counts_.empty(); }
    std::uint64_t count(const NGram& gram) const;

    /// Adds `count` occurrences; a zero count leaves no entry behind.
    void add(const NGram& gram, std::uint64_t count = 1);
    /// Associative, commutative merge of another table of the same order.
    void merge(const NGraphTable& other);

    friend bool operator==(const NGraphTable&, const NGraphTable&) = default;

private:
    int n_;
    Counts counts_;
    std::uint64_t total_ = 0;
};

/// Counts letter n-graphs. For n >= 2 a window never spans an Undetermined token.
/// OpenMP-parallel over chunks of the stream; see reference.hpp for the serial version.
NGraphTable count_ngraphs(const LetterStream& stream, int n);

/// Counts each stream independently (no cross-source windows) and merges.
NGraphTable count_ngraphs(std::span<const LetterStream> streams, int n);

struct RankedLetter {
    LetterId letter;
    std::uint64_t count;
    double percentage;

    friend bool operator==(const RankedLetter&, const RankedLetter&) = default;
};

/// Descending by count, ties in alphabet order; percentage = 100 * count / total.
std::vector<RankedLetter> monograph_ranking(const NGraphTable& monographs);

/// TSV with header `ngram\tcount\tpercentage`; letters of an n-gram are joined by '+'.
/// Rows follow the same order as monograph_ranking (count desc, then alphabet order).
void write_ngraph_tsv(std::ostream& out, const NGraphTable& table, const AlphabetConfig& alphabet);
nlohmann::json ngraph_to_json(const NGraphTable& table, const AlphabetConfig& alphabet);

/// One path per line, '#' starts a comment, blank lines ignored. Relative
/// paths resolve against the manifest's directory.
std::vector<std::filesystem::path> read_manifest(const std::filesystem::path& manifest);

std::string read_file(const std::filesystem::path& path);

/// Reads and tokenizes every manifest entry, one stream per file, in manifest order.
std::vector<LetterStream> load_corpus(const std::filesystem::path& manifest, const AlphabetConfig& alphabet);

}  // namespace keymine
