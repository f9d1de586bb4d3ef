#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "keymine/corpus.hpp"
#include "keymine/layout.hpp"

namespace keymine {

struct EvalReport {
    std::string layout_name;
    std::uint64_t hand_switching = 0;
    std::uint64_t left_load = 0;
    std::uint64_t right_load = 0;
    std::uint64_t undetermined = 0;
    std::uint64_t total_chars = 0;

    /// Sums counts of another report over a different stream of the same layout.
    void accumulate(const EvalReport& other);

    nlohmann::json to_json() const;
    static EvalReport from_json(const nlohmann::json& j);

    friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Loads by hand, and switches between directly adjacent mapped tokens on
/// different hands. Undetermined tokens and letters the layout does not map
/// break the chain. OpenMP-parallel over chunks of the stream.
EvalReport evaluate(const LetterStream& stream, const Layout& layout);
/// Per-stream evaluation summed; no pairs across streams.
EvalReport evaluate(std::span<const LetterStream> streams, const Layout& layout);
/// One report per layout, layouts evaluated in parallel.
std::vector<EvalReport> evaluate_all(std::span<const LetterStream> streams, std::span<const Layout> layouts);

struct ComparisonRow {
    EvalReport report;
    double switching_ratio = 0.0;  ///< hand_switching / (left + right)
    double load_imbalance = 0.0;   ///< |left - right| / (left + right)
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
};

/// Rows by descending hand_switching, input order kept on ties. Throws
/// IncomparableReportsError when total_chars differ, DomainError when empty.
ComparisonTable compare(std::span<const EvalReport> reports);

/// Header `name\thand_switching\tleft_load\tright_load\tundetermined\ttotal_chars`.
void write_reports_tsv(std::ostream& out, std::span<const EvalReport> reports);
/// Header `name\thand_switching\tleft_load\tright_load\tundetermined\tswitching_ratio\tload_imbalance`.
void write_comparison_tsv(std::ostream& out, const ComparisonTable& table);
nlohmann::json comparison_to_json(const ComparisonTable& table);

}  // namespace keymine
