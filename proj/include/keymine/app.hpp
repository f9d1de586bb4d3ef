#pragma once

// Command implementations behind the `keymine` executable. Each command reads
// its inputs, writes its outputs plus `<command>.log` and
// `<command>.manifest.json` into the output directory, and reports an exit code.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "keymine/layout.hpp"

namespace keymine {

inline constexpr const char* kToolName = "keymine";
inline constexpr const char* kToolVersion = "0.1.0";

enum class OutputFormat { Tsv, Json };
OutputFormat parse_output_format(std::string_view s);

/// Minimum support as either an absolute count or a fraction of |D|.
class MinSupport {
public:
    static MinSupport count(std::uint64_t c);
    static MinSupport fraction(double f);
    /// "2" is a count; "0.25" or "1.0" is a fraction. Throws DomainError.
    static MinSupport parse(std::string_view text);

    /// A fraction becomes ceil(f * db_size), never less than 1.
    std::uint64_t resolve(std::uint64_t db_size) const;
    bool is_fraction() const noexcept { return is_fraction_; }
    std::string to_string() const;

private:
    bool is_fraction_ = false;
    std::uint64_t count_ = 2;
    double fraction_ = 0.0;
};

struct RunConfig {
    std::filesystem::path alphabet_path;
    std::filesystem::path corpus_manifest_path;
    std::filesystem::path geometry_path;      ///< empty: built-in standard geometry
    std::filesystem::path transactions_path;  ///< mine: read a transaction TSV instead of the corpus
    std::filesystem::path output_dir = ".";
    MinSupport min_support = MinSupport::count(2);
    double min_confidence = 0.5;
    TiePolicy tie_policy = TiePolicy::PaperLiteral;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::Tsv;
    std::string layout_name = "designed";
    bool place_unseen = false;
    std::vector<std::filesystem::path> layout_paths;
    std::vector<std::filesystem::path> report_paths;
    std::size_t synth_letters = 50000;
};

/// Reads a JSON config; relative paths resolve against the config file's directory.
RunConfig load_run_config(const std::filesystem::path& path);
/// Overlays the keys present in `j` onto `config`.
void apply_config_json(RunConfig& config, const nlohmann::json& j, const std::filesystem::path& base_dir);

struct CommandResult {
    int exit_code = 0;
    std::vector<std::string> warnings;
    std::vector<std::filesystem::path> outputs;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;       ///< unreadable input, capacity, malformed file...
inline constexpr int kInvalidConfig = 2; ///< rejected before any work
inline constexpr int kAuditFailed = 3;
}  // namespace exit_code

/// n-graph tables for n = 1, 2, 3 and a corpus summary.
CommandResult cmd_stats(const RunConfig& config, std::ostream& log);
/// Frequent itemsets per level, candidates per level, and strong rules.
CommandResult cmd_mine(const RunConfig& config, std::ostream& log);
/// Hand assignment, audit, key placement: layout.json + trace.tsv.
CommandResult cmd_design(const RunConfig& config, std::ostream& log);
/// One report per layout plus a comparison table.
CommandResult cmd_evaluate(const RunConfig& config, std::ostream& log);
/// Comparison table from previously written report JSON files.
CommandResult cmd_compare_only(const RunConfig& config, std::ostream& log);
/// Seeded synthetic corpus over the alphabet, with a one-entry manifest.
CommandResult cmd_synth(const RunConfig& config, std::ostream& log);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace keymine
