#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "keymine/app.hpp"
#include "keymine/corpus.hpp"
#include "keymine/error.hpp"
#include "keymine/evaluation.hpp"
#include "keymine/layout.hpp"
#include "keymine/mining.hpp"
#include "keymine/synthetic.hpp"
#include "util.hpp"

namespace keymine {

namespace {

/// Bookkeeping shared by every command: log, outputs, manifest.
class Run {
public:
    Run(std::string command, const RunConfig& config, std::ostream& echo)
        : command_(std::move(command)), config_(config), echo_(echo) {}

    void log(const std::string& line) {
        log_ << line << '\n';
        echo_ << command_ << ": " << line << '\n';
    }

    void warn(const std::string& line) {
        result_.warnings.push_back(line);
        log("warning: " + line);
    }

    void input(const std::filesystem::path& p) { inputs_.push_back(p); }
    void param(const std::string& key, nlohmann::json value) { params_[key] = std::move(value); }

    void write(const std::string& name, const std::string& content) {
        const auto path = config_.output_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write '" + path.string() + "'");
        out << content;
        if (!out) throw Error("error while writing '" + path.string() + "'");
        result_.outputs.push_back(path);
        outputs_.push_back(name);
    }

    void write_json(const std::string& name, const nlohmann::json& j) { write(name, j.dump(2) + "\n"); }

    template <class Fn>
    void write_stream(const std::string& name, Fn&& fn) {
        std::ostringstream ss;
        fn(ss);
        write(name, ss.str());
    }

    CommandResult& result() { return result_; }

    /// Runs `body` and turns exceptions into exit codes; always writes the log
    /// and the manifest when the output directory is usable.
    CommandResult execute(const std::function<void()>& validate, const std::function<void()>& body) {
        try {
            validate();
        } catch (const std::exception& e) {
            log(std::string("invalid configuration: ") + e.what());
            result_.exit_code = exit_code::kInvalidConfig;
            return finish();
        }
        try {
            std::filesystem::create_directories(config_.output_dir);
            body();
        } catch (const ParseError& e) {
            log(std::string("error: ") + e.what() + (e.field_path().empty() ? "" : " (at " + e.field_path() + ")"));
            result_.exit_code = exit_code::kFailure;
        } catch (const CapacityError& e) {
            log(std::string("error: ") + e.what());
            result_.exit_code = exit_code::kFailure;
        } catch (const std::exception& e) {
            log(std::string("error: ") + e.what());
            result_.exit_code = exit_code::kFailure;
        }
        return finish();
    }

private:
    CommandResult finish() {
        std::error_code ec;
        if (!std::filesystem::is_directory(config_.output_dir, ec)) return result_;
        try {
            nlohmann::json inputs = nlohmann::json::array();
            for (const auto& p : inputs_) {
                std::string digest;
                try {
                    digest = sha256_file(p);
                } catch (const std::exception&) {
                    digest = "unreadable";
                }
                inputs.push_back({{"path", p.generic_string()}, {"sha256", digest}});
            }
            nlohmann::json manifest = {{"tool", kToolName},
                                       {"version", kToolVersion},
                                       {"command", command_},
                                       {"parameters", params_},
                                       {"inputs", std::move(inputs)},
                                       {"outputs", outputs_},
                                       {"exit_code", result_.exit_code},
                                       {"warnings", result_.warnings}};
            std::ofstream(config_.output_dir / (command_ + ".log"), std::ios::binary) << log_.str();
            std::ofstream(config_.output_dir / (command_ + ".manifest.json"), std::ios::binary)
                << manifest.dump(2) << '\n';
        } catch (const std::exception& e) {
            echo_ << command_ << ": could not write run manifest: " << e.what() << '\n';
            if (result_.exit_code == exit_code::kOk) result_.exit_code = exit_code::kFailure;
        }
        return result_;
    }

    std::string command_;
    const RunConfig& config_;
    std::ostream& echo_;
    std::ostringstream log_;
    std::vector<std::filesystem::path> inputs_;
    std::vector<std::string> outputs_;
    nlohmann::json params_ = nlohmann::json::object();
    CommandResult result_;
};

void require_file(const std::filesystem::path& p, const char* what) {
    if (p.empty()) throw DomainError(std::string(what) + " path is required");
    if (!std::filesystem::is_regular_file(p)) throw DomainError(std::string(what) + " '" + p.string() + "' does not exist");
}

struct Corpus {
    AlphabetConfig alphabet;
    std::vector<LetterStream> streams;
};

Corpus load_inputs(Run& run, const RunConfig& config) {
    run.input(config.alphabet_path);
    run.input(config.corpus_manifest_path);
    Corpus c{load_alphabet(config.alphabet_path), {}};
    for (const auto& f : read_manifest(config.corpus_manifest_path)) run.input(f);
    c.streams = load_corpus(config.corpus_manifest_path, c.alphabet);
    std::size_t letters = 0;
    for (const auto& s : c.streams) letters += s.letter_count();
    if (letters == 0) throw Error("corpus '" + config.corpus_manifest_path.string() + "' contains no alphabet letters");
    run.log("corpus: " + std::to_string(c.streams.size()) + " source(s), " + std::to_string(letters) + " letters");
    return c;
}

KeyboardGeometry load_geometry_or_standard(Run& run, const RunConfig& config) {
    if (config.geometry_path.empty()) return KeyboardGeometry::standard();
    run.input(config.geometry_path);
    return load_geometry(config.geometry_path);
}

std::string tsv(auto&& fn) {
    std::ostringstream ss;
    fn(ss);
    return ss.str();
}

}  // namespace

CommandResult cmd_stats(const RunConfig& config, std::ostream& log) {
    Run run("stats", config, log);
    return run.execute(
        [&] {
            require_file(config.alphabet_path, "alphabet");
            require_file(config.corpus_manifest_path, "corpus manifest");
        },
        [&] {
            const auto corpus = load_inputs(run, config);
            static constexpr const char* kNames[] = {"monographs", "digraphs", "trigraphs"};
            NGraphTable monographs(1);
            for (int n = 1; n <= 3; ++n) {
                const auto table = count_ngraphs(corpus.streams, n);
                if (n == 1) monographs = table;
                const std::string base = kNames[n - 1];
                run.write(base + ".tsv", tsv([&](std::ostream& o) { write_ngraph_tsv(o, table, corpus.alphabet); }));
                if (config.format == OutputFormat::Json) run.write_json(base + ".json", ngraph_to_json(table, corpus.alphabet));
                run.log(base + ": " + std::to_string(table.counts().size()) + " distinct, total " +
                        std::to_string(table.total()));
            }

            std::uint64_t undetermined = 0;
            std::uint64_t chars = 0;
            for (const auto& s : corpus.streams) {
                undetermined += s.undetermined_count();
                chars += s.tokens.size();
            }
            const auto unseen = unplaceable_letters(monographs, corpus.alphabet);
            nlohmann::json unseen_json = nlohmann::json::array();
            for (const auto l : unseen) unseen_json.push_back(corpus.alphabet.letter_utf8(l));
            const nlohmann::json summary = {{"sources", corpus.streams.size()},
                                            {"total_chars", chars},
                                            {"total_letters", monographs.total()},
                                            {"distinct_letters", monographs.counts().size()},
                                            {"undetermined", undetermined},
                                            {"unseen_letters", unseen_json}};
            run.write("summary.tsv", "total_letters\tdistinct_letters\tundetermined\ttotal_chars\tsources\n" +
                                         std::to_string(monographs.total()) + '\t' +
                                         std::to_string(monographs.counts().size()) + '\t' +
                                         std::to_string(undetermined) + '\t' + std::to_string(chars) + '\t' +
                                         std::to_string(corpus.streams.size()) + '\n');
            run.write_json("summary.json", summary);
        });
}

CommandResult cmd_mine(const RunConfig& config, std::ostream& log) {
    Run run("mine", config, log);
    return run.execute(
        [&] {
            MiningParams{1, config.min_confidence}.validate();
            if (config.transactions_path.empty()) {
                require_file(config.alphabet_path, "alphabet");
                require_file(config.corpus_manifest_path, "corpus manifest");
            } else {
                require_file(config.transactions_path, "transactions");
            }
        },
        [&] {
            std::optional<TransactionDB> db;
            if (!config.transactions_path.empty()) {
                run.input(config.transactions_path);
                std::ifstream in(config.transactions_path, std::ios::binary);
                if (!in) throw IngestError("cannot read '" + config.transactions_path.string() + "'", 0);
                db = read_transactions_tsv(in);
            } else {
                const auto corpus = load_inputs(run, config);
                db = digraphs_as_transactions(count_ngraphs(corpus.streams, 2), corpus.alphabet);
            }
            if (db->universe().empty()) throw Error("transaction DB has an empty universe");

            const MiningParams params{config.min_support.resolve(db->size()), config.min_confidence};
            run.param("min_support", config.min_support.to_string());
            run.param("min_support_count", params.min_support_count);
            run.param("min_confidence", params.min_confidence);
            run.log("transactions: " + std::to_string(db->size()) + ", items: " + std::to_string(db->universe().size()) +
                    ", min support count: " + std::to_string(params.min_support_count));
            if (params.min_confidence > 1.0) {
                run.warn("min_confidence " + detail::format_fixed(params.min_confidence, 6) +
                         " exceeds 1; no rule can satisfy it");
            }

            MiningStats stats;
            const auto levels = mine_frequent(*db, params, &stats);
            for (std::size_t i = 0; i < stats.candidates_per_level.size(); ++i) {
                const std::size_t frequent = i < levels.size() ? levels[i].itemsets.size() : 0;
                run.log("level " + std::to_string(i + 1) + ": " + std::to_string(stats.candidates_per_level[i]) +
                        " candidates, " + std::to_string(frequent) + " frequent");
            }
            run.log("database scans: " + std::to_string(stats.scans));

            std::vector<CountedItemset> all;
            for (const auto& level : levels) {
                const auto k = std::to_string(level.k);
                run.write("frequent_L" + k + ".tsv",
                          tsv([&](std::ostream& o) { write_itemsets_tsv(o, level.itemsets, *db); }));
                run.write("candidates_C" + k + ".tsv",
                          tsv([&](std::ostream& o) { write_itemsets_tsv(o, level.candidates_evaluated, *db); }));
                all.insert(all.end(), level.itemsets.begin(), level.itemsets.end());
            }
            run.write("frequent_itemsets.tsv", tsv([&](std::ostream& o) { write_itemsets_tsv(o, all, *db); }));

            const auto rules = generate_rules(levels, db->size(), params);
            run.log("strong rules: " + std::to_string(rules.size()));
            run.write("rules.tsv", tsv([&](std::ostream& o) { write_rules_tsv(o, rules, *db); }));
            if (config.format == OutputFormat::Json) {
                run.write_json("frequent_itemsets.json", levels_to_json(levels, *db));
                run.write_json("rules.json", rules_to_json(rules, *db));
            }
        });
}

CommandResult cmd_design(const RunConfig& config, std::ostream& log) {
    Run run("design", config, log);
    return run.execute(
        [&] {
            require_file(config.alphabet_path, "alphabet");
            require_file(config.corpus_manifest_path, "corpus manifest");
            if (!config.geometry_path.empty()) require_file(config.geometry_path, "geometry");
            if (config.layout_name.empty()) throw DomainError("layout name must not be empty");
        },
        [&] {
            run.param("tie_policy", std::string(to_string(config.tie_policy)));
            run.param("layout_name", config.layout_name);
            run.param("place_unseen", config.place_unseen);
            const auto corpus = load_inputs(run, config);
            const auto geometry = load_geometry_or_standard(run, config);

            const auto monographs = count_ngraphs(corpus.streams, 1);
            const auto db = digraphs_as_transactions(count_ngraphs(corpus.streams, 2), corpus.alphabet);
            const auto partition = assign_hands(monographs, db, corpus.alphabet, config.tie_policy);
            run.log("partition: " + std::to_string(partition.left.size()) + " left, " +
                    std::to_string(partition.right.size()) + " right");
            run.write("trace.tsv", tsv([&](std::ostream& o) { write_trace_tsv(o, partition, corpus.alphabet); }));

            const auto audit = audit_partition(partition, monographs, db, corpus.alphabet);
            run.log(std::string("audit: ") + (audit.passed ? "pass" : "FAIL " + audit.message));

            const auto unseen = unplaceable_letters(monographs, corpus.alphabet);
            if (!unseen.empty()) {
                std::string names;
                for (const auto l : unseen) names += (names.empty() ? "" : " ") + corpus.alphabet.letter_utf8(l);
                if (config.place_unseen) {
                    run.log("letters absent from the corpus, appended to the shift layer: " + names);
                } else {
                    run.warn("letters absent from the corpus are left unplaced: " + names);
                }
            }

            PlacementOptions options;
            options.name = config.layout_name;
            options.place_unseen = config.place_unseen;
            if (!config.geometry_path.empty()) {
                options.geometry_ref = "geometry.json";
                run.write_json("geometry.json", geometry.to_json());
            }
            const auto layout = place_keys(partition, monographs, geometry, corpus.alphabet, options);
            run.write_json("layout.json", layout.to_json());
            run.log("layout '" + layout.name + "': " + std::to_string(layout.mapping.size()) + " letters placed");

            if (!audit.passed) run.result().exit_code = exit_code::kAuditFailed;
        });
}

CommandResult cmd_evaluate(const RunConfig& config, std::ostream& log) {
    Run run("evaluate", config, log);
    return run.execute(
        [&] {
            require_file(config.alphabet_path, "alphabet");
            require_file(config.corpus_manifest_path, "corpus manifest");
            if (config.layout_paths.empty()) throw DomainError("evaluate needs at least one layout file");
            for (const auto& p : config.layout_paths) require_file(p, "layout");
            if (!config.geometry_path.empty()) require_file(config.geometry_path, "geometry");
        },
        [&] {
            const auto corpus = load_inputs(run, config);
            std::optional<KeyboardGeometry> geometry_override;
            if (!config.geometry_path.empty()) geometry_override = load_geometry_or_standard(run, config);

            std::vector<Layout> layouts;
            for (const auto& p : config.layout_paths) {
                run.input(p);
                layouts.push_back(load_layout(p, geometry_override));
            }
            const auto reports = evaluate_all(corpus.streams, layouts);
            for (const auto& r : reports) {
                run.log("'" + r.layout_name + "': switching " + std::to_string(r.hand_switching) + ", left " +
                        std::to_string(r.left_load) + ", right " + std::to_string(r.right_load) + ", undetermined " +
                        std::to_string(r.undetermined));
            }
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(r.to_json());
            run.write("reports.tsv", tsv([&](std::ostream& o) { write_reports_tsv(o, reports); }));
            run.write_json("reports.json", arr);

            const auto table = compare(reports);
            run.write("comparison.tsv", tsv([&](std::ostream& o) { write_comparison_tsv(o, table); }));
            if (config.format == OutputFormat::Json) run.write_json("comparison.json", comparison_to_json(table));
        });
}

CommandResult cmd_compare_only(const RunConfig& config, std::ostream& log) {
    Run run("compare-only", config, log);
    return run.execute(
        [&] {
            if (config.report_paths.empty()) throw DomainError("compare-only needs at least one report file");
            for (const auto& p : config.report_paths) require_file(p, "report");
        },
        [&] {
            std::vector<EvalReport> reports;
            for (const auto& p : config.report_paths) {
                run.input(p);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(read_file(p));
                } catch (const nlohmann::json::parse_error& e) {
                    throw ParseError(p.string() + ": " + e.what(), "");
                }
                try {
                    if (j.is_array()) {
                        for (std::size_t i = 0; i < j.size(); ++i) {
                            try {
                                reports.push_back(EvalReport::from_json(j[i]));
                            } catch (const ParseError& e) {
                                throw ParseError(e.what(), "[" + std::to_string(i) + "]." + e.field_path());
                            }
                        }
                    } else {
                        reports.push_back(EvalReport::from_json(j));
                    }
                } catch (const ParseError& e) {
                    throw ParseError(p.string() + ": " + e.what(), e.field_path());
                }
            }
            const auto table = compare(reports);
            run.write("comparison.tsv", tsv([&](std::ostream& o) { write_comparison_tsv(o, table); }));
            if (config.format == OutputFormat::Json) run.write_json("comparison.json", comparison_to_json(table));
            run.log("compared " + std::to_string(reports.size()) + " report(s)");
        });
}

CommandResult cmd_synth(const RunConfig& config, std::ostream& log) {
    Run run("synth", config, log);
    return run.execute([&] { require_file(config.alphabet_path, "alphabet"); },
                       [&] {
                           run.input(config.alphabet_path);
                           run.param("seed", config.seed);
                           run.param("letters", config.synth_letters);
                           const auto alphabet = load_alphabet(config.alphabet_path);
                           const std::vector<CodePoint> letters(alphabet.letters().begin(), alphabet.letters().end());
                           GenerationOptions options;
                           options.symbol_count = config.synth_letters;
                           options.noise_probability = 0.02;
                           for (char32_t d = U'0'; d <= U'9'; ++d) {
                               if (!alphabet.find(d)) options.noise.push_back(d);
                           }
                           const auto model = random_markov_model(letters, config.seed);
                           run.write("synthetic.txt", generate_text(model, options, config.seed));
                           run.write("corpus.manifest", "# seeded synthetic corpus\nsynthetic.txt\n");
                           run.log("wrote " + std::to_string(config.synth_letters) + " symbols with seed " +
                                   std::to_string(config.seed));
                       });
}

}  // namespace keymine
