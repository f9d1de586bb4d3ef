// keymine: corpus statistics, Apriori mining, hand-alternation layout design
// and layout evaluation.
//
//   keymine stats        --alphabet A --corpus M -o DIR
//   keymine mine         --alphabet A --corpus M | --transactions T  [--min-support S] [--min-confidence C]
//   keymine design       --alphabet A --corpus M [--geometry G] [--balanced-ties] [--name N]
//   keymine evaluate     --alphabet A --corpus M LAYOUT...
//   keymine compare-only REPORT...
//   keymine synth        --alphabet A --seed S --letters N

#include <iostream>

#include <CLI11.hpp>

#include "keymine/app.hpp"
#include "keymine/error.hpp"

namespace {

struct Overrides {
    std::string config;
    std::string output_dir;
    std::string format;
    std::string alphabet;
    std::string corpus;
    std::string geometry;
    std::string transactions;
    std::string min_support;
    std::optional<double> min_confidence;
    std::string tie_policy;
    bool balanced_ties = false;
    std::optional<std::uint64_t> seed;
    std::string name;
    bool place_unseen = false;
    std::optional<std::size_t> letters;
    std::vector<std::string> layouts;
    std::vector<std::string> reports;
};

keymine::RunConfig build_config(const Overrides& o) {
    keymine::RunConfig c;
    if (!o.config.empty()) c = keymine::load_run_config(o.config);
    if (!o.output_dir.empty()) c.output_dir = o.output_dir;
    if (!o.format.empty()) c.format = keymine::parse_output_format(o.format);
    if (!o.alphabet.empty()) c.alphabet_path = o.alphabet;
    if (!o.corpus.empty()) c.corpus_manifest_path = o.corpus;
    if (!o.geometry.empty()) c.geometry_path = o.geometry;
    if (!o.transactions.empty()) c.transactions_path = o.transactions;
    if (!o.min_support.empty()) c.min_support = keymine::MinSupport::parse(o.min_support);
    if (o.min_confidence) c.min_confidence = *o.min_confidence;
    if (!o.tie_policy.empty()) c.tie_policy = keymine::parse_tie_policy(o.tie_policy);
    if (o.balanced_ties) c.tie_policy = keymine::TiePolicy::BalancedTies;
    if (o.seed) c.seed = *o.seed;
    if (!o.name.empty()) c.layout_name = o.name;
    if (o.place_unseen) c.place_unseen = true;
    if (o.letters) c.synth_letters = *o.letters;
    if (!o.layouts.empty()) c.layout_paths.assign(o.layouts.begin(), o.layouts.end());
    if (!o.reports.empty()) c.report_paths.assign(o.reports.begin(), o.reports.end());
    return c;
}

void corpus_options(CLI::App* sub, Overrides& o) {
    sub->add_option("--alphabet", o.alphabet, "Alphabet JSON {name, letters}");
    sub->add_option("--corpus", o.corpus, "Corpus manifest (one UTF-8 file path per line)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"keymine: mine letter associations from a corpus and design two-hand keyboard layouts"};
    app.set_version_flag("--version", std::string(keymine::kToolVersion));
    app.require_subcommand(1);

    Overrides o;
    app.add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("-o,--output-dir", o.output_dir, "Directory for all outputs");
    app.add_option("--format", o.format, "Extra report format")->check(CLI::IsMember({"tsv", "json"}));

    auto* stats = app.add_subcommand("stats", "Monograph, digraph and trigraph tables");
    corpus_options(stats, o);

    auto* mine = app.add_subcommand("mine", "Apriori frequent itemsets and strong rules");
    corpus_options(mine, o);
    mine->add_option("--transactions", o.transactions, "Transaction TSV (tid, items) instead of the corpus");
    mine->add_option("--min-support", o.min_support, "Count (e.g. 2) or fraction of |D| (e.g. 0.22)");
    mine->add_option("--min-confidence", o.min_confidence, "Minimum rule confidence");

    auto* design = app.add_subcommand("design", "Assign letters to hands and place them on keys");
    corpus_options(design, o);
    design->add_option("--geometry", o.geometry, "Geometry JSON (default: built-in 30+30 key block)");
    design->add_option("--tie-policy", o.tie_policy, "paper-literal or balanced-ties")
        ->check(CLI::IsMember({"paper-literal", "balanced-ties"}));
    design->add_flag("--balanced-ties", o.balanced_ties, "Alternate mixed-signal letters between hands");
    design->add_option("--name", o.name, "Layout name");
    design->add_flag("--place-unseen", o.place_unseen, "Put letters absent from the corpus on free shift keys");

    auto* evaluate = app.add_subcommand("evaluate", "Score layouts against the corpus");
    corpus_options(evaluate, o);
    evaluate->add_option("--geometry", o.geometry, "Geometry override for every layout");
    evaluate->add_option("layouts", o.layouts, "Layout JSON files");

    auto* compare = app.add_subcommand("compare-only", "Comparison table from report JSON files");
    compare->add_option("reports", o.reports, "Report JSON files (object or array)");

    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic corpus over the alphabet");
    synth->add_option("--alphabet", o.alphabet, "Alphabet JSON");
    synth->add_option("--seed", o.seed, "RNG seed");
    synth->add_option("--letters", o.letters, "Number of non-space symbols");

    CLI11_PARSE(app, argc, argv);

    keymine::RunConfig config;
    try {
        config = build_config(o);
    } catch (const keymine::ParseError& e) {
        std::cerr << "keymine: " << e.what() << (e.field_path().empty() ? "" : " (at " + e.field_path() + ")") << '\n';
        return keymine::exit_code::kInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "keymine: " << e.what() << '\n';
        return keymine::exit_code::kInvalidConfig;
    }

    keymine::CommandResult result;
    if (stats->parsed()) result = keymine::cmd_stats(config, std::cerr);
    else if (mine->parsed()) result = keymine::cmd_mine(config, std::cerr);
    else if (design->parsed()) result = keymine::cmd_design(config, std::cerr);
    else if (evaluate->parsed()) result = keymine::cmd_evaluate(config, std::cerr);
    else if (compare->parsed()) result = keymine::cmd_compare_only(config, std::cerr);
    else if (synth->parsed()) result = keymine::cmd_synth(config, std::cerr);

    for (const auto& p : result.outputs) std::cout << p.generic_string() << '\n';
    return result.exit_code;
}
