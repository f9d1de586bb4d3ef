#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "keymine/error.hpp"
#include "keymine/evaluation.hpp"
#include "util.hpp"

namespace keymine {

namespace {

enum : std::uint8_t { kNone = 0, kLeft = 1, kRight = 2 };

std::unordered_map<CodePoint, std::uint8_t> hand_lookup(const Layout& layout) {
    std::unordered_map<CodePoint, std::uint8_t> out;
    for (const auto& [cp, id] : layout.mapping) {
        if (const auto* p = layout.geometry.find(id)) out.emplace(cp, p->hand == Hand::Left ? kLeft : kRight);
    }
    return out;
}

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

template <class T>
T get_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ParseError("missing field '" + std::string(key) + "'", key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError("field '" + std::string(key) + "' has the wrong type", key);
    }
}

}  // namespace

void EvalReport::accumulate(const EvalReport& other) {
    hand_switching += other.hand_switching;
    left_load += other.left_load;
    right_load += other.right_load;
    undetermined += other.undetermined;
    total_chars += other.total_chars;
}

nlohmann::json EvalReport::to_json() const {
    return {{"layout_name", layout_name},       {"hand_switching", hand_switching}, {"left_load", left_load},
            {"right_load", right_load},         {"undetermined", undetermined},     {"total_chars", total_chars}};
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("report must be a JSON object", "");
    EvalReport r;
    r.layout_name = get_field<std::string>(j, "layout_name");
    r.hand_switching = get_field<std::uint64_t>(j, "hand_switching");
    r.left_load = get_field<std::uint64_t>(j, "left_load");
    r.right_load = get_field<std::uint64_t>(j, "right_load");
    r.undetermined = get_field<std::uint64_t>(j, "undetermined");
    r.total_chars = get_field<std::uint64_t>(j, "total_chars");
    if (r.left_load + r.right_load + r.undetermined != r.total_chars) {
        throw ParseError("left_load + right_load + undetermined must equal total_chars", "total_chars");
    }
    return r;
}

EvalReport evaluate(const LetterStream& stream, const Layout& layout) {
    const auto lookup = hand_lookup(layout);
    const auto& tokens = stream.tokens;
    const auto n = static_cast<std::ptrdiff_t>(tokens.size());

    std::vector<std::uint8_t> hands(tokens.size(), kNone);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const Token& t = tokens[static_cast<std::size_t>(i)];
        if (!t.is_letter()) continue;
        const auto it = lookup.find(t.code_point);
        if (it != lookup.end()) hands[static_cast<std::size_t>(i)] = it->second;
    }

    std::uint64_t left = 0;
    std::uint64_t right = 0;
    std::uint64_t switches = 0;
#pragma omp parallel for schedule(static) reduction(+ : left, right, switches)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto h = hands[static_cast<std::size_t>(i)];
        if (h == kNone) continue;
        (h == kLeft ? left : right) += 1;
        if (i > 0) {
            const auto prev = hands[static_cast<std::size_t>(i - 1)];
            if (prev != kNone && prev != h) ++switches;
        }
    }

    EvalReport r;
    r.layout_name = layout.name;
    r.total_chars = tokens.size();
    r.left_load = left;
    r.right_load = right;
    r.undetermined = r.total_chars - left - right;
    r.hand_switching = switches;
    return r;
}

EvalReport evaluate(std::span<const LetterStream> streams, const Layout& layout) {
    EvalReport total;
    total.layout_name = layout.name;
    for (const auto& s : streams) total.accumulate(evaluate(s, layout));
    return total;
}

std::vector<EvalReport> evaluate_all(std::span<const LetterStream> streams, std::span<const Layout> layouts) {
    std::vector<EvalReport> out(layouts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(layouts.size()); ++i) {
        out[static_cast<std::size_t>(i)] = evaluate(streams, layouts[static_cast<std::size_t>(i)]);
    }
    return out;
}

ComparisonTable compare(std::span<const EvalReport> reports) {
    if (reports.empty()) throw DomainError("compare needs at least one report");
    for (const auto& r : reports) {
        if (r.total_chars != reports.front().total_chars) {
            throw IncomparableReportsError("reports '" + reports.front().layout_name + "' and '" + r.layout_name +
                                           "' cover different streams (" + std::to_string(reports.front().total_chars) +
                                           " vs " + std::to_string(r.total_chars) + " characters)");
        }
    }
    ComparisonTable table;
    for (const auto& r : reports) {
        const auto typed = r.left_load + r.right_load;
        const auto diff = r.left_load > r.right_load ? r.left_load - r.right_load : r.right_load - r.left_load;
        table.rows.push_back({r, ratio(r.hand_switching, typed), ratio(diff, typed)});
    }
    std::stable_sort(table.rows.begin(), table.rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        return a.report.hand_switching > b.report.hand_switching;
    });
    return table;
}

void write_reports_tsv(std::ostream& out, std::span<const EvalReport> reports) {
    out << "name\thand_switching\tleft_load\tright_load\tundetermined\ttotal_chars\n";
    for (const auto& r : reports) {
        out << r.layout_name << '\t' << r.hand_switching << '\t' << r.left_load << '\t' << r.right_load << '\t'
            << r.undetermined << '\t' << r.total_chars << '\n';
    }
}

void write_comparison_tsv(std::ostream& out, const ComparisonTable& table) {
    out << "name\thand_switching\tleft_load\tright_load\tundetermined\tswitching_ratio\tload_imbalance\n";
    for (const auto& row : table.rows) {
        const auto& r = row.report;
        out << r.layout_name << '\t' << r.hand_switching << '\t' << r.left_load << '\t' << r.right_load << '\t'
            << r.undetermined << '\t' << detail::format_fixed(row.switching_ratio, 6) << '\t'
            << detail::format_fixed(row.load_imbalance, 6) << '\n';
    }
}

nlohmann::json comparison_to_json(const ComparisonTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        auto j = row.report.to_json();
        j["switching_ratio"] = row.switching_ratio;
        j["load_imbalance"] = row.load_imbalance;
        rows.push_back(std::move(j));
    }
    return rows;
}

}  // namespace keymine
