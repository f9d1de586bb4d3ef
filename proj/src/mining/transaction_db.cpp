#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include "keymine/error.hpp"
#include "keymine/mining.hpp"
#include "util.hpp"

namespace keymine {

TransactionDB::TransactionDB(std::vector<std::string> universe) : universe_(std::move(universe)) {
    for (std::size_t i = 0; i < universe_.size(); ++i) {
        if (universe_[i].empty()) throw DomainError("empty item name in universe");
        if (universe_[i].find_first_of(" \t\n") != std::string::npos) {
            throw DomainError("item name '" + universe_[i] + "' contains whitespace");
        }
        if (!index_.emplace(universe_[i], static_cast<ItemId>(i)).second) {
            throw DomainError("duplicate item '" + universe_[i] + "' in universe");
        }
    }
}

void TransactionDB::add(std::string tid, Itemset items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    if (!items.empty() && items.back() >= universe_.size()) {
        throw DomainError("transaction " + tid + " holds item id " + std::to_string(items.back()) +
                          " outside a universe of " + std::to_string(universe_.size()));
    }
    transactions_.push_back({std::move(tid), std::move(items)});
}

void TransactionDB::add_named(std::string tid, std::span<const std::string> names) {
    Itemset items;
    items.reserve(names.size());
    for (const auto& n : names) {
        const auto id = find(n);
        if (!id) throw DomainError("transaction " + tid + ": item '" + n + "' is not in the universe");
        items.push_back(*id);
    }
    add(std::move(tid), std::move(items));
}

std::optional<ItemId> TransactionDB::find(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string TransactionDB::format(const Itemset& items) const {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s.push_back(' ');
        s += name(items[i]);
    }
    return s;
}

void MiningParams::validate() const {
    if (min_support_count < 1) throw DomainError("min_support_count must be at least 1");
    if (std::isnan(min_confidence) || min_confidence < 0.0) {
        throw DomainError("min_confidence must be a non-negative number");
    }
}

bool natural_less(std::string_view a, std::string_view b) {
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            std::size_t ie = i;
            std::size_t je = j;
            while (ie < a.size() && is_digit(a[ie])) ++ie;
            while (je < b.size() && is_digit(b[je])) ++je;
            auto da = a.substr(i, ie - i);
            auto db = b.substr(j, je - j);
            const auto strip = [](std::string_view d) {
                const auto nz = d.find_first_not_of('0');
                return nz == std::string_view::npos ? std::string_view{} : d.substr(nz);
            };
            const auto sa = strip(da);
            const auto sb = strip(db);
            if (sa.size() != sb.size()) return sa.size() < sb.size();
            if (sa != sb) return sa < sb;
            if (da.size() != db.size()) return da.size() < db.size();
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

TransactionDB read_transactions_tsv(std::istream& in, std::optional<std::vector<std::string>> universe) {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::chomp(line);
        if (detail::trim(text).empty() || detail::trim(text).front() == '#') continue;
        const auto cols = detail::split(text, '\t');
        if (!header_seen) {
            header_seen = true;
            if (cols.size() == 2 && detail::trim(cols[0]) == "tid" && detail::trim(cols[1]) == "items") continue;
            throw ParseError("transaction TSV must start with header 'tid\\titems'", "line 1");
        }
        if (cols.size() != 2) {
            throw ParseError("expected 2 tab-separated columns, got " + std::to_string(cols.size()),
                             "line " + std::to_string(line_no));
        }
        std::vector<std::string> items;
        for (const auto w : detail::split_words(cols[1])) {
            items.emplace_back(w);
            seen.emplace(w);
        }
        rows.emplace_back(std::string(detail::trim(cols[0])), std::move(items));
    }

    std::vector<std::string> names;
    if (universe) {
        names = std::move(*universe);
    } else {
        names.assign(seen.begin(), seen.end());
        std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
            return natural_less(a, b);
        });
    }
    TransactionDB db(std::move(names));
    for (auto& [tid, items] : rows) db.add_named(std::move(tid), items);
    return db;
}

void write_transactions_tsv(std::ostream& out, const TransactionDB& db) {
    out << "tid\titems\n";
    for (const auto& t : db.transactions()) out << t.tid << '\t' << db.format(t.items) << '\n';
}

}  // namespace keymine
