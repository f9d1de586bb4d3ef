#include <algorithm>

#include "keymine/error.hpp"
#include "keymine/layout.hpp"

namespace keymine {

namespace {

// Geometry indices ordered by cost, base layer first at equal cost, then file order.
std::vector<std::size_t> positions_by_cost(const KeyboardGeometry& geometry, auto&& keep) {
    const auto& pos = geometry.positions();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (keep(pos[i])) idx.push_back(i);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (pos[a].cost != pos[b].cost) return pos[a].cost < pos[b].cost;
        return pos[a].layer == Layer::Base && pos[b].layer == Layer::Shift;
    });
    return idx;
}

}  // namespace

Layout place_keys(const HandPartition& partition, const NGraphTable& monographs, const KeyboardGeometry& geometry,
                  const AlphabetConfig& alphabet, const PlacementOptions& options) {
    if (monographs.order() != 1) throw DomainError("place_keys needs an order-1 monograph table");

    Layout layout;
    layout.name = options.name;
    layout.geometry_ref = options.geometry_ref;
    layout.geometry = geometry;

    std::vector<bool> used(geometry.positions().size(), false);
    std::vector<std::string> overflow_letters;
    std::size_t overflow = 0;
    std::string detail;

    for (const Hand hand : {Hand::Left, Hand::Right}) {
        auto letters = hand == Hand::Left ? partition.left : partition.right;
        std::stable_sort(letters.begin(), letters.end(), [&](LetterId a, LetterId b) {
            const auto ca = monographs.count({a});
            const auto cb = monographs.count({b});
            if (ca != cb) return ca > cb;
            return a < b;
        });
        const auto slots = positions_by_cost(geometry, [&](const KeyPosition& p) { return p.hand == hand; });
        if (letters.size() > slots.size()) {
            const std::size_t extra = letters.size() - slots.size();
            overflow += extra;
            detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(hand)) + " hand needs " +
                      std::to_string(letters.size()) + " keys but has " + std::to_string(slots.size());
            for (std::size_t i = slots.size(); i < letters.size(); ++i) {
                overflow_letters.push_back(alphabet.letter_utf8(letters[i]));
            }
            continue;
        }
        for (std::size_t i = 0; i < letters.size(); ++i) {
            used[slots[i]] = true;
            layout.mapping[alphabet.letter(letters[i])] = geometry.positions()[slots[i]].id;
        }
    }
    if (overflow > 0) {
        std::string names;
        for (const auto& l : overflow_letters) names += (names.empty() ? "" : " ") + l;
        throw CapacityError("geometry too small by " + std::to_string(overflow) + " key(s) (" + detail +
                                "); unplaced letters: " + names,
                            overflow, std::move(overflow_letters));
    }

    if (options.place_unseen) {
        const auto free_shift = positions_by_cost(geometry, [](const KeyPosition& p) { return p.layer == Layer::Shift; });
        std::size_t next = 0;
        std::vector<std::string> missing;
        for (const auto l : unplaceable_letters(monographs, alphabet)) {
            while (next < free_shift.size() && used[free_shift[next]]) ++next;
            if (next == free_shift.size()) {
                missing.push_back(alphabet.letter_utf8(l));
                continue;
            }
            used[free_shift[next]] = true;
            layout.mapping[alphabet.letter(l)] = geometry.positions()[free_shift[next]].id;
        }
        if (!missing.empty()) {
            const auto n = missing.size();
            throw CapacityError("no free shift-layer key for " + std::to_string(n) + " unseen letter(s)", n,
                                std::move(missing));
        }
    }
    layout.validate();
    return layout;
}

}  // namespace keymine
