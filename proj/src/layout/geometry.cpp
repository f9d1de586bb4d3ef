#include <array>
#include <cmath>
#include <fstream>
#include <set>

#include <unicode/unistr.h>

#include "keymine/error.hpp"
#include "keymine/layout.hpp"

namespace keymine {

namespace {

std::string_view to_string(Row r) noexcept {
    switch (r) {
        case Row::Home: return "home";
        case Row::Top: return "top";
        case Row::Bottom: return "bottom";
    }
    return "home";
}

std::string_view to_string(Layer l) noexcept { return l == Layer::Base ? "base" : "shift"; }

nlohmann::json finger_json(Finger f) {
    if (f == Finger::Thumb) return "thumb";
    return static_cast<int>(f);
}

template <class T>
T field(const nlohmann::json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) throw ParseError("missing field '" + std::string(key) + "'", path + "." + key);
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError("field '" + std::string(key) + "' has the wrong type", path + "." + key);
    }
}

KeyPosition position_from_json(const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError("position record must be an object", path);
    KeyPosition p;
    p.id = field<std::string>(j, "id", path);

    const auto hand = field<std::string>(j, "hand", path);
    if (hand == "left") p.hand = Hand::Left;
    else if (hand == "right") p.hand = Hand::Right;
    else throw ParseError("hand must be 'left' or 'right'", path + ".hand");

    if (!j.contains("finger")) throw ParseError("missing field 'finger'", path + ".finger");
    const auto& f = j.at("finger");
    if (f.is_string() && f.get<std::string>() == "thumb") {
        p.finger = Finger::Thumb;
    } else if (f.is_number_integer() && f.get<int>() >= 1 && f.get<int>() <= 4) {
        p.finger = static_cast<Finger>(f.get<int>());
    } else {
        throw ParseError("finger must be 1-4 or \"thumb\"", path + ".finger");
    }

    const auto row = field<std::string>(j, "row", path);
    if (row == "home") p.row = Row::Home;
    else if (row == "top") p.row = Row::Top;
    else if (row == "bottom") p.row = Row::Bottom;
    else throw ParseError("row must be home, top or bottom", path + ".row");

    const auto layer = field<std::string>(j, "layer", path);
    if (layer == "base") p.layer = Layer::Base;
    else if (layer == "shift") p.layer = Layer::Shift;
    else throw ParseError("layer must be base or shift", path + ".layer");

    p.cost = field<double>(j, "cost", path);
    return p;
}

}  // namespace

std::string_view to_string(Hand h) noexcept { return h == Hand::Left ? "left" : "right"; }

KeyboardGeometry::KeyboardGeometry(std::vector<KeyPosition> positions) : positions_(std::move(positions)) {
    std::set<std::string_view> ids;
    bool left_base = false;
    bool right_base = false;
    for (const auto& p : positions_) {
        if (!ids.insert(p.id).second) throw DomainError("duplicate position id '" + p.id + "'");
        if (!(p.cost > 0.0) || !std::isfinite(p.cost)) {
            throw DomainError("position '" + p.id + "' must have a finite positive cost");
        }
        if (p.layer == Layer::Base) (p.hand == Hand::Left ? left_base : right_base) = true;
    }
    if (!left_base || !right_base) throw DomainError("geometry needs at least one base-layer key per hand");
}

const KeyPosition* KeyboardGeometry::find(std::string_view id) const {
    for (const auto& p : positions_) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

nlohmann::json KeyboardGeometry::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : positions_) {
        arr.push_back({{"id", p.id},
                       {"hand", to_string(p.hand)},
                       {"finger", finger_json(p.finger)},
                       {"row", to_string(p.row)},
                       {"layer", to_string(p.layer)},
                       {"cost", p.cost}});
    }
    return arr;
}

KeyboardGeometry KeyboardGeometry::from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("geometry must be a JSON array of position records", "");
    std::vector<KeyPosition> positions;
    for (std::size_t i = 0; i < j.size(); ++i) {
        positions.push_back(position_from_json(j[i], "[" + std::to_string(i) + "]"));
    }
    return KeyboardGeometry(std::move(positions));
}

KeyboardGeometry KeyboardGeometry::standard() {
    static const std::array<std::array<const char*, 10>, 3> kKeys{{
        {"Q", "W", "E", "R", "T", "Y", "U", "I", "O", "P"},
        {"A", "S", "D", "F", "G", "H", "J", "K", "L", ";"},
        {"Z", "X", "C", "V", "B", "N", "M", ",", ".", "/"},
    }};
    static const std::array<Row, 3> kRows{Row::Top, Row::Home, Row::Bottom};
    static const std::array<double, 3> kRowCost{0.5, 0.0, 1.0};
    static const std::array<Finger, 10> kFinger{Finger::Pinky, Finger::Ring,  Finger::Middle, Finger::Index,
                                                Finger::Index, Finger::Index, Finger::Index,  Finger::Middle,
                                                Finger::Ring,  Finger::Pinky};
    // Per column, pinky to pinky. The two inner index columns pay a stretch penalty.
    static const std::array<double, 10> kColumnCost{2.0, 1.5, 1.0, 1.0, 2.0, 2.0, 1.0, 1.0, 1.5, 2.0};
    constexpr double kShiftPenalty = 3.0;

    std::vector<KeyPosition> positions;
    for (const Layer layer : {Layer::Base, Layer::Shift}) {
        // Home row first so that equal-cost ties fall to the home row.
        for (const std::size_t r : {std::size_t{1}, std::size_t{0}, std::size_t{2}}) {
            for (std::size_t c = 0; c < 10; ++c) {
                KeyPosition p;
                p.id = (layer == Layer::Shift ? std::string("Shift+") : std::string()) + kKeys[r][c];
                p.hand = c < 5 ? Hand::Left : Hand::Right;
                p.finger = kFinger[c];
                p.row = kRows[r];
                p.layer = layer;
                p.cost = kColumnCost[c] + kRowCost[r] + (layer == Layer::Shift ? kShiftPenalty : 0.0);
                positions.push_back(std::move(p));
            }
        }
    }
    return KeyboardGeometry(std::move(positions));
}

KeyboardGeometry load_geometry(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), "");
    }
    try {
        return KeyboardGeometry::from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.field_path());
    }
}

void Layout::validate() const {
    std::set<std::string_view> used;
    for (const auto& [cp, id] : mapping) {
        if (!geometry.find(id)) {
            throw DomainError("layout '" + name + "' maps '" + encode_utf8(cp) + "' to unknown position '" + id + "'");
        }
        if (!used.insert(id).second) {
            throw DomainError("layout '" + name + "' maps two letters to position '" + id + "'");
        }
    }
}

std::optional<Hand> Layout::hand_of(CodePoint cp) const {
    const auto it = mapping.find(cp);
    if (it == mapping.end()) return std::nullopt;
    const auto* p = geometry.find(it->second);
    if (!p) return std::nullopt;
    return p->hand;
}

nlohmann::json Layout::to_json() const {
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [cp, id] : mapping) m[encode_utf8(cp)] = id;
    return {{"name", name}, {"geometry_ref", geometry_ref}, {"mapping", std::move(m)}};
}

Layout layout_from_json(const nlohmann::json& j, const KeyboardGeometry& geometry) {
    if (!j.is_object()) throw ParseError("layout must be a JSON object", "");
    Layout layout;
    layout.geometry = geometry;
    layout.name = field<std::string>(j, "name", "");
    if (j.contains("geometry_ref")) {
        if (!j["geometry_ref"].is_string()) throw ParseError("geometry_ref must be a string", "geometry_ref");
        layout.geometry_ref = j["geometry_ref"].get<std::string>();
    }
    if (!j.contains("mapping") || !j["mapping"].is_object()) {
        throw ParseError("layout needs a 'mapping' object", "mapping");
    }
    for (const auto& [letter, pos] : j["mapping"].items()) {
        const std::string path = "mapping." + letter;
        const auto us = icu::UnicodeString::fromUTF8(letter);
        if (us.countChar32() != 1) throw ParseError("mapping key is not a single code point", path);
        if (!pos.is_string()) throw ParseError("position id must be a string", path);
        if (!geometry.find(pos.get<std::string>())) {
            throw ParseError("unknown position id '" + pos.get<std::string>() + "'", path);
        }
        layout.mapping[static_cast<CodePoint>(us.char32At(0))] = pos.get<std::string>();
    }
    try {
        layout.validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what(), "mapping");
    }
    return layout;
}

Layout load_layout(const std::filesystem::path& path, const std::optional<KeyboardGeometry>& geometry_override) {
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), "");
    }
    try {
        KeyboardGeometry geometry = KeyboardGeometry::standard();
        if (geometry_override) {
            geometry = *geometry_override;
        } else if (j.is_object() && j.contains("geometry_ref") && j["geometry_ref"].is_string()) {
            const auto ref = j["geometry_ref"].get<std::string>();
            if (ref != "standard") {
                std::filesystem::path gp(ref);
                geometry = load_geometry(gp.is_absolute() ? gp : path.parent_path() / gp);
            }
        }
        return layout_from_json(j, geometry);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.field_path());
    }
}

void save_layout(const std::filesystem::path& path, const Layout& layout) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << layout.to_json().dump(2) << '\n';
}

}  // namespace keymine
