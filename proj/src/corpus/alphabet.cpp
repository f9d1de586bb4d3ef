#include <fstream>
#include <sstream>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "keymine/corpus.hpp"
#include "keymine/error.hpp"

namespace keymine {

std::string encode_utf8(CodePoint cp) {
    std::string out;
    const auto c = static_cast<std::uint32_t>(cp);
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
    return out;
}

AlphabetConfig::AlphabetConfig(std::string name, std::vector<CodePoint> letters)
    : name_(std::move(name)), letters_(std::move(letters)) {
    if (letters_.empty()) throw DomainError("alphabet '" + name_ + "' has no letters");
    index_.reserve(letters_.size());
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        const CodePoint cp = letters_[i];
        if (u_isUWhiteSpace(static_cast<UChar32>(cp))) {
            throw DomainError("alphabet '" + name_ + "': whitespace code point at index " + std::to_string(i));
        }
        if (!index_.emplace(cp, static_cast<LetterId>(i)).second) {
            throw DomainError("alphabet '" + name_ + "': duplicate letter '" + encode_utf8(cp) + "'");
        }
    }
}

std::optional<LetterId> AlphabetConfig::find(CodePoint cp) const {
    const auto it = index_.find(cp);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<LetterId> AlphabetConfig::find_utf8(std::string_view s) const {
    const auto us = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    if (us.countChar32() != 1) return std::nullopt;
    return find(static_cast<CodePoint>(us.char32At(0)));
}

nlohmann::json AlphabetConfig::to_json() const {
    nlohmann::json letters = nlohmann::json::array();
    for (const CodePoint cp : letters_) letters.push_back(encode_utf8(cp));
    return {{"name", name_}, {"letters", std::move(letters)}};
}

AlphabetConfig AlphabetConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("alphabet must be a JSON object", "");
    if (!j.contains("name") || !j["name"].is_string()) throw ParseError("alphabet needs a string 'name'", "name");
    if (!j.contains("letters") || !j["letters"].is_array()) {
        throw ParseError("alphabet needs a 'letters' array", "letters");
    }
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw ConsistencyError("ICU NFC normalizer unavailable");

    std::vector<CodePoint> letters;
    const auto& arr = j["letters"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "letters[" + std::to_string(i) + "]";
        if (!arr[i].is_string()) throw ParseError("letter must be a string", path);
        const auto s = arr[i].get<std::string>();
        const auto us = icu::UnicodeString::fromUTF8(s);
        if (us.countChar32() != 1) throw ParseError("letter '" + s + "' is not a single code point", path);
        if (!nfc->isNormalized(us, status) || U_FAILURE(status)) {
            throw ParseError("letter '" + s + "' changes under NFC and can never match normalized text", path);
        }
        letters.push_back(static_cast<CodePoint>(us.char32At(0)));
    }
    return AlphabetConfig(j["name"].get<std::string>(), std::move(letters));
}

AlphabetConfig load_alphabet(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), "");
    }
    try {
        return AlphabetConfig::from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.field_path());
    }
}

}  // namespace keymine
