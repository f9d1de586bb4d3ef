#include <algorithm>
#include <exception>
#include <fstream>
#include <sstream>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "keymine/corpus.hpp"
#include "keymine/error.hpp"
#include "util.hpp"

namespace keymine {

namespace {

icu::UnicodeString decode_strict(std::string_view utf8) {
    icu::UnicodeString out;
    const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
    const auto length = static_cast<int32_t>(utf8.size());
    if (static_cast<std::size_t>(length) != utf8.size()) {
        throw IngestError("input larger than 2 GiB is not supported", 0);
    }
    int32_t i = 0;
    while (i < length) {
        const int32_t start = i;
        UChar32 c;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            throw IngestError("invalid UTF-8 sequence at byte offset " + std::to_string(start),
                              static_cast<std::size_t>(start));
        }
        out.append(c);
    }
    return out;
}

}  // namespace

std::size_t LetterStream::letter_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_letter(); }));
}

LetterStream tokenize(std::string_view utf8, const AlphabetConfig& alphabet, std::string source_id) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw ConsistencyError("ICU NFC normalizer unavailable");

    const icu::UnicodeString decoded = decode_strict(utf8);
    const icu::UnicodeString normalized = nfc->normalize(decoded, status);
    if (U_FAILURE(status)) throw IngestError("NFC normalization failed", 0);

    LetterStream stream;
    stream.source_id = std::move(source_id);
    stream.tokens.reserve(static_cast<std::size_t>(normalized.length()));
    for (int32_t i = 0; i < normalized.length(); i = normalized.moveIndex32(i, 1)) {
        const UChar32 c = normalized.char32At(i);
        if (u_isUWhiteSpace(c)) continue;
        Token token;
        token.code_point = static_cast<CodePoint>(c);
        if (const auto id = alphabet.find(token.code_point)) token.letter = *id;
        stream.tokens.push_back(token);
    }
    return stream;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot read '" + path.string() + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IngestError("error while reading '" + path.string() + "'", 0);
    return ss.str();
}

std::vector<std::filesystem::path> read_manifest(const std::filesystem::path& manifest) {
    const std::string text = read_file(manifest);
    const auto base = manifest.parent_path();
    std::vector<std::filesystem::path> out;
    for (const auto raw : detail::split(text, '\n')) {
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        std::filesystem::path p{std::string(line)};
        out.push_back(p.is_absolute() ? p : base / p);
    }
    return out;
}

std::vector<LetterStream> load_corpus(const std::filesystem::path& manifest, const AlphabetConfig& alphabet) {
    const auto files = read_manifest(manifest);
    std::vector<LetterStream> streams(files.size());
    std::vector<std::exception_ptr> errors(files.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(files.size()); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            streams[idx] = tokenize(read_file(files[idx]), alphabet, files[idx].string());
        } catch (const IngestError& e) {
            const std::string msg = e.what();
            const bool named = msg.find(files[idx].string()) != std::string::npos;
            errors[idx] = std::make_exception_ptr(
                IngestError(named ? msg : files[idx].string() + ": " + msg, e.byte_offset()));
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return streams;
}

}  // namespace keymine
