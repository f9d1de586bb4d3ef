#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "keymine/app.hpp"
#include "keymine/error.hpp"
#include "util.hpp"

namespace keymine {

OutputFormat parse_output_format(std::string_view s) {
    if (s == "tsv") return OutputFormat::Tsv;
    if (s == "json") return OutputFormat::Json;
    throw DomainError("format must be 'tsv' or 'json', got '" + std::string(s) + "'");
}

MinSupport MinSupport::count(std::uint64_t c) {
    if (c < 1) throw DomainError("minimum support count must be at least 1");
    MinSupport m;
    m.count_ = c;
    return m;
}

MinSupport MinSupport::fraction(double f) {
    if (!(f > 0.0 && f <= 1.0)) throw DomainError("minimum support fraction must lie in (0, 1]");
    MinSupport m;
    m.is_fraction_ = true;
    m.fraction_ = f;
    return m;
}

MinSupport MinSupport::parse(std::string_view text) {
    const auto t = detail::trim(text);
    if (t.empty()) throw DomainError("empty minimum support");
    const bool looks_fractional = t.find_first_of(".eE") != std::string_view::npos;
    if (!looks_fractional) {
        std::uint64_t c = 0;
        const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), c);
        if (ec != std::errc{} || end != t.data() + t.size()) {
            throw DomainError("minimum support '" + std::string(t) + "' is not a count or a fraction");
        }
        return count(c);
    }
    double f = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), f);
    if (ec != std::errc{} || end != t.data() + t.size()) {
        throw DomainError("minimum support '" + std::string(t) + "' is not a count or a fraction");
    }
    return fraction(f);
}

std::uint64_t MinSupport::resolve(std::uint64_t db_size) const {
    if (!is_fraction_) return count_;
    const auto c = static_cast<std::uint64_t>(std::ceil(fraction_ * static_cast<double>(db_size)));
    return std::max<std::uint64_t>(c, 1);
}

std::string MinSupport::to_string() const {
    return is_fraction_ ? detail::format_fixed(fraction_, 6) : std::to_string(count_);
}

void apply_config_json(RunConfig& config, const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ParseError("config must be a JSON object", "");
    const auto path_of = [&](const char* key) {
        if (!j[key].is_string()) throw ParseError("expected a path string", key);
        std::filesystem::path p(j[key].get<std::string>());
        return p.is_absolute() ? p : base_dir / p;
    };
    const auto paths_of = [&](const char* key) {
        if (!j[key].is_array()) throw ParseError("expected an array of path strings", key);
        std::vector<std::filesystem::path> out;
        for (std::size_t i = 0; i < j[key].size(); ++i) {
            const auto& v = j[key][i];
            if (!v.is_string()) throw ParseError("expected a path string", std::string(key) + "[" + std::to_string(i) + "]");
            std::filesystem::path p(v.get<std::string>());
            out.push_back(p.is_absolute() ? p : base_dir / p);
        }
        return out;
    };

    try {
        if (j.contains("alphabet")) config.alphabet_path = path_of("alphabet");
        if (j.contains("corpus_manifest")) config.corpus_manifest_path = path_of("corpus_manifest");
        if (j.contains("geometry")) config.geometry_path = path_of("geometry");
        if (j.contains("transactions")) config.transactions_path = path_of("transactions");
        if (j.contains("output_dir")) config.output_dir = path_of("output_dir");
        if (j.contains("layouts")) config.layout_paths = paths_of("layouts");
        if (j.contains("reports")) config.report_paths = paths_of("reports");
        if (j.contains("min_support")) {
            const auto& v = j["min_support"];
            if (v.is_number_unsigned() || v.is_number_integer()) {
                if (v.get<std::int64_t>() < 1) throw ParseError("minimum support count must be at least 1", "min_support");
                config.min_support = MinSupport::count(v.get<std::uint64_t>());
            } else if (v.is_number_float()) {
                config.min_support = MinSupport::fraction(v.get<double>());
            } else if (v.is_string()) {
                config.min_support = MinSupport::parse(v.get<std::string>());
            } else {
                throw ParseError("min_support must be a count, a fraction or a string", "min_support");
            }
        }
        if (j.contains("min_confidence")) {
            if (!j["min_confidence"].is_number()) throw ParseError("min_confidence must be a number", "min_confidence");
            config.min_confidence = j["min_confidence"].get<double>();
        }
        if (j.contains("tie_policy")) {
            if (!j["tie_policy"].is_string()) throw ParseError("tie_policy must be a string", "tie_policy");
            config.tie_policy = parse_tie_policy(j["tie_policy"].get<std::string>());
        }
        if (j.contains("seed")) {
            if (!j["seed"].is_number_unsigned()) throw ParseError("seed must be a non-negative integer", "seed");
            config.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("format")) {
            if (!j["format"].is_string()) throw ParseError("format must be a string", "format");
            config.format = parse_output_format(j["format"].get<std::string>());
        }
        if (j.contains("layout_name")) {
            if (!j["layout_name"].is_string()) throw ParseError("layout_name must be a string", "layout_name");
            config.layout_name = j["layout_name"].get<std::string>();
        }
        if (j.contains("place_unseen")) {
            if (!j["place_unseen"].is_boolean()) throw ParseError("place_unseen must be a boolean", "place_unseen");
            config.place_unseen = j["place_unseen"].get<bool>();
        }
        if (j.contains("synth_letters")) {
            if (!j["synth_letters"].is_number_unsigned()) {
                throw ParseError("synth_letters must be a non-negative integer", "synth_letters");
            }
            config.synth_letters = j["synth_letters"].get<std::size_t>();
        }
    } catch (const DomainError& e) {
        throw ParseError(e.what(), "");
    }
}

RunConfig load_run_config(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what(), "");
    }
    RunConfig config;
    apply_config_json(config, j, path.parent_path());
    return config;
}

std::string sha256_file(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 failed for '" + path.string() + "'");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        hex.push_back(kHex[digest[i] >> 4]);
        hex.push_back(kHex[digest[i] & 0xF]);
    }
    return hex;
}

}  // namespace keymine
