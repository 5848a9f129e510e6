#pragma once
// Brand records and the brand knowledge base. Serialized form is a single
// bkb.json with sorted keys plus an assets/ directory of logo images
// referenced by relative path, so builds on identical inputs are
// byte-identical.

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbpd/kg.hpp"
#include "rbpd/phash.hpp"
#include "rbpd/util.hpp"

namespace rbpd {

enum class LogoSource { kg, homepage, image_search };

inline std::string_view logo_source_name(LogoSource s) {
    switch (s) {
        case LogoSource::kg: return "kg";
        case LogoSource::homepage: return "homepage";
        case LogoSource::image_search: return "image_search";
    }
    return "";
}

inline std::optional<LogoSource> logo_source_from_name(std::string_view name) {
    if (name == "kg") return LogoSource::kg;
    if (name == "homepage") return LogoSource::homepage;
    if (name == "image_search") return LogoSource::image_search;
    return std::nullopt;
}

struct LogoAsset {
    LogoSource source = LogoSource::kg;
    std::string bytes;       // raw image bytes; empty when only the path is known
    std::string image_path;  // relative to the BKB file, set by save/load
    Signature signature;
};

inline std::string normalize_alias(std::string_view alias) {
    return collapse_ws(trim(lower_ascii(alias)));
}

struct Brand {
    EntityId id;
    std::string name;
    std::vector<LogoAsset> logos;  // deduplicated by signature, insertion-ordered
    std::set<std::string> domains;
    std::set<std::string> aliases;

    bool has_logo_signature(const Signature& sig) const {
        for (const auto& logo : logos)
            if (logo.signature == sig) return true;
        return false;
    }

    // Union semantics: a logo whose signature is already present is dropped.
    bool add_logo(LogoAsset logo) {
        if (has_logo_signature(logo.signature)) return false;
        logos.push_back(std::move(logo));
        return true;
    }
};

class BrandKnowledgeBase {
public:
    std::map<EntityId, Brand> brands;

    void add(Brand brand) { brands[brand.id] = std::move(brand); }
    bool contains(const EntityId& id) const { return brands.count(id) > 0; }
    const Brand* find(const EntityId& id) const {
        auto it = brands.find(id);
        return it == brands.end() ? nullptr : &it->second;
    }

    void rebuild_indices() {
        alias_index_.clear();
        domain_index_.clear();
        for (const auto& [id, brand] : brands) {
            for (const auto& alias : brand.aliases) {
                std::string key = normalize_alias(alias);
                if (!key.empty()) alias_index_[key].insert(id);
            }
            for (const auto& domain : brand.domains) domain_index_[domain].insert(id);
        }
    }

    const std::set<EntityId>& brands_for_alias(const std::string& alias) const {
        static const std::set<EntityId> empty;
        auto it = alias_index_.find(normalize_alias(alias));
        return it == alias_index_.end() ? empty : it->second;
    }

    const std::set<EntityId>& brands_for_domain(const std::string& domain) const {
        static const std::set<EntityId> empty;
        auto it = domain_index_.find(domain);
        return it == domain_index_.end() ? empty : it->second;
    }

    const std::map<std::string, std::set<EntityId>>& alias_index() const { return alias_index_; }
    const std::map<std::string, std::set<EntityId>>& domain_index() const { return domain_index_; }

private:
    std::map<std::string, std::set<EntityId>> alias_index_;   // normalized alias -> brands
    std::map<std::string, std::set<EntityId>> domain_index_;  // registrable domain -> brands
};

namespace detail {
inline std::string image_extension(std::string_view bytes) {
    if (looks_like_png(bytes)) return ".png";
    if (looks_like_pnm(bytes)) return ".pnm";
    return ".bin";
}
}  // namespace detail

inline constexpr int kBkbFormatVersion = 1;

// Writes <dir>/bkb.json and logo bytes under <dir>/assets/<brand>/.
// Logo image bytes are stored verbatim (no re-encode).
inline void save_bkb(const BrandKnowledgeBase& bkb, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::json doc;
    doc["version"] = kBkbFormatVersion;
    doc["brands"] = nlohmann::json::array();
    for (const auto& [id, brand] : bkb.brands) {  // std::map: sorted by id
        nlohmann::json b;
        b["id"] = id;
        b["name"] = brand.name;
        b["aliases"] = std::vector<std::string>(brand.aliases.begin(), brand.aliases.end());
        b["domains"] = std::vector<std::string>(brand.domains.begin(), brand.domains.end());
        std::vector<const LogoAsset*> logos;
        for (const auto& logo : brand.logos) logos.push_back(&logo);
        std::sort(logos.begin(), logos.end(), [](const LogoAsset* a, const LogoAsset* b) {
            return a->signature.hex() < b->signature.hex();
        });
        b["logos"] = nlohmann::json::array();
        for (const LogoAsset* logo : logos) {
            std::string rel = "assets/" + id + "/" + logo->signature.hex() +
                              detail::image_extension(logo->bytes);
            if (!logo->bytes.empty()) write_file(dir / rel, logo->bytes);
            b["logos"].push_back({{"source", std::string(logo_source_name(logo->source))},
                                  {"image_path", rel},
                                  {"signature_hex", logo->signature.hex()}});
        }
        doc["brands"].push_back(std::move(b));
    }
    write_file(dir / "bkb.json", doc.dump(2) + "\n");
}

inline BrandKnowledgeBase load_bkb(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::path file = fs::is_directory(dir) ? dir / "bkb.json" : dir;
    nlohmann::json doc = nlohmann::json::parse(read_file(file));
    if (!doc.is_object() || doc.value("version", 0) != kBkbFormatVersion)
        throw std::runtime_error("unsupported BKB file: " + file.string());
    BrandKnowledgeBase bkb;
    for (const auto& b : doc.at("brands")) {
        Brand brand;
        brand.id = b.at("id").get<std::string>();
        brand.name = b.at("name").get<std::string>();
        for (const auto& a : b.value("aliases", nlohmann::json::array()))
            brand.aliases.insert(a.get<std::string>());
        for (const auto& d : b.value("domains", nlohmann::json::array()))
            brand.domains.insert(d.get<std::string>());
        for (const auto& l : b.value("logos", nlohmann::json::array())) {
            LogoAsset logo;
            auto src = logo_source_from_name(l.value("source", "kg"));
            logo.source = src.value_or(LogoSource::kg);
            logo.image_path = l.value("image_path", "");
            std::string hex = l.at("signature_hex").get<std::string>();
            logo.signature = Signature::from_hex(hex, static_cast<int>(hex.size() * 4));
            brand.add_logo(std::move(logo));
        }
        bkb.add(std::move(brand));
    }
    bkb.rebuild_indices();
    return bkb;
}

}  // namespace rbpd
