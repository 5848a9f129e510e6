#pragma once
// In-memory knowledge-graph snapshot. Snapshots are loaded from a
// newline-delimited record file (one JSON object per line, see load_kg_snapshot)
// and are immutable afterwards: all queries are pure and safe for concurrent
// readers.

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbpd/util.hpp"

namespace rbpd {

using EntityId = std::string;

enum class Relation {
    instance_of,
    subclass_of,
    owned_by,
    parent_organization,
    logo_image,
    official_website,
};

inline constexpr Relation kAllRelations[] = {
    Relation::instance_of,    Relation::subclass_of, Relation::owned_by,
    Relation::parent_organization, Relation::logo_image,  Relation::official_website,
};

inline std::string_view relation_name(Relation r) {
    switch (r) {
        case Relation::instance_of: return "instance_of";
        case Relation::subclass_of: return "subclass_of";
        case Relation::owned_by: return "owned_by";
        case Relation::parent_organization: return "parent_organization";
        case Relation::logo_image: return "logo_image";
        case Relation::official_website: return "official_website";
    }
    return "";
}

inline std::optional<Relation> relation_from_name(std::string_view name) {
    for (Relation r : kAllRelations)
        if (relation_name(r) == name) return r;
    return std::nullopt;
}

struct KGEntity {
    EntityId id;
    // language code -> names in that language
    std::map<std::string, std::vector<std::string>> labels;
    // claim values: entity ids, image refs, or URLs depending on the relation
    std::map<Relation, std::vector<std::string>> claims;

    const std::vector<std::string>& claim_values(Relation r) const {
        static const std::vector<std::string> empty;
        auto it = claims.find(r);
        return it == claims.end() ? empty : it->second;
    }
};

class KGSnapshot {
public:
    void add_entity(KGEntity entity) {
        for (auto& [rel, values] : entity.claims) dedup(values);
        const EntityId id = entity.id;
        for (const auto& [rel, values] : entity.claims)
            for (const auto& v : values) reverse_[rel][v].insert(id);
        entities_.emplace(id, std::move(entity));
    }

    bool contains(const EntityId& id) const { return entities_.count(id) > 0; }
    size_t size() const { return entities_.size(); }

    const KGEntity* find(const EntityId& id) const {
        auto it = entities_.find(id);
        return it == entities_.end() ? nullptr : &it->second;
    }

    // Forward claim values of an entity; empty for unknown ids.
    const std::vector<std::string>& claim_values(const EntityId& id, Relation r) const {
        static const std::vector<std::string> empty;
        const KGEntity* e = find(id);
        return e ? e->claim_values(r) : empty;
    }

    // Entities holding a claim (r -> value); empty for unknown values.
    std::set<EntityId> sources_of(Relation r, const std::string& value) const {
        auto rit = reverse_.find(r);
        if (rit == reverse_.end()) return {};
        auto vit = rit->second.find(value);
        return vit == rit->second.end() ? std::set<EntityId>{} : vit->second;
    }

    const std::unordered_map<EntityId, KGEntity>& entities() const { return entities_; }

    size_t skipped_records = 0;  // malformed lines dropped at load

private:
    static void dedup(std::vector<std::string>& values) {
        std::set<std::string> seen;
        std::vector<std::string> out;
        out.reserve(values.size());
        for (auto& v : values)
            if (seen.insert(v).second) out.push_back(std::move(v));
        values = std::move(out);
    }

    std::unordered_map<EntityId, KGEntity> entities_;
    std::map<Relation, std::unordered_map<std::string, std::set<EntityId>>> reverse_;
};

// Snapshot file format: UTF-8, one record per line, each record
//   {"id": "...", "labels": {lang: [names]}, "claims": {relation: [values]}}
// Unknown keys and unknown relations are ignored. Malformed lines and
// duplicate ids are skipped and counted in skipped_records.
inline KGSnapshot load_kg_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open KG snapshot: " + path.string());
    KGSnapshot snap;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object() || !rec.contains("id") ||
            !rec["id"].is_string() || rec["id"].get<std::string>().empty()) {
            ++snap.skipped_records;
            continue;
        }
        KGEntity entity;
        entity.id = rec["id"].get<std::string>();
        if (snap.contains(entity.id)) {
            ++snap.skipped_records;
            continue;
        }
        bool bad = false;
        if (rec.contains("labels")) {
            if (!rec["labels"].is_object()) bad = true;
            for (auto& [lang, names] : rec["labels"].items()) {
                if (bad) break;
                if (!names.is_array()) { bad = true; break; }
                for (auto& n : names) {
                    if (!n.is_string()) { bad = true; break; }
                    entity.labels[lang].push_back(n.get<std::string>());
                }
            }
        }
        if (!bad && rec.contains("claims")) {
            if (!rec["claims"].is_object()) bad = true;
            for (auto& [key, values] : rec["claims"].items()) {
                if (bad) break;
                auto rel = relation_from_name(key);
                if (!rel) continue;  // unknown relation kinds ignored
                if (!values.is_array()) { bad = true; break; }
                for (auto& v : values) {
                    if (!v.is_string()) { bad = true; break; }
                    entity.claims[*rel].push_back(v.get<std::string>());
                }
            }
        }
        if (bad) {
            ++snap.skipped_records;
            continue;
        }
        snap.add_entity(std::move(entity));
    }
    return snap;
}

// Entities with (b, instance_of, category).
inline std::set<EntityId> instances_of(const KGSnapshot& snap, const EntityId& category) {
    return snap.sources_of(Relation::instance_of, category);
}

// Direct (1-hop) subclasses: (c, subclass_of, category).
inline std::set<EntityId> subclasses_of(const KGSnapshot& snap, const EntityId& category) {
    return snap.sources_of(Relation::subclass_of, category);
}

// Undirected 1-hop neighborhood over owned_by and parent_organization,
// excluding the entity itself.
inline std::set<EntityId> subsidiary_neighbors(const KGSnapshot& snap, const EntityId& b) {
    std::set<EntityId> out;
    for (Relation r : {Relation::owned_by, Relation::parent_organization}) {
        for (const auto& target : snap.claim_values(b, r))
            if (snap.contains(target)) out.insert(target);
        for (const auto& source : snap.sources_of(r, b)) out.insert(source);
    }
    out.erase(b);
    return out;
}

}  // namespace rbpd
