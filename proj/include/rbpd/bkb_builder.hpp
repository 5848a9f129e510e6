#pragma once
// BKB construction pipeline: brand search over narrow and general categories,
// knowledge acquisition from the KG snapshot, augmentation (logo variants,
// Whois domain variants, one round of domain propagation over subsidiary
// relations), hosting-brand exclusion and blacklist filtering.

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rbpd/brand.hpp"
#include "rbpd/kg.hpp"
#include "rbpd/providers.hpp"
#include "rbpd/psl.hpp"
#include "rbpd/ranking.hpp"

namespace rbpd {

struct CategoryEntry {
    std::string label;
    EntityId id;  // empty = resolve by label against the snapshot
};

struct CategoryConfig {
    std::vector<CategoryEntry> narrow;
    std::vector<CategoryEntry> general;
    std::vector<CategoryEntry> excluded;
    uint32_t eta = 50000;
    int subclass_depth = 1;

    void validate() const {
        if (eta < 1) throw std::invalid_argument("eta must be >= 1");
        std::set<EntityId> n, g;
        for (const auto& c : narrow)
            if (!c.id.empty()) n.insert(c.id);
        for (const auto& c : general)
            if (!c.id.empty()) g.insert(c.id);
        for (const auto& id : n)
            if (g.count(id))
                throw std::invalid_argument("category in both narrow and general: " + id);
    }
};

// Categories may be named by label when the snapshot's ids are not known up
// front; resolution matches any label in any language, case-insensitively.
inline std::set<EntityId> resolve_categories(const KGSnapshot& snap,
                                             const std::vector<CategoryEntry>& entries) {
    std::set<EntityId> ids;
    for (const auto& entry : entries) {
        if (!entry.id.empty()) {
            ids.insert(entry.id);
            continue;
        }
        std::string want = normalize_alias(entry.label);
        for (const auto& [id, entity] : snap.entities())
            for (const auto& [lang, names] : entity.labels)
                for (const auto& name : names)
                    if (normalize_alias(name) == want) ids.insert(id);
    }
    return ids;
}

// Instances of every narrow category and of its subclasses, expanded to the
// configured depth (1 = direct subclasses only).
inline std::set<EntityId> search_narrow(const KGSnapshot& snap, const CategoryConfig& config) {
    std::set<EntityId> brands;
    for (const EntityId& root : resolve_categories(snap, config.narrow)) {
        std::set<EntityId> cats{root};
        std::set<EntityId> frontier{root};
        for (int depth = 0; depth < config.subclass_depth; ++depth) {
            std::set<EntityId> next;
            for (const auto& c : frontier)
                for (const auto& sub : subclasses_of(snap, c))
                    if (cats.insert(sub).second) next.insert(sub);
            frontier = std::move(next);
            if (frontier.empty()) break;
        }
        for (const auto& c : cats)
            for (const auto& b : instances_of(snap, c)) brands.insert(b);
    }
    return brands;
}

inline std::set<std::string> official_registrable_domains(const KGSnapshot& snap, const EntityId& b) {
    std::set<std::string> domains;
    for (const auto& url : snap.claim_values(b, Relation::official_website))
        if (auto reg = try_registrable_domain(url)) domains.insert(*reg);
    return domains;
}

// Instances of general categories whose best official-website domain rank is
// within the list's η cutoff.
inline std::set<EntityId> search_general(const KGSnapshot& snap, const CategoryConfig& config,
                                         const DomainRankList& ranks) {
    std::set<EntityId> brands;
    for (const EntityId& cat : resolve_categories(snap, config.general)) {
        for (const auto& b : instances_of(snap, cat)) {
            auto rank = best_rank(ranks, official_registrable_domains(snap, b));
            if (rank && *rank <= config.eta) brands.insert(b);
        }
    }
    return brands;
}

// Drops brands with an instance_of claim to any excluded category
// (web-hosting style services whose logos appear on customer pages).
inline std::set<EntityId> exclude_hosting_brands(const KGSnapshot& snap,
                                                 const std::set<EntityId>& brands,
                                                 const std::set<EntityId>& excluded) {
    std::set<EntityId> kept;
    for (const auto& b : brands) {
        bool drop = false;
        for (const auto& cat : snap.claim_values(b, Relation::instance_of))
            if (excluded.count(cat)) {
                drop = true;
                break;
            }
        if (!drop) kept.insert(b);
    }
    return kept;
}

// Resolves a KG logo_image reference to image bytes; nullopt = unavailable.
using LogoRefLoader = std::function<std::optional<std::string>(const std::string& ref)>;

inline LogoRefLoader logo_loader_for_dir(std::filesystem::path dir) {
    return [dir = std::move(dir)](const std::string& ref) -> std::optional<std::string> {
        std::filesystem::path p = dir / ref;
        if (!std::filesystem::exists(p)) return std::nullopt;
        return read_file(p);
    };
}

// Initial brand record from the snapshot: logos from logo_image claims,
// domains from official_website claims, aliases from labels in every
// language. Name prefers the English label.
inline Brand acquire_knowledge(const KGSnapshot& snap, const EntityId& id,
                               const LogoRefLoader& load_logo = {}, int hash_side = 8) {
    const KGEntity* entity = snap.find(id);
    if (!entity) throw std::invalid_argument("entity not in snapshot: " + id);
    Brand brand;
    brand.id = id;
    auto en = entity->labels.find("en");
    if (en != entity->labels.end() && !en->second.empty()) {
        brand.name = en->second.front();
    } else if (!entity->labels.empty() && !entity->labels.begin()->second.empty()) {
        brand.name = entity->labels.begin()->second.front();
    } else {
        brand.name = id;
    }
    for (const auto& [lang, names] : entity->labels)
        for (const auto& n : names)
            if (!trim(n).empty()) brand.aliases.insert(n);
    brand.aliases.insert(brand.name);
    brand.domains = official_registrable_domains(snap, id);
    for (const auto& ref : entity->claim_values(Relation::logo_image)) {
        std::optional<std::string> bytes = load_logo ? load_logo(ref) : std::nullopt;
        if (!bytes) {
            std::cerr << "[rbpd] logo image unavailable for " << id << ": " << ref << "\n";
            continue;
        }
        LogoAsset logo;
        logo.source = LogoSource::kg;
        logo.signature = dhash_bytes(*bytes, hash_side);
        logo.bytes = std::move(*bytes);
        brand.add_logo(std::move(logo));
    }
    return brand;
}

// Logo variants from the brand's homepages and from image search for
// "<name> logo". Search hits are kept only when hosted on one of the brand's
// own domains. Provider failures leave the brand unchanged.
inline Brand augment_logos(Brand brand, const HomepageLogoProvider* homepage,
                           const ImageSearchProvider* search, int hash_side = 8,
                           const PublicSuffixList& psl = PublicSuffixList::builtin()) {
    if (homepage) {
        try {
            for (const auto& domain : brand.domains) {
                for (auto& bytes : homepage->logos(domain)) {
                    LogoAsset logo;
                    logo.source = LogoSource::homepage;
                    logo.signature = dhash_bytes(bytes, hash_side);
                    logo.bytes = std::move(bytes);
                    brand.add_logo(std::move(logo));
                }
            }
        } catch (const std::exception& e) {
            std::cerr << "[rbpd] homepage logo provider failed for " << brand.id << ": " << e.what() << "\n";
        }
    }
    if (search) {
        try {
            for (auto& hit : search->search(brand.name + " logo")) {
                auto reg = try_registrable_domain(hit.source_url, psl);
                if (!reg || !brand.domains.count(*reg)) continue;
                LogoAsset logo;
                logo.source = LogoSource::image_search;
                logo.signature = dhash_bytes(hit.bytes, hash_side);
                logo.bytes = std::move(hit.bytes);
                brand.add_logo(std::move(logo));
            }
        } catch (const std::exception& e) {
            std::cerr << "[rbpd] image search provider failed for " << brand.id << ": " << e.what() << "\n";
        }
    }
    return brand;
}

// Precomputed normalized-org -> ranked-domains join, shared across brands.
struct WhoisOrgJoin {
    std::map<std::string, std::set<std::string>> domains_by_org;

    WhoisOrgJoin(const WhoisProvider& whois, const DomainRankList& ranks) {
        for (const auto& [domain, rank] : ranks.ranks)
            if (auto org = whois_org(whois, domain)) domains_by_org[*org].insert(domain);
    }
};

// Domain variants: every ranked domain whose Whois organization matches the
// organization of one of the brand's existing domains. Domains with unknown
// organizations are skipped on both sides.
inline Brand augment_domains_whois(Brand brand, const WhoisProvider& whois, const WhoisOrgJoin& join) {
    std::set<std::string> orgs;
    for (const auto& domain : brand.domains)
        if (auto org = whois_org(whois, domain)) orgs.insert(*org);
    for (const auto& org : orgs) {
        auto it = join.domains_by_org.find(org);
        if (it == join.domains_by_org.end()) continue;
        brand.domains.insert(it->second.begin(), it->second.end());
    }
    return brand;
}

inline Brand augment_domains_whois(Brand brand, const WhoisProvider& whois, const DomainRankList& ranks) {
    return augment_domains_whois(std::move(brand), whois, WhoisOrgJoin(whois, ranks));
}

// One round of domain propagation over subsidiary relations, computed for
// every brand from a frozen pre-propagation copy.
inline BrandKnowledgeBase propagate_domains(const KGSnapshot& snap, const BrandKnowledgeBase& bkb) {
    BrandKnowledgeBase out = bkb;
    for (auto& [id, brand] : out.brands) {
        for (const auto& neighbor : subsidiary_neighbors(snap, id)) {
            const Brand* other = bkb.find(neighbor);
            if (!other) continue;
            brand.domains.insert(other->domains.begin(), other->domains.end());
        }
    }
    return out;
}

// Drops blacklisted domains from every brand; returns the filtered BKB and
// reports removals through the counter.
inline BrandKnowledgeBase filter_blacklisted_domains(const BrandKnowledgeBase& bkb,
                                                     const BlacklistProvider& blacklist,
                                                     size_t* removed_count = nullptr) {
    BrandKnowledgeBase out = bkb;
    size_t removed = 0;
    for (auto& [id, brand] : out.brands) {
        for (auto it = brand.domains.begin(); it != brand.domains.end();) {
            if (is_blacklisted(blacklist, "http://" + *it)) {
                std::cerr << "[rbpd] dropping blacklisted domain " << *it << " from " << id << "\n";
                it = brand.domains.erase(it);
                ++removed;
            } else {
                ++it;
            }
        }
    }
    if (removed_count) *removed_count = removed;
    return out;
}

struct BuildProviders {
    const WhoisProvider* whois = nullptr;
    const BlacklistProvider* blacklist = nullptr;
    const HomepageLogoProvider* homepage_logos = nullptr;
    const ImageSearchProvider* image_search = nullptr;
    LogoRefLoader logo_loader;  // resolves KG logo_image refs
    int hash_side = 8;
};

struct BuildStats {
    size_t narrow_brands = 0;
    size_t general_brands = 0;
    size_t excluded_brands = 0;
    size_t brands = 0;
    size_t brands_without_domains = 0;
    size_t blacklisted_domains_removed = 0;
};

// Full pipeline: search -> exclusion -> acquisition -> logo augmentation ->
// Whois domain variants -> domain propagation -> blacklist filter -> indices.
inline BrandKnowledgeBase build_bkb(const KGSnapshot& snap, const CategoryConfig& config,
                                    const DomainRankList& ranks, const BuildProviders& providers,
                                    BuildStats* stats_out = nullptr) {
    config.validate();
    BuildStats stats;

    std::set<EntityId> found = search_narrow(snap, config);
    stats.narrow_brands = found.size();
    std::set<EntityId> general = search_general(snap, config, ranks);
    stats.general_brands = general.size();
    found.insert(general.begin(), general.end());

    std::set<EntityId> excluded_cats = resolve_categories(snap, config.excluded);
    std::set<EntityId> kept = exclude_hosting_brands(snap, found, excluded_cats);
    stats.excluded_brands = found.size() - kept.size();

    BrandKnowledgeBase bkb;
    std::optional<WhoisOrgJoin> join;
    if (providers.whois) join.emplace(*providers.whois, ranks);
    for (const auto& id : kept) {
        Brand brand = acquire_knowledge(snap, id, providers.logo_loader, providers.hash_side);
        brand = augment_logos(std::move(brand), providers.homepage_logos, providers.image_search,
                              providers.hash_side);
        if (providers.whois) brand = augment_domains_whois(std::move(brand), *providers.whois, *join);
        bkb.add(std::move(brand));
    }

    bkb = propagate_domains(snap, bkb);
    if (providers.blacklist)
        bkb = filter_blacklisted_domains(bkb, *providers.blacklist, &stats.blacklisted_domains_removed);

    for (const auto& [id, brand] : bkb.brands)
        if (brand.domains.empty()) {
            ++stats.brands_without_domains;
            std::cerr << "[rbpd] brand without legitimate domains: " << id << " (" << brand.name << ")\n";
        }
    stats.brands = bkb.brands.size();
    bkb.rebuild_indices();
    if (stats_out) *stats_out = stats;
    return bkb;
}

}  // namespace rbpd
