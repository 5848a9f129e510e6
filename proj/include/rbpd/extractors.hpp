#pragma once
// Brand extraction channels. LBE hashes candidate logo regions of the
// screenshot and nearest-matches them against BKB logo signatures; TBE
// exact-matches the summary's brand prediction against the alias index.
// Both are pure lookups; the detector decides precedence.

#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rbpd/brand.hpp"
#include "rbpd/image.hpp"
#include "rbpd/phash.hpp"
#include "rbpd/summary.hpp"
#include "rbpd/webpage.hpp"

namespace rbpd {

enum class BrandChannel { visual, textual };

struct BrandMatchSet {
    BrandChannel channel = BrandChannel::visual;
    std::set<EntityId> brands;
    // visual: best similarity per brand; textual: the matched normalized alias
    std::map<EntityId, double> similarity;
    std::optional<std::string> matched_alias;

    bool empty() const { return brands.empty(); }
};

// Nearest-signature match over all BKB logos: the brands whose best logo
// similarity equals the overall maximum, provided it reaches the threshold.
// Ties return every tied brand. No screenshot or an unreadable image yields
// an empty set.
inline BrandMatchSet logo_brand(const BrandKnowledgeBase& bkb,
                                const std::optional<std::filesystem::path>& screenshot,
                                const std::vector<LogoRegion>& regions = {},
                                double threshold = 0.90, int hash_side = 8) {
    BrandMatchSet match;
    match.channel = BrandChannel::visual;
    if (!screenshot) return match;

    GrayImage image;
    try {
        image = load_image_gray(*screenshot);
    } catch (const std::exception& e) {
        std::cerr << "[rbpd] unreadable screenshot " << screenshot->string() << ": " << e.what() << "\n";
        return match;
    }

    std::vector<Signature> queries;
    for (const auto& region : regions) {
        try {
            queries.push_back(dhash(crop_gray(image, region.x, region.y, region.w, region.h), hash_side));
        } catch (const ImageError&) {
            // degenerate region annotation: skipped
        }
    }
    if (queries.empty()) queries.push_back(dhash(image, hash_side));  // whole-image fallback

    double best = -1.0;
    std::map<EntityId, double> per_brand;
    for (const auto& [id, brand] : bkb.brands) {
        for (const auto& logo : brand.logos) {
            if (logo.signature.bits != hash_side * hash_side) continue;
            for (const auto& query : queries) {
                double sim = hash_similarity(query, logo.signature);
                auto it = per_brand.find(id);
                if (it == per_brand.end() || sim > it->second) per_brand[id] = sim;
                if (sim > best) best = sim;
            }
        }
    }
    if (best < threshold) return match;
    for (const auto& [id, sim] : per_brand) {
        if (sim == best) {
            match.brands.insert(id);
            match.similarity[id] = sim;
        }
    }
    return match;
}

// Alias lookup of the summary's brand prediction. An alias shared by k
// brands identifies all k; no prediction identifies none.
inline BrandMatchSet text_brand(const BrandKnowledgeBase& bkb, const WebpageSummary& summary) {
    BrandMatchSet match;
    match.channel = BrandChannel::textual;
    if (!summary.brand) return match;
    std::string key = normalize_alias(*summary.brand);
    if (key.empty()) return match;
    const auto& brands = bkb.brands_for_alias(key);
    if (!brands.empty()) {
        match.brands = brands;
        match.matched_alias = key;
    }
    return match;
}

}  // namespace rbpd
