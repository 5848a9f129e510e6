#pragma once
// Top-domain ranking list, Whois organization lookups, and blacklist checks.
// External lookups sit behind provider interfaces; fixture providers read
// flat files so everything runs offline.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rbpd/psl.hpp"
#include "rbpd/util.hpp"

namespace rbpd {

struct DomainRankList {
    std::unordered_map<std::string, uint32_t> ranks;  // registrable domain -> 1-based rank
    uint32_t max_rank = 1;                            // η
    size_t skipped_rows = 0;

    bool contains(const std::string& domain) const { return ranks.count(domain) > 0; }
    std::optional<uint32_t> rank_of(const std::string& domain) const {
        auto it = ranks.find(domain);
        if (it == ranks.end()) return std::nullopt;
        return it->second;
    }
};

// Rank-list CSV, one "rank,domain" row per line (Tranco layout). Rows with
// rank > eta are dropped; rows with a non-integer rank are skipped and
// counted; a duplicate domain means a corrupt list and is fatal.
inline DomainRankList load_rank_list(const std::filesystem::path& path, uint32_t eta) {
    if (eta < 1) throw std::invalid_argument("eta must be >= 1");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rank list: " + path.string());
    DomainRankList list;
    list.max_rank = eta;
    std::string line;
    while (std::getline(in, line)) {
        std::string row = trim(line);
        if (row.empty()) continue;
        auto comma = row.find(',');
        if (comma == std::string::npos) {
            ++list.skipped_rows;
            continue;
        }
        std::string rank_str = trim(row.substr(0, comma));
        std::string domain = lower_ascii(trim(row.substr(comma + 1)));
        uint32_t rank = 0;
        bool ok = !rank_str.empty() && rank_str.find_first_not_of("0123456789") == std::string::npos;
        if (ok) {
            try {
                unsigned long v = std::stoul(rank_str);
                ok = v >= 1 && v <= 0xfffffffful;
                rank = static_cast<uint32_t>(v);
            } catch (...) {
                ok = false;
            }
        }
        if (!ok || domain.empty()) {
            ++list.skipped_rows;
            continue;
        }
        if (list.ranks.count(domain))
            throw std::runtime_error("duplicate domain in rank list: " + domain);
        if (rank > eta) continue;
        list.ranks.emplace(std::move(domain), rank);
    }
    return list;
}

// Minimum rank among the given domains; nullopt when none is ranked.
inline std::optional<uint32_t> best_rank(const DomainRankList& list, const std::set<std::string>& domains) {
    std::optional<uint32_t> best;
    for (const auto& d : domains) {
        auto r = list.rank_of(d);
        if (r && (!best || *r < *best)) best = r;
    }
    return best;
}

struct WhoisRecord {
    std::string domain;
    std::optional<std::string> organization;
};

class WhoisProvider {
public:
    virtual ~WhoisProvider() = default;
    // Raw organization entry for a registrable domain; nullopt when the
    // record or its owner information is unavailable.
    virtual std::optional<std::string> organization(const std::string& domain) const = 0;
};

// Fixture format: one "domain<TAB>organization" per line.
class FixtureWhoisProvider : public WhoisProvider {
public:
    FixtureWhoisProvider() = default;
    explicit FixtureWhoisProvider(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open whois fixture: " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            if (trim(line).empty()) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            orgs_[lower_ascii(trim(line.substr(0, tab)))] = trim(line.substr(tab + 1));
        }
    }

    void set(const std::string& domain, const std::string& org) { orgs_[lower_ascii(domain)] = org; }

    std::optional<std::string> organization(const std::string& domain) const override {
        auto it = orgs_.find(lower_ascii(domain));
        if (it == orgs_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::unordered_map<std::string, std::string> orgs_;
};

inline const std::vector<std::string>& corporate_suffix_tokens() {
    static const std::vector<std::string> tokens = {"inc",  "inc.",  "llc", "ltd", "ltd.",
                                                    "corp", "corp.", "co",  "co."};
    return tokens;
}

// Organization normalization: lowercase, trim, collapse whitespace (commas
// count as separators), then strip trailing corporate suffix tokens.
// Idempotent: normalizing an already-normalized string is a no-op.
inline std::string normalize_org(std::string_view raw) {
    std::string s = lower_ascii(raw);
    for (char& c : s)
        if (c == ',') c = ' ';
    s = collapse_ws(trim(s));
    std::vector<std::string> tokens = split(s, ' ');
    const auto& suffixes = corporate_suffix_tokens();
    while (!tokens.empty()) {
        const std::string& last = tokens.back();
        bool is_suffix = std::find(suffixes.begin(), suffixes.end(), last) != suffixes.end();
        if (!is_suffix) break;
        tokens.pop_back();
    }
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

// Normalized organization of a domain; nullopt when unavailable (provider
// miss or failure) or empty after normalization.
inline std::optional<std::string> whois_org(const WhoisProvider& provider, const std::string& domain);

inline WhoisRecord whois_record(const WhoisProvider& provider, const std::string& domain) {
    WhoisRecord record;
    record.domain = lower_ascii(trim(domain));
    record.organization = whois_org(provider, record.domain);
    return record;
}

inline std::optional<std::string> whois_org(const WhoisProvider& provider, const std::string& domain) {
    std::optional<std::string> raw;
    try {
        raw = provider.organization(lower_ascii(trim(domain)));
    } catch (const std::exception& e) {
        std::cerr << "[rbpd] whois lookup failed for " << domain << ": " << e.what() << "\n";
        return std::nullopt;
    }
    if (!raw) return std::nullopt;
    std::string norm = normalize_org(*raw);
    if (norm.empty()) return std::nullopt;
    return norm;
}

class BlacklistProvider {
public:
    virtual ~BlacklistProvider() = default;
    // True iff the URL's registrable domain is on the provider's snapshot.
    virtual bool listed(const std::string& registrable) const = 0;
};

// Fixture format: one URL or registrable domain per line.
class FixtureBlacklistProvider : public BlacklistProvider {
public:
    FixtureBlacklistProvider() = default;
    explicit FixtureBlacklistProvider(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open blacklist fixture: " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            std::string entry = trim(line);
            if (entry.empty() || entry.starts_with("#")) continue;
            if (auto reg = try_registrable_domain(entry)) domains_.insert(*reg);
        }
    }

    void add(const std::string& domain) { domains_.insert(lower_ascii(domain)); }
    bool listed(const std::string& registrable) const override { return domains_.count(registrable) > 0; }

private:
    std::set<std::string> domains_;
};

struct BlacklistVerdict {
    std::string url;
    bool listed = false;
};

// Fail-open membership check: provider failures and unparseable URLs warn
// and return false so a flaky blacklist cannot stall a BKB build.
inline bool is_blacklisted(const BlacklistProvider& provider, const std::string& url) {
    auto reg = try_registrable_domain(url);
    if (!reg) {
        std::cerr << "[rbpd] blacklist check skipped, unparseable URL: " << url << "\n";
        return false;
    }
    try {
        return provider.listed(*reg);
    } catch (const std::exception& e) {
        std::cerr << "[rbpd] blacklist provider failed for " << url << ": " << e.what() << "\n";
        return false;
    }
}

inline BlacklistVerdict blacklist_verdict(const BlacklistProvider& provider, const std::string& url) {
    return {url, is_blacklisted(provider, url)};
}

}  // namespace rbpd
