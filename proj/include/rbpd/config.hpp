#pragma once
// Single JSON config document wiring the pipeline. Every key is optional;
// the defaults ship the stock narrow/general/excluded category lists and the
// offline oracle backends.

#include <json.hpp>

#include <memory>
#include <string>

#include "rbpd/bkb_builder.hpp"
#include "rbpd/crp.hpp"
#include "rbpd/llm.hpp"
#include "rbpd/prompt.hpp"
#include "rbpd/util.hpp"

namespace rbpd {

struct LlmSettings {
    std::string backend = "oracle";  // oracle | http
    std::string endpoint;
    std::string model = "rule-oracle";
    std::string api_key_env;
    std::string variant = "base";  // base | hardened | multimodal
    unsigned max_parallel = 1;
    double timeout_s = 30.0;
    int max_retries = 2;
    uint64_t seed = 1u;  // random-tag seed for the hardened variant
    std::string audit_log;
};

struct CrpSettings {
    double threshold = 0.5;
    std::string backend = "rules";  // rules | http
    std::string endpoint;
};

struct VisualSettings {
    double threshold = 0.90;
    int hash_bits = 64;
};

struct HtmlSettings {
    size_t cap = 8000;
};

struct Config {
    CategoryConfig categories;
    LlmSettings llm;
    CrpSettings crp;
    VisualSettings visual;
    HtmlSettings html;
};

// Stock category lists: narrow industry categories are collected completely,
// general ones only above the popularity cutoff, and brands in the excluded
// categories (hosting-style services) are dropped.
inline CategoryConfig default_categories() {
    CategoryConfig config;
    config.narrow = {
        {"bank", "Q22687"},
        {"financial institution", "Q650241"},
        {"credit institution", "Q730038"},
        {"federal credit union", "Q116763799"},
        {"payment system", "Q986008"},
        {"digital wallet", "Q1147226"},
        {"cryptocurrency exchange", "Q25401607"},
        {"webmail", "Q327618"},
        {"web service", "Q193424"},
        {"mobile app", "Q620615"},
        {"office suite", "Q207170"},
        {"telecommunication company", "Q2401749"},
        {"mobile network", "Q15360302"},
        {"mobile network operator", "Q1941618"},
        {"internet service provider", "Q11371"},
        {"online shop", "Q4382945"},
        {"online marketplace", "Q3390477"},
        {"social media", "Q202833"},
        {"social networking service", "Q3220391"},
        {"online video platform", "Q559856"},
        {"postal service", "Q1529128"},
        {"package delivery", "Q1447463"},
        {"government", "Q7188"},
        {"web portal", "Q186165"},
        {"web search engine", "Q4182287"},
        {"video game distribution platform", "Q81989119"},
        {"gambling", "Q11416"},
    };
    config.general = {
        {"business", "Q4830453"},
        {"public company", "Q891723"},
        {"enterprise", "Q6881511"},
        {"online service", "Q19967801"},
        {"government organization", "Q2659904"},
    };
    // Resolved against the snapshot by label; ids vary across dumps.
    config.excluded = {
        {"file synchronization", ""},
        {"URL shortener", ""},
        {"blog", ""},
        {"domain name registrar", ""},
    };
    config.eta = 50000;
    config.subclass_depth = 1;
    return config;
}

inline Config default_config() {
    Config config;
    config.categories = default_categories();
    return config;
}

namespace detail {

inline std::vector<CategoryEntry> parse_category_entries(const nlohmann::json& arr) {
    std::vector<CategoryEntry> entries;
    for (const auto& item : arr) {
        CategoryEntry entry;
        if (item.is_array()) {
            if (!item.empty()) entry.label = item[0].get<std::string>();
            if (item.size() > 1) entry.id = item[1].get<std::string>();
        } else if (item.is_object()) {
            entry.label = item.value("label", "");
            entry.id = item.value("id", "");
        } else if (item.is_string()) {
            entry.id = item.get<std::string>();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace detail

inline Config parse_config(const nlohmann::json& doc) {
    Config config = default_config();
    if (doc.contains("categories")) {
        const auto& c = doc["categories"];
        if (c.contains("narrow")) config.categories.narrow = detail::parse_category_entries(c["narrow"]);
        if (c.contains("general")) config.categories.general = detail::parse_category_entries(c["general"]);
        if (c.contains("excluded")) config.categories.excluded = detail::parse_category_entries(c["excluded"]);
        config.categories.eta = c.value("eta", config.categories.eta);
        config.categories.subclass_depth = c.value("subclass_depth", config.categories.subclass_depth);
    }
    if (doc.contains("llm")) {
        const auto& l = doc["llm"];
        config.llm.backend = l.value("backend", config.llm.backend);
        config.llm.endpoint = l.value("endpoint", config.llm.endpoint);
        config.llm.model = l.value("model", config.llm.model);
        config.llm.api_key_env = l.value("api_key_env", config.llm.api_key_env);
        config.llm.variant = l.value("variant", config.llm.variant);
        config.llm.max_parallel = l.value("max_parallel", config.llm.max_parallel);
        config.llm.timeout_s = l.value("timeout_s", config.llm.timeout_s);
        config.llm.max_retries = l.value("max_retries", config.llm.max_retries);
        config.llm.seed = l.value("seed", config.llm.seed);
        config.llm.audit_log = l.value("audit_log", config.llm.audit_log);
    }
    if (doc.contains("crp")) {
        const auto& c = doc["crp"];
        config.crp.threshold = c.value("threshold", config.crp.threshold);
        config.crp.backend = c.value("backend", config.crp.backend);
        config.crp.endpoint = c.value("endpoint", config.crp.endpoint);
    }
    if (doc.contains("visual")) {
        const auto& v = doc["visual"];
        config.visual.threshold = v.value("threshold", config.visual.threshold);
        config.visual.hash_bits = v.value("hash_bits", config.visual.hash_bits);
    }
    if (doc.contains("html")) config.html.cap = doc["html"].value("cap", config.html.cap);
    config.categories.validate();
    if (config.llm.variant != "base" && config.llm.variant != "hardened" &&
        config.llm.variant != "multimodal")
        throw std::invalid_argument("unknown llm.variant: " + config.llm.variant);
    signature_side_for_bits(config.visual.hash_bits);  // validates
    return config;
}

inline Config load_config(const std::filesystem::path& path) {
    return parse_config(nlohmann::json::parse(read_file(path)));
}

inline PromptVariant make_prompt_variant(const LlmSettings& llm) {
    if (llm.variant == "hardened") return PromptVariant::hardened(make_random_tag(llm.seed));
    if (llm.variant == "multimodal") return PromptVariant::multimodal();
    return PromptVariant::base();
}

}  // namespace rbpd
