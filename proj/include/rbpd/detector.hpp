#pragma once
// The reference-based decision rule and the multi-stage detector pipeline:
// summarize -> CRP gate -> visual brand extraction, textual only when the
// visual channel is empty -> domain-consistency check. Verdicts carry the
// deciding stage and matched brands so every call is auditable.

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rbpd/brand.hpp"
#include "rbpd/crp.hpp"
#include "rbpd/extractors.hpp"
#include "rbpd/llm.hpp"
#include "rbpd/webpage.hpp"

namespace rbpd {

enum class VerdictLabel { phishing, benign, unscored };
enum class VerdictStage { crp_gate, no_brand, domain_match, domain_mismatch, error };

inline std::string_view verdict_label_name(VerdictLabel v) {
    switch (v) {
        case VerdictLabel::phishing: return "phishing";
        case VerdictLabel::benign: return "benign";
        case VerdictLabel::unscored: return "unscored";
    }
    return "";
}

inline std::string_view verdict_stage_name(VerdictStage s) {
    switch (s) {
        case VerdictStage::crp_gate: return "crp_gate";
        case VerdictStage::no_brand: return "no_brand";
        case VerdictStage::domain_match: return "domain_match";
        case VerdictStage::domain_mismatch: return "domain_mismatch";
        case VerdictStage::error: return "error";
    }
    return "";
}

struct MatchedBrand {
    EntityId id;
    BrandChannel channel = BrandChannel::visual;
    std::string detail;  // similarity or matched alias
};

struct Verdict {
    VerdictLabel label = VerdictLabel::benign;
    VerdictStage stage = VerdictStage::crp_gate;
    std::vector<MatchedBrand> matched_brands;
    std::string reason;
    double time_total_s = 0.0;
    double time_llm_s = 0.0;
};

namespace detail {

inline std::vector<MatchedBrand> to_matched(const BrandMatchSet& set) {
    std::vector<MatchedBrand> out;
    for (const auto& id : set.brands) {
        MatchedBrand m;
        m.id = id;
        m.channel = set.channel;
        if (set.channel == BrandChannel::visual) {
            auto it = set.similarity.find(id);
            m.detail = "similarity=" + std::to_string(it == set.similarity.end() ? 0.0 : it->second);
        } else if (set.matched_alias) {
            m.detail = "alias=" + *set.matched_alias;
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace detail

// Domain-consistency check over the extracted brands: benign as soon as the
// page domain is a legitimate domain of any matched brand, else phishing.
// Brands with no legitimate domains can never match and so always indict.
inline Verdict domain_check(const BrandKnowledgeBase& bkb, const std::string& page_domain,
                            const BrandMatchSet& matches) {
    Verdict verdict;
    verdict.matched_brands = detail::to_matched(matches);
    for (const auto& id : matches.brands) {
        const Brand* brand = bkb.find(id);
        if (brand && brand->domains.count(page_domain)) {
            verdict.label = VerdictLabel::benign;
            verdict.stage = VerdictStage::domain_match;
            verdict.reason = page_domain + " is a legitimate domain of " + id;
            return verdict;
        }
    }
    verdict.label = VerdictLabel::phishing;
    verdict.stage = VerdictStage::domain_mismatch;
    verdict.reason = page_domain + " is not a legitimate domain of any matched brand";
    return verdict;
}

struct KpdComponents {
    LlmClient* llm = nullptr;
    PromptVariant variant = PromptVariant::base();
    const CrpClassifier* crp = nullptr;
    double visual_threshold = 0.90;
    int hash_side = 8;
    size_t html_cap = 8000;
    AuditSink* audit = nullptr;
    // Ablation pass-throughs: gate always open / extractor always empty.
    bool ablate_crp_gate = false;
    bool ablate_lbe = false;
    bool ablate_tbe = false;
};

// Full multi-stage detection of one sample.
inline Verdict kpd_detect(const BrandKnowledgeBase& bkb, const CorpusSample& sample,
                          const KpdComponents& components) {
    if (!components.llm) throw std::invalid_argument("kpd requires a summarizer client");
    if (!components.ablate_crp_gate && !components.crp)
        throw std::invalid_argument("kpd requires a CRP classifier");
    auto t_start = std::chrono::steady_clock::now();
    auto elapsed = [](auto since) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
    };

    Verdict verdict;
    ProcessedHtml processed = preprocess_html(sample.page.html, components.html_cap);
    WebpageSummary summary;
    auto t_llm = std::chrono::steady_clock::now();
    try {
        std::string prompt = render_prompt(components.variant, processed.text, sample.page.url);
        std::vector<std::filesystem::path> images;
        if (components.variant.kind == PromptKind::multimodal && sample.page.screenshot)
            images.push_back(*sample.page.screenshot);
        std::string completion = components.llm->complete(prompt, images);
        summary = parse_summary(completion);
        if (components.audit) {
            char hash[20];
            std::snprintf(hash, sizeof hash, "%016llx",
                          static_cast<unsigned long long>(fnv1a64(prompt)));
            components.audit->record(sample.id, hash, completion, summary);
        }
    } catch (const std::exception& e) {
        verdict.label = VerdictLabel::unscored;
        verdict.stage = VerdictStage::error;
        verdict.reason = std::string("summarizer failed: ") + e.what();
        verdict.time_llm_s = elapsed(t_llm);
        verdict.time_total_s = elapsed(t_start);
        return verdict;
    }
    verdict.time_llm_s = elapsed(t_llm);

    if (!components.ablate_crp_gate) {
        CrpDecision decision = components.crp->classify(summary, processed);
        if (!decision.is_crp) {
            verdict.label = VerdictLabel::benign;
            verdict.stage = VerdictStage::crp_gate;
            verdict.reason = "no credential-requiring intention (score " +
                             std::to_string(decision.score) + ")";
            verdict.time_total_s = elapsed(t_start);
            return verdict;
        }
    }

    BrandMatchSet visual;
    visual.channel = BrandChannel::visual;
    if (!components.ablate_lbe)
        visual = logo_brand(bkb, sample.page.screenshot, sample.regions, components.visual_threshold,
                            components.hash_side);

    BrandMatchSet textual;
    textual.channel = BrandChannel::textual;
    if (visual.empty() && !components.ablate_tbe) textual = text_brand(bkb, summary);

    const BrandMatchSet& matches = visual.empty() ? textual : visual;
    if (matches.empty()) {
        verdict.label = VerdictLabel::benign;
        verdict.stage = VerdictStage::no_brand;
        verdict.reason = "no brand intention matched";
        verdict.time_total_s = elapsed(t_start);
        return verdict;
    }

    Verdict checked = domain_check(bkb, sample.page.domain, matches);
    checked.time_llm_s = verdict.time_llm_s;
    checked.time_total_s = elapsed(t_start);
    return checked;
}

// Image-only baseline: logo extraction then domain check, no CRP gate and no
// textual channel. Logo-less pages come out benign by construction.
inline Verdict rbpd_detect(const BrandKnowledgeBase& bkb, const CorpusSample& sample,
                           double visual_threshold = 0.90, int hash_side = 8) {
    auto t_start = std::chrono::steady_clock::now();
    BrandMatchSet visual = logo_brand(bkb, sample.page.screenshot, sample.regions, visual_threshold,
                                      hash_side);
    Verdict verdict;
    if (visual.empty()) {
        verdict.label = VerdictLabel::benign;
        verdict.stage = VerdictStage::no_brand;
        verdict.reason = "no logo matched";
    } else {
        verdict = domain_check(bkb, sample.page.domain, visual);
    }
    verdict.time_total_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return verdict;
}

}  // namespace rbpd
