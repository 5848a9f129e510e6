#pragma once
// Command-line front end: build / detect / attack / score. Kept in a header
// (run() over argv strings) so the pipeline-equality tests can drive the
// exact CLI paths in process.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "rbpd/adversarial.hpp"
#include "rbpd/bkb_builder.hpp"
#include "rbpd/config.hpp"
#include "rbpd/detector.hpp"
#include "rbpd/eval.hpp"
#include "rbpd/http_clients.hpp"

namespace rbpd::cli {

inline std::unique_ptr<LlmClient> make_llm_client(const LlmSettings& llm) {
    if (llm.backend == "oracle") return std::make_unique<OracleLlmClient>();
    if (llm.backend == "http") {
        if (llm.endpoint.empty()) throw std::invalid_argument("llm.endpoint required for http backend");
        HttpLlmConfig config;
        config.endpoint = llm.endpoint;
        config.model = llm.model;
        config.api_key_env = llm.api_key_env;
        config.timeout_s = llm.timeout_s;
        config.max_retries = llm.max_retries;
        return std::make_unique<HttpLlmClient>(config);
    }
    throw std::invalid_argument("unknown llm.backend: " + llm.backend);
}

inline std::unique_ptr<CrpClassifier> make_crp_classifier(const CrpSettings& crp) {
    if (crp.backend == "rules") return std::make_unique<RuleCrpClassifier>(crp.threshold);
    if (crp.backend == "http") {
        if (crp.endpoint.empty()) throw std::invalid_argument("crp.endpoint required for http backend");
        return std::make_unique<HttpCrpClassifier>(crp.endpoint, crp.threshold);
    }
    throw std::invalid_argument("unknown crp.backend: " + crp.backend);
}

namespace detail {

inline int run_build(const std::string& kg, const std::string& ranks_path, const std::string& config_path,
                     const std::string& out, const std::string& whois_fixture,
                     const std::string& blacklist_fixture, const std::string& logo_fixture_dir) {
    Config config = config_path.empty() ? default_config() : load_config(config_path);
    KGSnapshot snapshot = load_kg_snapshot(kg);
    if (snapshot.skipped_records)
        std::cerr << "[rbpd] skipped " << snapshot.skipped_records << " malformed KG records\n";
    DomainRankList ranks = load_rank_list(ranks_path, config.categories.eta);
    if (ranks.skipped_rows)
        std::cerr << "[rbpd] skipped " << ranks.skipped_rows << " malformed rank rows\n";

    std::unique_ptr<FixtureWhoisProvider> whois;
    if (!whois_fixture.empty()) whois = std::make_unique<FixtureWhoisProvider>(whois_fixture);
    std::unique_ptr<FixtureBlacklistProvider> blacklist;
    if (!blacklist_fixture.empty())
        blacklist = std::make_unique<FixtureBlacklistProvider>(blacklist_fixture);
    std::unique_ptr<FixtureHomepageLogoProvider> homepage;
    std::unique_ptr<FixtureImageSearchProvider> image_search;
    if (!logo_fixture_dir.empty()) {
        homepage = std::make_unique<FixtureHomepageLogoProvider>(logo_fixture_dir);
        image_search = std::make_unique<FixtureImageSearchProvider>(logo_fixture_dir);
    }

    BuildProviders providers;
    providers.whois = whois.get();
    providers.blacklist = blacklist.get();
    providers.homepage_logos = homepage.get();
    providers.image_search = image_search.get();
    providers.logo_loader = logo_loader_for_dir(std::filesystem::path(kg).parent_path());
    providers.hash_side = signature_side_for_bits(config.visual.hash_bits);

    BuildStats stats;
    BrandKnowledgeBase bkb = build_bkb(snapshot, config.categories, ranks, providers, &stats);
    save_bkb(bkb, out);

    nlohmann::json summary;
    summary["brands"] = stats.brands;
    summary["narrow_brands"] = stats.narrow_brands;
    summary["general_brands"] = stats.general_brands;
    summary["excluded_brands"] = stats.excluded_brands;
    summary["brands_without_domains"] = stats.brands_without_domains;
    summary["blacklisted_domains_removed"] = stats.blacklisted_domains_removed;
    summary["out"] = out;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

inline int run_detect(const std::string& bkb_dir, const std::string& corpus_dir, const std::string& mode,
                      const std::string& out, const std::string& config_path,
                      const std::vector<std::string>& ablations, bool no_timings,
                      const std::string& audit_path) {
    Config config = config_path.empty() ? default_config() : load_config(config_path);
    BrandKnowledgeBase bkb = load_bkb(bkb_dir);
    std::vector<CorpusSample> samples = load_corpus(corpus_dir);

    std::unique_ptr<LlmClient> llm = make_llm_client(config.llm);
    std::unique_ptr<CrpClassifier> crp = make_crp_classifier(config.crp);
    std::unique_ptr<JsonlAuditSink> audit;
    std::string audit_file = !audit_path.empty() ? audit_path : config.llm.audit_log;
    if (!audit_file.empty()) audit = std::make_unique<JsonlAuditSink>(audit_file);

    KpdComponents components;
    components.llm = llm.get();
    components.variant = make_prompt_variant(config.llm);
    components.crp = crp.get();
    components.visual_threshold = config.visual.threshold;
    components.hash_side = signature_side_for_bits(config.visual.hash_bits);
    components.html_cap = config.html.cap;
    components.audit = audit.get();
    for (const auto& name : ablations) ablate(components, name);

    DetectMode detect_mode = mode == "visual" ? DetectMode::visual : DetectMode::kpd;
    std::vector<SampleVerdict> verdicts =
        run_detection(bkb, samples, components, detect_mode, config.llm.max_parallel);
    write_report_jsonl(out, verdicts, !no_timings);

    size_t phishing = 0, unscored = 0;
    for (const auto& sv : verdicts) {
        phishing += sv.verdict.label == VerdictLabel::phishing;
        unscored += sv.verdict.label == VerdictLabel::unscored;
    }
    std::cout << "samples=" << verdicts.size() << " phishing=" << phishing
              << " unscored=" << unscored << " report=" << out << "\n";
    return 0;
}

inline int run_attack(const std::string& kind, const std::string& scope, const std::string& position,
                      uint64_t seed, const std::string& in_dir, const std::string& out_dir) {
    AttackSpec spec;
    if (kind == "typosquat") spec.kind = AttackKind::typosquat;
    else if (kind == "prompt_inject") spec.kind = AttackKind::prompt_inject;
    else if (kind == "text_to_image") spec.kind = AttackKind::text_to_image;
    else throw std::invalid_argument("unknown attack kind: " + kind);
    if (scope == "title") spec.scope = TyposquatScope::title;
    else if (scope == "all_text") spec.scope = TyposquatScope::all_text;
    else throw std::invalid_argument("unknown scope: " + scope);
    if (position == "prefix") spec.position = InjectPosition::prefix;
    else if (position == "suffix") spec.position = InjectPosition::suffix;
    else throw std::invalid_argument("unknown position: " + position);
    spec.seed = seed;
    size_t count = attack_corpus(spec, in_dir, out_dir);
    std::cout << "attacked " << count << " samples into " << out_dir << "\n";
    return 0;
}

inline int run_score(const std::string& report_path, const std::string& labels_path,
                     const std::string& out) {
    std::vector<SampleVerdict> verdicts = read_report_jsonl(report_path);
    MetricsReport report = score(verdicts, load_labels(labels_path));
    nlohmann::json doc = metrics_to_json(report);
    if (!out.empty()) write_file(out, doc.dump(2) + "\n");
    std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace detail

// argv-style entry point (args exclude the program name).
inline int run(const std::vector<std::string>& args) {
    CLI::App app{"reference-based phishing detection toolkit"};
    app.require_subcommand(1);

    auto* build = app.add_subcommand("build", "construct a brand knowledge base");
    std::string kg, ranks, build_config, build_out, whois_fixture, blacklist_fixture, logo_fixture_dir;
    build->add_option("--kg", kg, "KG snapshot file (JSONL)")->required();
    build->add_option("--ranks", ranks, "rank list CSV")->required();
    build->add_option("--config", build_config, "config JSON");
    build->add_option("--out", build_out, "output directory")->required();
    build->add_option("--whois-fixture", whois_fixture, "whois fixture (domain<TAB>org)");
    build->add_option("--blacklist-fixture", blacklist_fixture, "blacklist fixture (one URL per line)");
    build->add_option("--logo-fixture-dir", logo_fixture_dir, "logo provider fixture directory");

    auto* detect = app.add_subcommand("detect", "classify a corpus of webpages");
    std::string bkb_dir, corpus_dir, mode = "kpd", detect_out, detect_config, audit_path;
    std::vector<std::string> ablations;
    bool no_timings = false;
    detect->add_option("--bkb", bkb_dir, "BKB directory")->required();
    detect->add_option("--corpus", corpus_dir, "corpus directory")->required();
    detect->add_option("--mode", mode, "kpd | visual")->check(CLI::IsMember({"kpd", "visual"}));
    detect->add_option("--out", detect_out, "report JSONL path")->required();
    detect->add_option("--config", detect_config, "config JSON");
    detect->add_option("--ablate", ablations, "disable a component: crp | lbe | tbe");
    detect->add_flag("--no-timings", no_timings, "omit timing fields for reproducible reports");
    detect->add_option("--audit", audit_path, "LLM audit log JSONL path");

    auto* attack = app.add_subcommand("attack", "apply an evasion transform to a corpus");
    std::string kind, scope = "title", position = "suffix", attack_in, attack_out;
    uint64_t seed = 0;
    attack->add_option("--kind", kind, "typosquat | prompt_inject | text_to_image")->required();
    attack->add_option("--scope", scope, "title | all_text");
    attack->add_option("--position", position, "prefix | suffix");
    attack->add_option("--seed", seed, "RNG seed");
    attack->add_option("--in", attack_in, "input corpus directory")->required();
    attack->add_option("--out", attack_out, "output corpus directory")->required();

    auto* score_cmd = app.add_subcommand("score", "compute metrics from a report and labels");
    std::string report_path, labels_path, score_out;
    score_cmd->add_option("--report", report_path, "detect report JSONL")->required();
    score_cmd->add_option("--labels", labels_path, "labels CSV (sample_id,label)")->required();
    score_cmd->add_option("--out", score_out, "metrics JSON path");

    std::vector<const char*> argv;
    argv.push_back("rbpd");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*build)
            return detail::run_build(kg, ranks, build_config, build_out, whois_fixture,
                                     blacklist_fixture, logo_fixture_dir);
        if (*detect)
            return detail::run_detect(bkb_dir, corpus_dir, mode, detect_out, detect_config, ablations,
                                      no_timings, audit_path);
        if (*attack) return detail::run_attack(kind, scope, position, seed, attack_in, attack_out);
        if (*score_cmd) return detail::run_score(report_path, labels_path, score_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace rbpd::cli
