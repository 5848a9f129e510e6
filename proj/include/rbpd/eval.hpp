#pragma once
// Scoring and experiment plumbing: the metric computations over labeled
// corpora, component ablations, the (optionally parallel) corpus runner,
// and report serialization.

#include <json.hpp>

#include <atomic>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "rbpd/detector.hpp"
#include "rbpd/util.hpp"
#include "rbpd/webpage.hpp"

namespace rbpd {

struct SampleVerdict {
    std::string sample_id;
    Verdict verdict;
};

struct MetricsReport {
    double accuracy = 0.0;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    size_t tp = 0, fp = 0, tn = 0, fn = 0, unscored = 0;
    size_t brands_detected = 0;  // distinct brands among true positives
    double mean_time_s = 0.0;
    double mean_llm_time_s = 0.0;
};

// Labels CSV: "sample_id,label" with label in {phishing, benign}.
inline std::map<std::string, std::string> load_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labels file: " + path.string());
    std::map<std::string, std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        std::string row = trim(line);
        if (row.empty() || row.starts_with("#")) continue;
        auto comma = row.rfind(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed labels row: " + row);
        std::string id = trim(row.substr(0, comma));
        std::string label = lower_ascii(trim(row.substr(comma + 1)));
        if (id == "sample_id" && label == "label") continue;  // header
        if (label != "phishing" && label != "benign")
            throw std::runtime_error("unknown label '" + label + "' for sample " + id);
        labels[id] = label;
    }
    return labels;
}

// Phishing is the positive class. Unscored samples are excluded from every
// denominator but reported. A verdict/label id mismatch is fatal.
inline MetricsReport score(const std::vector<SampleVerdict>& verdicts,
                           const std::map<std::string, std::string>& labels) {
    MetricsReport report;
    std::set<std::string> seen;
    std::set<EntityId> tp_brands;
    double time_sum = 0.0, llm_time_sum = 0.0;
    size_t scored = 0;
    for (const auto& [id, verdict] : verdicts) {
        auto it = labels.find(id);
        if (it == labels.end()) throw std::runtime_error("verdict for unlabeled sample: " + id);
        if (!seen.insert(id).second) throw std::runtime_error("duplicate verdict for sample: " + id);
        if (verdict.label == VerdictLabel::unscored) {
            ++report.unscored;
            continue;
        }
        ++scored;
        time_sum += verdict.time_total_s;
        llm_time_sum += verdict.time_llm_s;
        bool truth_phishing = it->second == "phishing";
        bool predicted_phishing = verdict.label == VerdictLabel::phishing;
        if (predicted_phishing && truth_phishing) {
            ++report.tp;
            for (const auto& m : verdict.matched_brands) tp_brands.insert(m.id);
        } else if (predicted_phishing) {
            ++report.fp;
        } else if (truth_phishing) {
            ++report.fn;
        } else {
            ++report.tn;
        }
    }
    for (const auto& [id, label] : labels)
        if (!seen.count(id)) throw std::runtime_error("label without verdict: " + id);

    report.brands_detected = tp_brands.size();
    size_t denom = report.tp + report.fp + report.tn + report.fn;
    report.accuracy = denom ? static_cast<double>(report.tp + report.tn) / denom : 0.0;
    report.precision = (report.tp + report.fp) ? static_cast<double>(report.tp) / (report.tp + report.fp) : 0.0;
    report.recall = (report.tp + report.fn) ? static_cast<double>(report.tp) / (report.tp + report.fn) : 0.0;
    report.f1 = (report.precision + report.recall) > 0.0
                    ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                    : 0.0;
    report.mean_time_s = scored ? time_sum / scored : 0.0;
    report.mean_llm_time_s = scored ? llm_time_sum / scored : 0.0;
    return report;
}

// Replaces one named component with a pass-through: the CRP gate always
// open, or an extractor channel always empty.
inline void ablate(KpdComponents& components, const std::string& name) {
    if (name == "crp") components.ablate_crp_gate = true;
    else if (name == "lbe") components.ablate_lbe = true;
    else if (name == "tbe") components.ablate_tbe = true;
    else throw std::invalid_argument("unknown ablation component: " + name);
}

enum class DetectMode { kpd, visual };

// Runs detection over a corpus, preserving sample order. max_parallel > 1
// fans samples out to worker threads; verdicts land by index.
inline std::vector<SampleVerdict> run_detection(const BrandKnowledgeBase& bkb,
                                                const std::vector<CorpusSample>& samples,
                                                const KpdComponents& components, DetectMode mode,
                                                unsigned max_parallel = 1) {
    if (mode == DetectMode::kpd) {
        if (!components.llm) throw std::invalid_argument("kpd requires a summarizer client");
        if (!components.ablate_crp_gate && !components.crp)
            throw std::invalid_argument("kpd requires a CRP classifier");
    }
    std::vector<SampleVerdict> verdicts(samples.size());
    auto detect_one = [&](size_t i) {
        verdicts[i].sample_id = samples[i].id;
        verdicts[i].verdict = mode == DetectMode::kpd
                                  ? kpd_detect(bkb, samples[i], components)
                                  : rbpd_detect(bkb, samples[i], components.visual_threshold,
                                                components.hash_side);
    };
    if (max_parallel <= 1 || samples.size() <= 1) {
        for (size_t i = 0; i < samples.size(); ++i) detect_one(i);
        return verdicts;
    }
    std::atomic<size_t> next{0};
    unsigned workers = std::min<unsigned>(max_parallel, static_cast<unsigned>(samples.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < samples.size(); i = next.fetch_add(1))
                detect_one(i);
        });
    for (auto& t : pool) t.join();
    return verdicts;
}

inline nlohmann::json verdict_to_json(const SampleVerdict& sv, bool include_timings) {
    nlohmann::json line;
    line["sample_id"] = sv.sample_id;
    line["label"] = std::string(verdict_label_name(sv.verdict.label));
    line["stage"] = std::string(verdict_stage_name(sv.verdict.stage));
    line["reason"] = sv.verdict.reason;
    line["matched_brands"] = nlohmann::json::array();
    for (const auto& m : sv.verdict.matched_brands)
        line["matched_brands"].push_back(
            {{"id", m.id},
             {"channel", m.channel == BrandChannel::visual ? "visual" : "textual"},
             {"detail", m.detail}});
    if (include_timings) {
        line["time_total_s"] = sv.verdict.time_total_s;
        line["time_llm_s"] = sv.verdict.time_llm_s;
    }
    return line;
}

inline void write_report_jsonl(const std::filesystem::path& path,
                               const std::vector<SampleVerdict>& verdicts,
                               bool include_timings = true) {
    std::string out;
    for (const auto& sv : verdicts) out += verdict_to_json(sv, include_timings).dump() + "\n";
    write_file(path, out);
}

inline std::vector<SampleVerdict> read_report_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report: " + path.string());
    std::vector<SampleVerdict> verdicts;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        nlohmann::json doc = nlohmann::json::parse(line);
        SampleVerdict sv;
        sv.sample_id = doc.at("sample_id").get<std::string>();
        std::string label = doc.at("label").get<std::string>();
        sv.verdict.label = label == "phishing"  ? VerdictLabel::phishing
                           : label == "benign" ? VerdictLabel::benign
                                               : VerdictLabel::unscored;
        std::string stage = doc.at("stage").get<std::string>();
        for (VerdictStage s : {VerdictStage::crp_gate, VerdictStage::no_brand, VerdictStage::domain_match,
                               VerdictStage::domain_mismatch, VerdictStage::error})
            if (verdict_stage_name(s) == stage) sv.verdict.stage = s;
        sv.verdict.reason = doc.value("reason", "");
        for (const auto& m : doc.value("matched_brands", nlohmann::json::array())) {
            MatchedBrand mb;
            mb.id = m.at("id").get<std::string>();
            mb.channel = m.value("channel", "visual") == "textual" ? BrandChannel::textual
                                                                   : BrandChannel::visual;
            mb.detail = m.value("detail", "");
            sv.verdict.matched_brands.push_back(std::move(mb));
        }
        sv.verdict.time_total_s = doc.value("time_total_s", 0.0);
        sv.verdict.time_llm_s = doc.value("time_llm_s", 0.0);
        verdicts.push_back(std::move(sv));
    }
    return verdicts;
}

inline nlohmann::json metrics_to_json(const MetricsReport& report) {
    nlohmann::json doc;
    doc["accuracy"] = report.accuracy;
    doc["f1"] = report.f1;
    doc["precision"] = report.precision;
    doc["recall"] = report.recall;
    doc["counts"] = {{"tp", report.tp},       {"fp", report.fp},
                     {"tn", report.tn},       {"fn", report.fn},
                     {"unscored", report.unscored}};
    doc["brands_detected"] = report.brands_detected;
    doc["mean_time_s"] = report.mean_time_s;
    doc["mean_llm_time_s"] = report.mean_llm_time_s;
    return doc;
}

}  // namespace rbpd
