#pragma once
// Credential-requiring-page classification. The default backend is a
// deterministic rule scorer over the LLM summary and the processed HTML;
// trained models plug in behind the same interface.

#include <string>
#include <vector>

#include "rbpd/html.hpp"
#include "rbpd/summary.hpp"
#include "rbpd/util.hpp"

namespace rbpd {

struct CrpDecision {
    bool is_crp = false;
    double score = 0.0;  // in [0,1]; is_crp <=> score >= threshold
    std::vector<std::string> evidence;
};

class CrpClassifier {
public:
    virtual ~CrpClassifier() = default;
    virtual CrpDecision classify(const WebpageSummary& summary, const ProcessedHtml& html) const = 0;
};

inline const std::vector<std::string>& credential_keywords() {
    static const std::vector<std::string> keywords = {"Sign in", "Log in", "Register",
                                                      "Account", "Assets", "Password"};
    return keywords;
}

// Rule scorer: summary verdict 0.6, credential input skeleton 0.3,
// credential keyword 0.1, clamped to [0,1]. Weights are chosen so the three
// in-context reference pages classify as labeled with the 0.5 threshold.
class RuleCrpClassifier : public CrpClassifier {
public:
    explicit RuleCrpClassifier(double threshold = 0.5) : threshold_(threshold) {}

    CrpDecision classify(const WebpageSummary& summary, const ProcessedHtml& html) const override {
        CrpDecision decision;
        int tenths = 0;  // integer weights keep 0.6+0.3+0.1 an exact 1.0
        if (summary.crp_verdict == CrpVerdict::explicit_ || summary.crp_verdict == CrpVerdict::implicit) {
            tenths += 6;
            decision.evidence.push_back(std::string("summary verdict: ") +
                                        std::string(crp_verdict_name(summary.crp_verdict)));
        }
        bool has_pwd = html.text.find("<inputpwd>") != std::string::npos;
        bool has_form_input = html.text.find("<form>") != std::string::npos &&
                              html.text.find("<inputtxt>") != std::string::npos;
        if (has_pwd || has_form_input) {
            tenths += 3;
            decision.evidence.push_back(has_pwd ? "password input field" : "form with input field");
        }
        for (const auto& kw : credential_keywords()) {
            if (contains_ci(html.text, kw)) {
                tenths += 1;
                decision.evidence.push_back("keyword: " + kw);
                break;
            }
        }
        decision.score = std::min(10, tenths) / 10.0;
        decision.is_crp = decision.score >= threshold_;
        return decision;
    }

    double threshold() const { return threshold_; }

private:
    double threshold_;
};

inline CrpDecision classify_crp(const CrpClassifier& classifier, const WebpageSummary& summary,
                                const ProcessedHtml& html) {
    return classifier.classify(summary, html);
}

}  // namespace rbpd
