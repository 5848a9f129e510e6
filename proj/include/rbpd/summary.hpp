#pragma once
// Structured view of the six-part summary answer:
//   (1) targeted brand  (2) credential forms/fields  (3) redirect elements
//   (4) keywords        (5) credential-taking verdict (6) rationale

#include <optional>
#include <string>
#include <vector>

#include "rbpd/util.hpp"

namespace rbpd {

enum class CrpVerdict { none, implicit, explicit_ };

inline std::string_view crp_verdict_name(CrpVerdict v) {
    switch (v) {
        case CrpVerdict::none: return "none";
        case CrpVerdict::implicit: return "implicit";
        case CrpVerdict::explicit_: return "explicit";
    }
    return "";
}

struct WebpageSummary {
    std::optional<std::string> brand;  // nullopt for "Not identifiable"
    std::string credential_fields;
    std::string redirect_elements;
    std::string keywords;
    CrpVerdict crp_verdict = CrpVerdict::none;
    std::string rationale;
    std::string raw;  // full completion text, kept for audit
    std::vector<std::string> parse_warnings;
};

namespace detail {

inline std::string strip_trailing_punct(std::string s) {
    while (!s.empty()) {
        char c = s.back();
        if (c == '.' || c == ',' || c == '!' || c == ';' || c == ':') s.pop_back();
        else break;
    }
    return s;
}

}  // namespace detail

// Tolerant parse of a completion: answer lines are found by their leading
// "(N)" markers anywhere in the text; content continues until the next
// marker. Missing lines fall back to defaults and are recorded as warnings.
inline WebpageSummary parse_summary(const std::string& completion) {
    WebpageSummary summary;
    summary.raw = completion;

    std::string parts[7];
    bool seen[7] = {};
    int current = 0;
    for (const std::string& raw_line : split(completion, '\n')) {
        std::string line = trim(raw_line);
        if (line.size() >= 3 && line[0] == '(' && line[1] >= '1' && line[1] <= '6' && line[2] == ')') {
            current = line[1] - '0';
            seen[current] = true;
            parts[current] = trim(line.substr(3));
        } else if (current != 0 && !line.empty()) {
            if (!parts[current].empty()) parts[current] += ' ';
            parts[current] += line;
        }
    }
    for (int n = 1; n <= 6; ++n)
        if (!seen[n])
            summary.parse_warnings.push_back("missing answer line (" + std::to_string(n) + ")");

    std::string brand = detail::strip_trailing_punct(trim(parts[1]));
    if (!brand.empty() && lower_ascii(brand) != "not identifiable") summary.brand = brand;

    summary.credential_fields = parts[2];
    summary.redirect_elements = parts[3];
    summary.keywords = parts[4];
    summary.rationale = parts[6];

    const std::string& verdict_line = parts[5];
    if (contains_ci(verdict_line, "implicit intention")) summary.crp_verdict = CrpVerdict::implicit;
    else if (contains_ci(verdict_line, "explicit intention")) summary.crp_verdict = CrpVerdict::explicit_;
    else if (contains_ci(verdict_line, "no intention")) summary.crp_verdict = CrpVerdict::none;
    else {
        summary.crp_verdict = CrpVerdict::none;
        if (seen[5]) summary.parse_warnings.push_back("unrecognized verdict: " + verdict_line);
    }
    return summary;
}

}  // namespace rbpd
