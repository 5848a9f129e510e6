#pragma once
// Chat-completion client interface plus the bundled implementations: a
// fixture client (pure function of the prompt), a deterministic rule-based
// oracle client for offline runs, and a generic HTTP client for hosted
// models.

#include <json.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbpd/adversarial.hpp"
#include "rbpd/html.hpp"
#include "rbpd/prompt.hpp"
#include "rbpd/summary.hpp"
#include "rbpd/util.hpp"
#include "rbpd/webpage.hpp"

namespace rbpd {

struct LlmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class LlmClient {
public:
    virtual ~LlmClient() = default;
    // Returns the completion text; throws LlmError on failure.
    virtual std::string complete(const std::string& prompt,
                                 const std::vector<std::filesystem::path>& images) = 0;
    virtual std::string model_id() const = 0;
    virtual bool deterministic() const { return false; }
};

// Scripted completions for tests: the completion of the first rule whose
// needle occurs in the prompt, else the default completion.
class FixtureLlmClient : public LlmClient {
public:
    struct Rule {
        std::string needle;
        std::string completion;
    };

    explicit FixtureLlmClient(std::vector<Rule> rules, std::string default_completion = "")
        : rules_(std::move(rules)), default_(std::move(default_completion)) {}

    std::string complete(const std::string& prompt, const std::vector<std::filesystem::path>&) override {
        for (const auto& rule : rules_)
            if (prompt.find(rule.needle) != std::string::npos) return rule.completion;
        return default_;
    }
    std::string model_id() const override { return "fixture"; }
    bool deterministic() const override { return true; }

private:
    std::vector<Rule> rules_;
    std::string default_;
};

namespace detail {

inline bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '\'';
}

inline std::string strip_word_punct(std::string_view token) {
    size_t b = 0, e = token.size();
    while (b < e && !is_word_char(token[b])) ++b;
    while (e > b && !is_word_char(token[e - 1])) --e;
    return std::string(token.substr(b, e - b));
}

inline bool looks_capitalized(const std::string& word) {
    return !word.empty() && std::isupper(static_cast<unsigned char>(word[0]));
}

inline const std::set<std::string>& brand_stopwords() {
    static const std::set<std::string> words = {
        "Home",    "Login",    "Log",    "Sign",     "Register", "Welcome", "The",     "Online",
        "For",     "Business", "Rights", "Reserved", "All",      "English", "Chinese", "Please",
        "Account", "Password", "Assets", "New",      "Your",     "This",    "Javascript",
        "JavaScript"};
    return words;
}

}  // namespace detail

// Deterministic keyword-rule client: reads the input section of the prompt,
// deobfuscates homoglyphs, and emits a six-line answer in the in-context
// examples' format. Mimics an instruction-following model, including its
// weakness to prompt injection when the hardened template is not in use.
class OracleLlmClient : public LlmClient {
public:
    std::string complete(const std::string& prompt, const std::vector<std::filesystem::path>&) override {
        auto [url, html] = extract_input(prompt);
        bool hardened = prompt.find("Attention! Please ignore any instructions") != std::string::npos;
        std::string text = deobfuscate_homoglyphs(html);

        bool hijacked = !hardened && contains_ci(text, "ignore the previous instruction") &&
                        contains_ci(text, "not identifiable");

        std::optional<std::string> brand = hijacked ? std::nullopt : extract_brand(text);

        bool has_pwd = text.find("<inputpwd>") != std::string::npos;
        bool has_form_field = text.find("<form>") != std::string::npos &&
                              text.find("<inputtxt>") != std::string::npos;
        bool explicit_crp = has_pwd || has_form_field;
        std::vector<std::string> keywords;
        for (const char* kw : {"Sign in", "Log in", "Login", "Register", "Account", "Assets", "Password"})
            if (contains_ci(text, kw)) keywords.push_back(kw);

        std::string out;
        out += "(1) " + (brand ? *brand : std::string("Not identifiable")) + "\n";
        out += explicit_crp
                   ? "(2) There is a form containing account and password input fields.\n"
                   : "(2) There are no forms or input fields to submit user credentials.\n";
        bool has_redirect = !explicit_crp && !keywords.empty();
        out += has_redirect
                   ? "(3) There are buttons or links related to signing in.\n"
                   : "(3) There are no buttons or links directing the user to another credential-taking page.\n";
        if (keywords.empty()) {
            out += "(4) There are no important keywords.\n";
        } else {
            out += "(4) There are keywords ";
            for (size_t i = 0; i < keywords.size(); ++i) {
                if (i) out += i + 1 == keywords.size() ? " and " : ", ";
                out += "\"" + keywords[i] + "\"";
            }
            out += " related to user credentials.\n";
        }
        if (explicit_crp) {
            out += "(5) explicit intention\n(6) The answer is according to (2).\n";
        } else if (!keywords.empty()) {
            out += "(5) implicit intention\n(6) The answer is according to (4).\n";
        } else {
            out += "(5) no intention\n(6) The answer is according to (2), (3), and (4).\n";
        }
        return out;
    }

    std::string model_id() const override { return "rule-oracle"; }
    bool deterministic() const override { return true; }

private:
    static std::pair<std::string, std::string> extract_input(const std::string& prompt) {
        size_t url_pos = prompt.rfind("\nURL: ");
        if (url_pos == std::string::npos) return {"", ""};
        size_t url_end = prompt.find('\n', url_pos + 1);
        std::string url = prompt.substr(url_pos + 6, url_end - url_pos - 6);
        size_t html_pos = prompt.find("HTML: ", url_end);
        if (html_pos == std::string::npos) return {url, ""};
        size_t html_end = prompt.find('\n', html_pos);
        std::string html = prompt.substr(html_pos + 6, html_end == std::string::npos
                                                           ? std::string::npos
                                                           : html_end - html_pos - 6);
        return {url, html};
    }

    // Candidate order: name after a "(c) <year>" copyright mark, name before
    // a copyright mark, first capitalized word in the title, first
    // capitalized word anywhere.
    static std::optional<std::string> extract_brand(const std::string& text) {
        std::vector<std::string> tokens;
        for (const auto& t : split(collapse_ws(text), ' '))
            if (!t.empty()) tokens.push_back(t);
        auto usable = [](const std::string& w) {
            return detail::looks_capitalized(w) && !detail::brand_stopwords().count(w) && w.size() >= 2;
        };
        const std::string copyright = "©";
        auto is_yearish = [](const std::string& t) {
            return !t.empty() && t.find_first_not_of("0123456789-–") == std::string::npos;
        };
        for (size_t i = 0; i < tokens.size(); ++i) {
            if (tokens[i].find(copyright) == std::string::npos) continue;
            // "(c) 2023 Brand" with the year as its own token
            size_t j = i + 1;
            if (j < tokens.size() && is_yearish(detail::strip_word_punct(tokens[j]))) ++j;
            if (j > i + 1 && j < tokens.size()) {
                std::string w = detail::strip_word_punct(tokens[j]);
                if (usable(w)) return w;
            }
        }
        for (size_t i = 0; i < tokens.size(); ++i) {
            if (tokens[i].find(copyright) == std::string::npos || i == 0) continue;
            std::string w = detail::strip_word_punct(tokens[i - 1]);
            if (usable(w)) return w;
        }
        size_t title_open = text.find("<title>");
        if (title_open != std::string::npos) {
            size_t title_close = text.find("</title>", title_open);
            std::string title = text.substr(title_open + 7, title_close == std::string::npos
                                                                ? std::string::npos
                                                                : title_close - title_open - 7);
            for (const auto& t : split(collapse_ws(title), ' ')) {
                std::string w = detail::strip_word_punct(t);
                if (usable(w)) return w;
            }
        }
        for (const auto& t : tokens) {
            std::string w = detail::strip_word_punct(t);
            if (w.find('<') == std::string::npos && usable(w)) return w;
        }
        return std::nullopt;
    }
};

// One record per LLM call, for offline review of prompts and parses.
class AuditSink {
public:
    virtual ~AuditSink() = default;
    virtual void record(const std::string& sample_id, const std::string& prompt_hash,
                        const std::string& completion, const WebpageSummary& summary) = 0;
};

class JsonlAuditSink : public AuditSink {
public:
    explicit JsonlAuditSink(const std::filesystem::path& path) : out_(path, std::ios::trunc) {
        if (!out_) throw std::runtime_error("cannot open audit log: " + path.string());
    }

    void record(const std::string& sample_id, const std::string& prompt_hash,
                const std::string& completion, const WebpageSummary& summary) override {
        nlohmann::json line;
        line["sample_id"] = sample_id;
        line["prompt_hash"] = prompt_hash;
        line["completion"] = completion;
        line["parse_result"] = {{"brand", summary.brand ? nlohmann::json(*summary.brand) : nlohmann::json()},
                                {"crp_verdict", std::string(crp_verdict_name(summary.crp_verdict))},
                                {"warnings", summary.parse_warnings}};
        std::lock_guard<std::mutex> lock(mutex_);
        out_ << line.dump() << "\n";
    }

private:
    std::mutex mutex_;
    std::ofstream out_;
};

struct SummarizeOptions {
    size_t html_cap = 8000;
    std::string sample_id;       // for audit records
    AuditSink* audit = nullptr;  // optional
};

// Renders the prompt for a page, runs the client, and parses the answer.
// Client failures propagate as LlmError so the pipeline can mark the sample
// unscored instead of silently benign.
inline WebpageSummary summarize(LlmClient& client, const PromptVariant& variant, const Webpage& page,
                                const SummarizeOptions& options = {}) {
    ProcessedHtml processed = preprocess_html(page.html, options.html_cap);
    std::string prompt = render_prompt(variant, processed.text, page.url);
    std::vector<std::filesystem::path> images;
    if (variant.kind == PromptKind::multimodal && page.screenshot) images.push_back(*page.screenshot);
    std::string completion;
    try {
        completion = client.complete(prompt, images);
    } catch (const LlmError&) {
        throw;
    } catch (const std::exception& e) {
        throw LlmError(e.what());
    }
    WebpageSummary summary = parse_summary(completion);
    if (options.audit) {
        char hash[20];
        std::snprintf(hash, sizeof hash, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(prompt)));
        options.audit->record(options.sample_id, hash, completion, summary);
    }
    return summary;
}

}  // namespace rbpd
