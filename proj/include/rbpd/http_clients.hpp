#pragma once
// HTTP-backed implementations of the pluggable interfaces: a generic
// chat/completion client (any endpoint speaking a simple JSON contract) and
// an external CRP scorer. Both honor per-call timeouts and bounded retries.

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "rbpd/crp.hpp"
#include "rbpd/llm.hpp"
#include "rbpd/util.hpp"

namespace rbpd {

namespace detail {

inline std::string base64_encode(std::string_view data) {
    static constexpr char table[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    size_t i = 0;
    while (i + 3 <= data.size()) {
        unsigned v = (static_cast<unsigned char>(data[i]) << 16) |
                     (static_cast<unsigned char>(data[i + 1]) << 8) |
                     static_cast<unsigned char>(data[i + 2]);
        out.push_back(table[(v >> 18) & 63]);
        out.push_back(table[(v >> 12) & 63]);
        out.push_back(table[(v >> 6) & 63]);
        out.push_back(table[v & 63]);
        i += 3;
    }
    size_t rem = data.size() - i;
    if (rem == 1) {
        unsigned v = static_cast<unsigned char>(data[i]) << 16;
        out.push_back(table[(v >> 18) & 63]);
        out.push_back(table[(v >> 12) & 63]);
        out += "==";
    } else if (rem == 2) {
        unsigned v = (static_cast<unsigned char>(data[i]) << 16) |
                     (static_cast<unsigned char>(data[i + 1]) << 8);
        out.push_back(table[(v >> 18) & 63]);
        out.push_back(table[(v >> 12) & 63]);
        out.push_back(table[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

struct SplitUrl {
    std::string base;  // scheme://host[:port]
    std::string path;  // /path; "/" when absent
};

inline SplitUrl split_endpoint(const std::string& endpoint) {
    auto scheme_end = endpoint.find("://");
    size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto slash = endpoint.find('/', host_start);
    if (slash == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, slash), endpoint.substr(slash)};
}

}  // namespace detail

struct HttpLlmConfig {
    std::string endpoint;     // e.g. http://localhost:8080/v1/completions
    std::string model;
    std::string api_key_env;  // name of the env var holding the bearer token
    double timeout_s = 30.0;
    int max_retries = 2;
};

// POSTs {"model", "prompt", "images": [base64...]} and accepts any of the
// common completion response shapes.
class HttpLlmClient : public LlmClient {
public:
    explicit HttpLlmClient(HttpLlmConfig config) : config_(std::move(config)) {}

    std::string complete(const std::string& prompt,
                         const std::vector<std::filesystem::path>& images) override {
        nlohmann::json body;
        body["model"] = config_.model;
        body["prompt"] = prompt;
        if (!images.empty()) {
            body["images"] = nlohmann::json::array();
            for (const auto& path : images)
                body["images"].push_back(detail::base64_encode(read_file(path)));
        }
        std::string payload = body.dump();

        auto [base, path] = detail::split_endpoint(config_.endpoint);
        std::string error;
        for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(200 * attempt));
            httplib::Client cli(base);
            cli.set_connection_timeout(std::chrono::duration<double>(config_.timeout_s));
            cli.set_read_timeout(std::chrono::duration<double>(config_.timeout_s));
            if (!config_.api_key_env.empty()) {
                const char* key = std::getenv(config_.api_key_env.c_str());
                if (key) cli.set_bearer_token_auth(key);
            }
            auto res = cli.Post(path, payload, "application/json");
            if (!res) {
                error = "connection failed: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status >= 500) {
                error = "server error " + std::to_string(res->status);
                continue;
            }
            if (res->status != 200) throw LlmError("LLM endpoint returned " + std::to_string(res->status));
            return extract_text(res->body);
        }
        throw LlmError("LLM request failed after retries: " + error);
    }

    std::string model_id() const override { return config_.model; }

private:
    static std::string extract_text(const std::string& body) {
        nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
        if (doc.is_discarded()) throw LlmError("malformed LLM response");
        if (doc.contains("text") && doc["text"].is_string()) return doc["text"];
        if (doc.contains("completion") && doc["completion"].is_string()) return doc["completion"];
        if (doc.contains("choices") && doc["choices"].is_array() && !doc["choices"].empty()) {
            const auto& first = doc["choices"][0];
            if (first.contains("text") && first["text"].is_string()) return first["text"];
            if (first.contains("message") && first["message"].contains("content"))
                return first["message"]["content"];
        }
        throw LlmError("LLM response carries no completion text");
    }

    HttpLlmConfig config_;
};

// External CRP scorer: POSTs the summary and processed HTML, expects
// {"score": s} with s in [0,1].
class HttpCrpClassifier : public CrpClassifier {
public:
    HttpCrpClassifier(std::string endpoint, double threshold, double timeout_s = 10.0)
        : endpoint_(std::move(endpoint)), threshold_(threshold), timeout_s_(timeout_s) {}

    CrpDecision classify(const WebpageSummary& summary, const ProcessedHtml& html) const override {
        nlohmann::json body;
        body["summary"] = {{"brand", summary.brand ? nlohmann::json(*summary.brand) : nlohmann::json()},
                           {"credential_fields", summary.credential_fields},
                           {"redirect_elements", summary.redirect_elements},
                           {"keywords", summary.keywords},
                           {"crp_verdict", std::string(crp_verdict_name(summary.crp_verdict))},
                           {"rationale", summary.rationale}};
        body["html"] = html.text;

        auto [base, path] = detail::split_endpoint(endpoint_);
        httplib::Client cli(base);
        cli.set_connection_timeout(std::chrono::duration<double>(timeout_s_));
        cli.set_read_timeout(std::chrono::duration<double>(timeout_s_));
        auto res = cli.Post(path, body.dump(), "application/json");
        if (!res || res->status != 200)
            throw std::runtime_error("CRP scorer request failed: " + endpoint_);
        nlohmann::json doc = nlohmann::json::parse(res->body);
        CrpDecision decision;
        decision.score = doc.at("score").get<double>();
        decision.is_crp = decision.score >= threshold_;
        decision.evidence.push_back("external scorer");
        return decision;
    }

private:
    std::string endpoint_;
    double threshold_;
    double timeout_s_;
};

}  // namespace rbpd
