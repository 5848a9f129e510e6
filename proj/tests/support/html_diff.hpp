#pragma once
// Structural HTML diff helpers for checking the typosquat transform: markup
// runs must be byte-identical, text runs may differ by exactly one
// homoglyph substitution per word.

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "rbpd/adversarial.hpp"

namespace testfx {

// (is_text, bytes) runs; comment/script/style contents count as markup.
inline std::vector<std::pair<bool, std::string>> lex_segments(const std::string& html) {
    std::vector<std::pair<bool, std::string>> segments;
    std::string lower;
    for (char c : html) lower.push_back(static_cast<char>(std::tolower((unsigned char)c)));
    size_t i = 0;
    while (i < html.size()) {
        if (html[i] == '<') {
            size_t end = html.find('>', i);
            if (html.compare(i, 4, "<!--") == 0) end = html.find("-->", i) + 2;
            for (const char* name : {"script", "style"}) {
                std::string open = std::string("<") + name;
                if (lower.compare(i, open.size(), open) == 0) {
                    size_t close = lower.find(std::string("</") + name, i);
                    end = close == std::string::npos ? html.size() - 1 : html.find('>', close);
                }
            }
            if (end == std::string::npos || end < i) end = html.size() - 1;
            segments.emplace_back(false, html.substr(i, end - i + 1));
            i = end + 1;
        } else {
            size_t end = html.find('<', i);
            if (end == std::string::npos) end = html.size();
            segments.emplace_back(true, html.substr(i, end - i));
            i = end;
        }
    }
    return segments;
}

inline std::vector<std::string> words_of(const std::string& text) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) words.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) words.push_back(cur);
    return words;
}

inline bool word_has_mappable(const std::string& word) {
    for (char c : word)
        if (rbpd::homoglyph_for(c)) return true;
    return false;
}

// True iff `after` is `before` with exactly one character replaced by its
// homoglyph.
inline bool one_char_substituted(const std::string& before, const std::string& after) {
    if (before == after) return false;
    if (rbpd::deobfuscate_homoglyphs(after) != before) return false;
    size_t substitutions = 0;
    size_t bi = 0, ai = 0;
    while (bi < before.size() && ai < after.size()) {
        if (before[bi] == after[ai]) {
            ++bi;
            ++ai;
            continue;
        }
        auto glyph = rbpd::homoglyph_for(before[bi]);
        if (!glyph || after.compare(ai, glyph->size(), *glyph) != 0) return false;
        ++substitutions;
        ++bi;
        ai += glyph->size();
    }
    return substitutions == 1 && bi == before.size() && ai == after.size();
}

// Full check over a document pair: returns empty string when the transform
// holds the typosquat contract for the given scope, else a reason.
inline std::string check_typosquat_contract(const std::string& before, const std::string& after,
                                            bool title_only) {
    auto sb = lex_segments(before), sa = lex_segments(after);
    if (sb.size() != sa.size()) return "segment structure changed";
    bool in_title = false;
    for (size_t i = 0; i < sb.size(); ++i) {
        if (sb[i].first != sa[i].first) return "segment kinds diverged";
        if (!sb[i].first) {
            if (sb[i].second != sa[i].second) return "markup bytes changed";
            std::string lower;
            for (char c : sb[i].second) lower.push_back(static_cast<char>(std::tolower((unsigned char)c)));
            if (lower.rfind("<title", 0) == 0) in_title = true;
            if (lower.rfind("</title", 0) == 0) in_title = false;
            continue;
        }
        bool eligible = !title_only || in_title;
        std::string ws_before, ws_after;
        for (char c : sb[i].second)
            if (std::isspace((unsigned char)c)) ws_before.push_back(c);
        for (char c : sa[i].second)
            if (std::isspace((unsigned char)c)) ws_after.push_back(c);
        if (ws_before != ws_after) return "whitespace structure changed";
        auto wb = words_of(sb[i].second), wa = words_of(sa[i].second);
        if (wb.size() != wa.size()) return "word count changed";
        for (size_t w = 0; w < wb.size(); ++w) {
            if (eligible && word_has_mappable(wb[w])) {
                if (!one_char_substituted(wb[w], wa[w]))
                    return "word '" + wb[w] + "' not one-char substituted";
            } else if (wb[w] != wa[w]) {
                return "out-of-scope word changed: " + wb[w];
            }
        }
    }
    return "";
}

}  // namespace testfx
