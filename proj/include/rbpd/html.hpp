#pragma once
// Tolerant HTML reduction for LLM input: strips script/style/comment blocks,
// keeps the title, visible text, and a skeleton of credential-relevant
// elements (form/input/button/anchor) in the "<inputtxt>" style the prompt
// examples use.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbpd/util.hpp"

namespace rbpd {

struct ProcessedHtml {
    std::string text;  // single-line reduced document
    std::optional<std::string> title;
    size_t token_estimate = 0;
};

namespace detail {

inline std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size();) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        std::string rep;
        if (ent == "amp") rep = "&";
        else if (ent == "lt") rep = "<";
        else if (ent == "gt") rep = ">";
        else if (ent == "quot") rep = "\"";
        else if (ent == "apos") rep = "'";
        else if (ent == "nbsp") rep = " ";
        else if (ent == "copy") rep = "\xc2\xa9";
        else if (!ent.empty() && ent[0] == '#') {
            unsigned long cp = 0;
            try {
                cp = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                         ? std::stoul(std::string(ent.substr(2)), nullptr, 16)
                         : std::stoul(std::string(ent.substr(1)));
            } catch (...) {
                cp = 0;
            }
            if (cp > 0 && cp <= 0x10ffff) {  // encode as UTF-8
                if (cp < 0x80) rep.push_back(static_cast<char>(cp));
                else if (cp < 0x800) {
                    rep.push_back(static_cast<char>(0xc0 | (cp >> 6)));
                    rep.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
                } else if (cp < 0x10000) {
                    rep.push_back(static_cast<char>(0xe0 | (cp >> 12)));
                    rep.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
                    rep.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
                } else {
                    rep.push_back(static_cast<char>(0xf0 | (cp >> 18)));
                    rep.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
                    rep.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
                    rep.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
                }
            }
        }
        if (rep.empty() && ent != "nbsp") {
            out.push_back(s[i++]);  // unknown entity, keep literally
        } else {
            out += rep;
            i = semi + 1;
        }
    }
    return out;
}

inline std::string tag_name_of(std::string_view tag_body) {
    size_t i = 0;
    if (i < tag_body.size() && tag_body[i] == '/') ++i;
    size_t start = i;
    while (i < tag_body.size() &&
           (std::isalnum(static_cast<unsigned char>(tag_body[i])) || tag_body[i] == '-'))
        ++i;
    return lower_ascii(tag_body.substr(start, i - start));
}

inline std::string attr_value(std::string_view tag_body, std::string_view attr) {
    std::string lower = lower_ascii(tag_body);
    std::string needle = std::string(attr) + "=";
    size_t pos = 0;
    while ((pos = lower.find(needle, pos)) != std::string::npos) {
        bool boundary = pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
        pos += needle.size();
        if (!boundary) continue;
        if (pos >= lower.size()) return {};
        char quote = lower[pos];
        if (quote == '"' || quote == '\'') {
            size_t end = lower.find(quote, pos + 1);
            return lower.substr(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1);
        }
        size_t end = pos;
        while (end < lower.size() && !std::isspace(static_cast<unsigned char>(lower[end])) &&
               lower[end] != '>' && lower[end] != '/')
            ++end;
        return lower.substr(pos, end - pos);
    }
    return {};
}

}  // namespace detail

// Reduce raw HTML to a single-line document of at most `cap` characters.
// The title is always preserved, even when truncation drops later content.
inline ProcessedHtml preprocess_html(std::string_view html, size_t cap = 8000) {
    std::vector<std::string> pieces;
    std::optional<std::string> title;
    bool in_title = false;
    std::string title_text;

    auto push_text = [&](std::string_view raw) {
        std::string text = collapse_ws(detail::decode_entities(raw));
        if (text.empty()) return;
        if (in_title) {
            if (!title_text.empty()) title_text.push_back(' ');
            title_text += text;
        }
        pieces.push_back(std::move(text));
    };

    size_t i = 0;
    while (i < html.size()) {
        size_t lt = html.find('<', i);
        if (lt == std::string_view::npos) {
            push_text(html.substr(i));
            break;
        }
        if (lt > i) push_text(html.substr(i, lt - i));

        if (html.compare(lt, 4, "<!--") == 0) {
            size_t end = html.find("-->", lt + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        size_t gt = html.find('>', lt + 1);
        if (gt == std::string_view::npos) break;  // dangling '<': drop remainder
        std::string_view body = html.substr(lt + 1, gt - lt - 1);
        std::string name = detail::tag_name_of(body);
        bool closing = !body.empty() && body[0] == '/';
        i = gt + 1;

        if (!closing && (name == "script" || name == "style")) {
            std::string close = "</" + name;
            size_t end = lower_ascii(html.substr(i)).find(close);
            if (end == std::string::npos) {
                i = html.size();
            } else {
                size_t close_gt = html.find('>', i + end);
                i = close_gt == std::string_view::npos ? html.size() : close_gt + 1;
            }
            continue;
        }
        if (name == "title") {
            if (!closing) {
                in_title = true;
                pieces.push_back("<title>");
            } else {
                in_title = false;
                if (!title && !title_text.empty()) title = title_text;
                pieces.push_back("</title>");
            }
            continue;
        }
        if (name == "form" || name == "a" || name == "button") {
            pieces.push_back(closing ? "</" + name + ">" : "<" + name + ">");
            continue;
        }
        if (!closing && name == "input") {
            std::string type = detail::attr_value(body, "type");
            std::string skel = (type == "password") ? "inputpwd" : "inputtxt";
            pieces.push_back("<" + skel + "> </" + skel + ">");
            continue;
        }
        // Any other tag: dropped, inner text kept.
    }

    ProcessedHtml out;
    if (!title && !title_text.empty()) title = title_text;  // unclosed <title>
    out.title = title;
    std::string joined;
    for (const auto& p : pieces) {
        if (!joined.empty()) joined.push_back(' ');
        joined += p;
    }
    if (joined.size() > cap) {
        // Keep the title section intact, then as much of the rest as fits.
        std::string head;
        size_t title_end = joined.find("</title>");
        if (title_end != std::string::npos && title_end + 8 <= cap) head = joined.substr(0, title_end + 8);
        if (head.empty()) {
            joined.resize(cap);
        } else {
            std::string rest = joined.substr(head.size());
            size_t budget = cap - head.size();
            joined = head + rest.substr(0, budget);
        }
    }
    out.text = joined;
    out.token_estimate = (out.text.size() + 3) / 4;
    return out;
}

}  // namespace rbpd
