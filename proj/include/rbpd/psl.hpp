#pragma once
// Registrable-domain (eTLD+1) derivation against a pinned public-suffix
// snapshot. The builtin snapshot is a curated subset of the public suffix
// list; a full list file in the standard one-rule-per-line format can be
// loaded instead.

#include "rbpd/util.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace rbpd {

namespace detail {

// Pinned snapshot, publicsuffix.org rule syntax: plain suffixes,
// "*." wildcards, "!" exceptions.
inline constexpr std::string_view kBuiltinSuffixRules = R"(com
net
org
edu
gov
mil
int
io
co
me
ai
app
dev
top
xyz
site
online
info
biz
name
pro
club
shop
store
tech
live
cloud
page
link
space
fun
icu
vip
cc
tv
ws
to
fm
am
be
at
ch
cn
com.cn
net.cn
org.cn
gov.cn
de
dk
es
com.es
eu
fi
fr
gr
ie
it
jp
co.jp
ne.jp
or.jp
ac.jp
go.jp
kr
co.kr
nl
no
pl
com.pl
net.pl
org.pl
pt
ru
com.ru
se
tr
com.tr
gov.tr
ua
com.ua
uk
co.uk
org.uk
me.uk
ltd.uk
plc.uk
net.uk
gov.uk
ac.uk
sch.uk
us
ca
mx
com.mx
ar
com.ar
br
com.br
net.br
org.br
gov.br
cl
co.cl
pe
com.pe
au
com.au
net.au
org.au
edu.au
gov.au
nz
co.nz
net.nz
org.nz
govt.nz
za
co.za
org.za
in
co.in
net.in
org.in
gov.in
sg
com.sg
net.sg
org.sg
edu.sg
gov.sg
per.sg
hk
com.hk
org.hk
gov.hk
tw
com.tw
my
com.my
id
co.id
or.id
web.id
th
co.th
in.th
go.th
ph
com.ph
vn
com.vn
il
co.il
org.il
ae
co.ae
sa
com.sa
eg
com.eg
ng
com.ng
ke
co.ke
gh
com.gh
*.ck
!www.ck
*.bd
*.er
)";

}  // namespace detail

class PublicSuffixList {
public:
    PublicSuffixList() = default;

    static PublicSuffixList from_rules(std::string_view rules_text) {
        PublicSuffixList psl;
        for (auto& raw : split(rules_text, '\n')) {
            std::string line = trim(raw);
            if (line.empty() || line.starts_with("//")) continue;
            line = lower_ascii(line);
            if (line.front() == '!') {
                psl.exceptions_.insert(line.substr(1));
            } else if (line.starts_with("*.")) {
                psl.wildcards_.insert(line.substr(2));
            } else {
                psl.rules_.insert(line);
            }
        }
        return psl;
    }

    static PublicSuffixList from_file(const std::filesystem::path& path) {
        return from_rules(read_file(path));
    }

    static const PublicSuffixList& builtin() {
        static const PublicSuffixList psl = from_rules(detail::kBuiltinSuffixRules);
        return psl;
    }

    // Longest matching public suffix of a lowercase host, per PSL semantics:
    // exception rules beat wildcards, the implicit "*" rule makes every
    // rightmost label a suffix.
    std::string public_suffix(std::string_view host) const {
        std::string best;
        size_t pos = host.size();
        while (true) {
            size_t start = host.rfind('.', pos == host.size() ? std::string_view::npos : pos);
            std::string cand(start == std::string_view::npos ? host : host.substr(start + 1));
            if (exceptions_.count(cand)) {
                // An exception rule's suffix is the rule with the first label removed.
                auto dot = cand.find('.');
                return dot == std::string::npos ? std::string() : cand.substr(dot + 1);
            }
            bool match = rules_.count(cand) > 0;
            if (!match) {
                auto dot = cand.find('.');
                if (dot != std::string::npos && wildcards_.count(cand.substr(dot + 1))) match = true;
            }
            if (match) best = cand;
            if (start == std::string_view::npos) break;
            pos = start == 0 ? 0 : start - 1;
            if (start == 0) break;
        }
        if (best.empty()) {
            // Implicit "*" rule: the last label is the suffix.
            auto dot = host.rfind('.');
            best = dot == std::string_view::npos ? std::string(host) : std::string(host.substr(dot + 1));
        }
        return best;
    }

    // eTLD+1, or nullopt when the host is itself a public suffix.
    std::optional<std::string> registrable(std::string_view host) const {
        std::string suffix = public_suffix(host);
        if (host.size() <= suffix.size()) return std::nullopt;
        size_t cut = host.size() - suffix.size() - 1;  // position of '.' before suffix
        if (host[cut] != '.') return std::nullopt;
        size_t label_start = host.rfind('.', cut == 0 ? std::string_view::npos : cut - 1);
        size_t begin = label_start == std::string_view::npos ? 0 : label_start + 1;
        return std::string(host.substr(begin));
    }

private:
    std::set<std::string> rules_;
    std::set<std::string> wildcards_;
    std::set<std::string> exceptions_;
};

// Host part of a URL; scheme optional. Empty result means unparseable.
inline std::string url_host(std::string_view url) {
    std::string_view rest = url;
    auto scheme_end = rest.find("://");
    if (scheme_end != std::string_view::npos) rest = rest.substr(scheme_end + 3);
    auto end = rest.find_first_of("/?#");
    if (end != std::string_view::npos) rest = rest.substr(0, end);
    auto at = rest.rfind('@');
    if (at != std::string_view::npos) rest = rest.substr(at + 1);
    if (!rest.empty() && rest.front() == '[') {  // IPv6 literal
        auto close = rest.find(']');
        return close == std::string_view::npos ? std::string() : std::string(rest.substr(0, close + 1));
    }
    auto colon = rest.rfind(':');
    if (colon != std::string_view::npos && rest.find_first_not_of("0123456789", colon + 1) == std::string_view::npos)
        rest = rest.substr(0, colon);
    std::string host = lower_ascii(trim(rest));
    for (char c : host)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>') return {};
    return host;
}

inline bool is_ip_literal(std::string_view host) {
    if (host.empty()) return false;
    if (host.front() == '[') return true;  // IPv6
    size_t dots = 0;
    for (char c : host) {
        if (c == '.') ++dots;
        else if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return dots == 3;
}

// Lowercase eTLD+1 of a URL. IP-literal hosts are returned verbatim.
// Throws std::invalid_argument when no host can be extracted.
inline std::string registrable_domain(std::string_view url,
                                      const PublicSuffixList& psl = PublicSuffixList::builtin()) {
    std::string host = url_host(url);
    if (host.empty()) throw std::invalid_argument("unparseable URL: " + std::string(url));
    while (!host.empty() && host.back() == '.') host.pop_back();
    if (host.empty()) throw std::invalid_argument("unparseable URL: " + std::string(url));
    if (is_ip_literal(host)) return host;
    if (auto reg = psl.registrable(host)) return *reg;
    // Host equals a public suffix (or is a bare label); comparisons still
    // need a stable value, so return the host itself.
    return host;
}

inline std::optional<std::string> try_registrable_domain(
    std::string_view url, const PublicSuffixList& psl = PublicSuffixList::builtin()) {
    try {
        return registrable_domain(url, psl);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace rbpd
