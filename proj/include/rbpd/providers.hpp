#pragma once
// Logo acquisition providers. Live crawling and image-search APIs are out of
// scope; the fixture providers read pre-cropped logo images from a directory:
//   <dir>/homepage/<registrable-domain>/*.png|pnm      logos shown on that site
//   <dir>/search/<query-slug>/meta.json                {"results":[{"image": f, "url": u}, ...]}
//   <dir>/search/<query-slug>/<f>                      image files named by meta.json

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "rbpd/util.hpp"

namespace rbpd {

struct ImageSearchHit {
    std::string source_url;
    std::string bytes;
};

class HomepageLogoProvider {
public:
    virtual ~HomepageLogoProvider() = default;
    // Pre-cropped logo images displayed on the given registrable domain.
    virtual std::vector<std::string> logos(const std::string& domain) const = 0;
};

class ImageSearchProvider {
public:
    virtual ~ImageSearchProvider() = default;
    virtual std::vector<ImageSearchHit> search(const std::string& query) const = 0;
};

inline std::string query_slug(std::string_view query) {
    std::string slug;
    bool last_sep = true;
    for (char c : lower_ascii(query)) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            slug.push_back(c);
            last_sep = false;
        } else if (!last_sep) {
            slug.push_back('_');
            last_sep = true;
        }
    }
    while (!slug.empty() && slug.back() == '_') slug.pop_back();
    return slug;
}

class FixtureHomepageLogoProvider : public HomepageLogoProvider {
public:
    explicit FixtureHomepageLogoProvider(std::filesystem::path root) : root_(std::move(root)) {}

    std::vector<std::string> logos(const std::string& domain) const override {
        namespace fs = std::filesystem;
        fs::path dir = root_ / "homepage" / domain;
        if (!fs::is_directory(dir)) return {};
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        std::vector<std::string> out;
        for (const auto& f : files) out.push_back(read_file(f));
        return out;
    }

private:
    std::filesystem::path root_;
};

class FixtureImageSearchProvider : public ImageSearchProvider {
public:
    explicit FixtureImageSearchProvider(std::filesystem::path root) : root_(std::move(root)) {}

    std::vector<ImageSearchHit> search(const std::string& query) const override {
        namespace fs = std::filesystem;
        fs::path dir = root_ / "search" / query_slug(query);
        fs::path meta = dir / "meta.json";
        if (!fs::exists(meta)) return {};
        nlohmann::json doc = nlohmann::json::parse(read_file(meta));
        std::vector<ImageSearchHit> hits;
        for (const auto& r : doc.value("results", nlohmann::json::array())) {
            ImageSearchHit hit;
            hit.source_url = r.at("url").get<std::string>();
            hit.bytes = read_file(dir / r.at("image").get<std::string>());
            hits.push_back(std::move(hit));
        }
        return hits;
    }

private:
    std::filesystem::path root_;
};

}  // namespace rbpd
