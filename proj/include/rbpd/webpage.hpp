#pragma once
// Detection inputs. Corpus layout, one directory per sample:
//   <root>/<sample_id>/info.json   {"url": "...", "label": "phishing"|"benign"?}
//   <root>/<sample_id>/html.txt    raw HTML (absent or empty for text-to-image pages)
//   <root>/<sample_id>/shot.png    optional screenshot
//   <root>/<sample_id>/regions.json optional logo boxes [[x,y,w,h], ...]

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rbpd/psl.hpp"
#include "rbpd/util.hpp"

namespace rbpd {

struct Webpage {
    std::string url;
    std::string html;
    std::optional<std::filesystem::path> screenshot;
    std::string domain;  // registrable domain of url
};

inline Webpage make_webpage(std::string url, std::string html,
                            std::optional<std::filesystem::path> screenshot = std::nullopt) {
    Webpage page;
    page.domain = registrable_domain(url);
    page.url = std::move(url);
    page.html = std::move(html);
    page.screenshot = std::move(screenshot);
    return page;
}

struct LogoRegion {
    int x = 0, y = 0, w = 0, h = 0;
};

struct CorpusSample {
    std::string id;
    Webpage page;
    std::optional<std::string> label;  // "phishing" / "benign" when present
    std::vector<LogoRegion> regions;
};

inline std::vector<LogoRegion> load_regions(const std::filesystem::path& path) {
    nlohmann::json doc = nlohmann::json::parse(read_file(path), nullptr, false);
    std::vector<LogoRegion> regions;
    if (!doc.is_array()) return regions;
    for (const auto& box : doc) {
        if (!box.is_array() || box.size() != 4) continue;
        regions.push_back({box[0].get<int>(), box[1].get<int>(), box[2].get<int>(), box[3].get<int>()});
    }
    return regions;
}

// Samples ordered by directory name. Directories without a readable
// info record are skipped with a warning.
inline std::vector<CorpusSample> load_corpus(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) throw std::runtime_error("corpus directory not found: " + root.string());
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) dirs.push_back(entry.path());
    std::sort(dirs.begin(), dirs.end());

    std::vector<CorpusSample> samples;
    for (const auto& dir : dirs) {
        fs::path info_path = dir / "info.json";
        if (!fs::exists(info_path)) {
            std::cerr << "[rbpd] skipping sample without info.json: " << dir << "\n";
            continue;
        }
        nlohmann::json info = nlohmann::json::parse(read_file(info_path), nullptr, false);
        if (info.is_discarded() || !info.is_object() || !info.contains("url") || !info["url"].is_string()) {
            std::cerr << "[rbpd] skipping sample with malformed info.json: " << dir << "\n";
            continue;
        }
        CorpusSample sample;
        sample.id = dir.filename().string();
        std::string url = info["url"].get<std::string>();
        std::string html;
        if (fs::exists(dir / "html.txt")) html = read_file(dir / "html.txt");
        std::optional<fs::path> shot;
        if (fs::exists(dir / "shot.png")) shot = dir / "shot.png";
        try {
            sample.page = make_webpage(std::move(url), std::move(html), std::move(shot));
        } catch (const std::invalid_argument& e) {
            std::cerr << "[rbpd] skipping sample with bad URL: " << dir << " (" << e.what() << ")\n";
            continue;
        }
        if (info.contains("label") && info["label"].is_string())
            sample.label = info["label"].get<std::string>();
        if (fs::exists(dir / "regions.json")) sample.regions = load_regions(dir / "regions.json");
        samples.push_back(std::move(sample));
    }
    return samples;
}

}  // namespace rbpd
