#pragma once
// Shared test fixtures: temp dirs, synthetic logo images with known
// signatures, the golden KG setup, an in-memory detector BKB, and corpus
// writers.

#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "rbpd/bkb_builder.hpp"
#include "rbpd/brand.hpp"
#include "rbpd/image.hpp"
#include "rbpd/phash.hpp"
#include "rbpd/util.hpp"

namespace testfx {

inline std::filesystem::path fixture_path(const std::string& rel) {
    return std::filesystem::path(RBPD_TEST_FIXTURE_DIR) / rel;
}

class TempDir {
public:
    TempDir() {
        static std::atomic<uint64_t> counter{0};
        auto base = std::filesystem::temp_directory_path();
        path_ = base / ("rbpd_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    std::filesystem::path path_;
};

inline rbpd::Signature sig_from_seed(uint64_t seed, int bits = 64) {
    std::mt19937_64 rng(seed);
    rbpd::Signature sig;
    sig.bits = bits;
    sig.bytes.resize((bits + 7) / 8);
    for (auto& b : sig.bytes) b = static_cast<uint8_t>(rng());
    return sig;
}

inline std::string logo_png(const rbpd::Signature& sig) {
    return rbpd::encode_png_gray(rbpd::image_for_signature(sig));
}

// A white canvas with the signature's logo image pasted at (x, y); the
// region [x, y, logo_w, logo_h] crops back to the exact logo.
inline std::string canvas_png_with_logo(const rbpd::Signature& sig, int canvas_w, int canvas_h,
                                        int x, int y) {
    rbpd::GrayImage logo = rbpd::image_for_signature(sig);
    rbpd::GrayImage canvas;
    canvas.width = canvas_w;
    canvas.height = canvas_h;
    canvas.pixels.assign(static_cast<size_t>(canvas_w) * canvas_h, 255);
    for (int yy = 0; yy < logo.height; ++yy)
        for (int xx = 0; xx < logo.width; ++xx)
            canvas.pixels[static_cast<size_t>(y + yy) * canvas_w + (x + xx)] = logo.at(xx, yy);
    return rbpd::encode_png_gray(canvas);
}

// Well-known signatures used across tests.
inline rbpd::Signature sig_paypal() { return sig_from_seed(101); }
inline rbpd::Signature sig_paypal_homepage() { return sig_from_seed(102); }
inline rbpd::Signature sig_boa() { return sig_from_seed(103); }
inline rbpd::Signature sig_meta() { return sig_from_seed(104); }
inline rbpd::Signature sig_facebook() { return sig_from_seed(105); }
inline rbpd::Signature sig_alpha() { return sig_from_seed(201); }
inline rbpd::Signature sig_betapay() { return sig_from_seed(202); }
inline rbpd::Signature sig_tied() { return sig_from_seed(203); }

// Copies the golden KG snapshot into a temp dir and writes the logo images
// its logo_image refs point at. Returns the snapshot path.
inline std::filesystem::path setup_golden_kg(const TempDir& tmp) {
    namespace fs = std::filesystem;
    fs::path kg_dir = tmp / "kg";
    fs::create_directories(kg_dir / "logos");
    fs::copy_file(fixture_path("kg/golden.jsonl"), kg_dir / "golden.jsonl");
    rbpd::write_file(kg_dir / "logos/paypal.png", logo_png(sig_paypal()));
    rbpd::write_file(kg_dir / "logos/boa.png", logo_png(sig_boa()));
    rbpd::write_file(kg_dir / "logos/meta.png", logo_png(sig_meta()));
    rbpd::write_file(kg_dir / "logos/facebook.png", logo_png(sig_facebook()));
    return kg_dir / "golden.jsonl";
}

// Logo provider fixture for the golden build: one extra PayPal homepage
// logo, and image-search results where only the hit hosted on paypal.com
// survives the domain filter (and is a byte-duplicate of the homepage logo,
// exercising signature dedup).
inline std::filesystem::path setup_logo_fixture_dir(const TempDir& tmp) {
    namespace fs = std::filesystem;
    fs::path root = tmp / "logofx";
    fs::create_directories(root / "homepage/paypal.com");
    rbpd::write_file(root / "homepage/paypal.com/logo2.png", logo_png(sig_paypal_homepage()));
    fs::create_directories(root / "search/paypal_logo");
    rbpd::write_file(root / "search/paypal_logo/0.png", logo_png(sig_paypal_homepage()));
    rbpd::write_file(root / "search/paypal_logo/1.png", logo_png(sig_from_seed(999)));
    nlohmann::json meta;
    meta["results"] = {{{"image", "0.png"}, {"url", "https://www.paypal.com/assets/logo2.png"}},
                       {{"image", "1.png"}, {"url", "https://cdn.evil.example/pp.png"}}};
    rbpd::write_file(root / "search/paypal_logo/meta.json", meta.dump(2));
    return root;
}

// Category config matching the golden KG fixture: three narrow categories,
// one general, label-resolved exclusion, eta 80.
inline rbpd::CategoryConfig golden_categories() {
    rbpd::CategoryConfig config;
    config.narrow = {{"bank", "Q22687"}, {"payment system", "QPAY"}, {"social media", "QSOC"}};
    config.general = {{"business", "QBUS"}};
    config.excluded = {{"URL shortener", ""}};
    config.eta = 80;
    config.subclass_depth = 1;
    return config;
}

inline nlohmann::json golden_config_json() {
    nlohmann::json categories;
    categories["narrow"] = nlohmann::json::array(
        {nlohmann::json::array({"bank", "Q22687"}), nlohmann::json::array({"payment system", "QPAY"}),
         nlohmann::json::array({"social media", "QSOC"})});
    categories["general"] = nlohmann::json::array({nlohmann::json::array({"business", "QBUS"})});
    categories["excluded"] = nlohmann::json::array({nlohmann::json::array({"URL shortener"})});
    categories["eta"] = 80;
    categories["subclass_depth"] = 1;
    nlohmann::json doc;
    doc["categories"] = categories;
    return doc;
}

// In-memory BKB for detector-level tests.
//   QA  Alpha Bank  {alphabank.com}        logo sig_alpha
//   QB  Betapay     {betapay.com}          logo sig_betapay
//   QT1 Tieone      {t1.com}               logo sig_tied (shared)
//   QT2 Tietwo      {t2.com}               logo sig_tied (shared)
//   QD1 DBS Bank    {dbsbank.com}          alias "DBS"
//   QD2 DBS Foundation {dbsfoundation.org} alias "DBS"
//   QND Nodomain    {}                     (flagged: no legitimate domains)
inline rbpd::BrandKnowledgeBase make_test_bkb() {
    using namespace rbpd;
    BrandKnowledgeBase bkb;
    auto add = [&](const std::string& id, const std::string& name,
                   std::set<std::string> domains, std::set<std::string> aliases,
                   std::optional<Signature> sig) {
        Brand brand;
        brand.id = id;
        brand.name = name;
        brand.domains = std::move(domains);
        aliases.insert(name);
        brand.aliases = std::move(aliases);
        if (sig) {
            LogoAsset logo;
            logo.source = LogoSource::kg;
            logo.signature = *sig;
            logo.bytes = logo_png(*sig);
            brand.add_logo(std::move(logo));
        }
        bkb.add(std::move(brand));
    };
    add("QA", "Alpha Bank", {"alphabank.com"}, {"AlphaBank"}, sig_alpha());
    add("QB", "Betapay", {"betapay.com"}, {"BPAY"}, sig_betapay());
    add("QT1", "Tieone", {"t1.com"}, {}, sig_tied());
    add("QT2", "Tietwo", {"t2.com"}, {}, sig_tied());
    add("QD1", "DBS Bank", {"dbsbank.com"}, {"DBS"}, std::nullopt);
    add("QD2", "DBS Foundation", {"dbsfoundation.org"}, {"DBS"}, std::nullopt);
    add("QND", "Nodomain", {}, {}, std::nullopt);
    bkb.rebuild_indices();
    return bkb;
}

struct SampleSpec {
    std::string id;
    std::string url;
    std::string html;
    std::optional<rbpd::Signature> shot;         // plain logo-sized screenshot
    std::optional<std::string> canvas_shot_png;  // full screenshot bytes (overrides shot)
    std::optional<std::string> regions_json;
    std::optional<std::string> label;
};

inline void write_sample(const std::filesystem::path& corpus_dir, const SampleSpec& spec) {
    namespace fs = std::filesystem;
    fs::path dir = corpus_dir / spec.id;
    fs::create_directories(dir);
    nlohmann::json info;
    info["url"] = spec.url;
    if (spec.label) info["label"] = *spec.label;
    rbpd::write_file(dir / "info.json", info.dump(2));
    rbpd::write_file(dir / "html.txt", spec.html);
    if (spec.canvas_shot_png) rbpd::write_file(dir / "shot.png", *spec.canvas_shot_png);
    else if (spec.shot) rbpd::write_file(dir / "shot.png", logo_png(*spec.shot));
    if (spec.regions_json) rbpd::write_file(dir / "regions.json", *spec.regions_json);
}

inline void write_labels_csv(const std::filesystem::path& path, const std::vector<SampleSpec>& specs) {
    std::string csv = "sample_id,label\n";
    for (const auto& s : specs)
        if (s.label) csv += s.id + "," + *s.label + "\n";
    rbpd::write_file(path, csv);
}

// HTML builders understood by the oracle client.
inline std::string crp_page_html(const std::string& title_brand) {
    return "<html><head><title>" + title_brand +
           " Secure Login</title></head><body><form action=\"/login\"><input type=\"text\" "
           "name=\"user\"><input type=\"password\" name=\"pass\"><button>Sign in</button></form>"
           "</body></html>";
}

inline std::string plain_page_html(const std::string& text) {
    return "<html><head><title>welcome</title></head><body><p>" + text + "</p></body></html>";
}

// The 12-sample corpus covering every detector branch, written to disk.
// Expected verdicts live next to each sample in the specs' comments; the
// tests assert them explicitly.
inline std::vector<SampleSpec> kpd12_specs() {
    using R = SampleSpec;
    std::vector<R> specs;
    // benign, CRP gate: marketing page carrying a known logo
    specs.push_back({"s01", "https://randomblog.net/", plain_page_html("fresh garden produce and notes"),
                     sig_alpha(), {}, {}, "benign"});
    // benign, CRP gate: plain page, no logo
    specs.push_back({"s02", "https://plain.net/", plain_page_html("weather notes for the week"),
                     std::nullopt, {}, {}, "benign"});
    // benign via visual match on own domain
    specs.push_back({"s03", "https://alphabank.com/login", crp_page_html("Alpha"), sig_alpha(), {}, {},
                     "benign"});
    // phishing via visual mismatch
    specs.push_back({"s04", "https://alpha-secure-login.net/", crp_page_html("Alpha"), sig_alpha(), {},
                     {}, "phishing"});
    // phishing via textual channel only (no screenshot)
    specs.push_back({"s05", "https://betapay-verify.net/", crp_page_html("Betapay"), std::nullopt, {},
                     {}, "phishing"});
    // benign via textual match on own domain
    specs.push_back({"s06", "https://betapay.com/login", crp_page_html("Betapay"), std::nullopt, {}, {},
                     "benign"});
    // benign: CRP but no brand matched
    specs.push_back({"s07", "https://unknownsite.net/login", crp_page_html("Unknownsite"), std::nullopt,
                     {}, {}, "benign"});
    // benign: tied visual match, any-brand domain rule
    specs.push_back({"s08", "https://t2.com/login", crp_page_html("Tietwo"), sig_tied(), {}, {},
                     "benign"});
    // unscored: the test LLM client fails on this page
    specs.push_back({"s09", "https://llm-offline.example/login", crp_page_html("Alpha"), std::nullopt,
                     {}, {}, "phishing"});
    // phishing via shared-alias textual match (both brands mismatch)
    specs.push_back({"s10", "https://dbs-alerts.net/login", crp_page_html("DBS"), std::nullopt, {}, {},
                     "phishing"});
    // phishing via region-annotated logo on a larger screenshot
    SampleSpec s11{"s11", "https://alpha-verify2.net/", crp_page_html("Alpha"), std::nullopt,
                   canvas_png_with_logo(sig_alpha(), 64, 48, 12, 6), std::string("[[12,6,9,8]]"),
                   "phishing"};
    specs.push_back(s11);
    // benign (false negative by design): text-to-image page, empty HTML
    specs.push_back({"s12", "https://betapay-shot-only.net/", "", sig_betapay(), {}, {}, "phishing"});
    return specs;
}

inline std::filesystem::path write_kpd12_corpus(const TempDir& tmp) {
    auto corpus = tmp / "corpus12";
    for (const auto& spec : kpd12_specs()) write_sample(corpus, spec);
    return corpus;
}

// Ablation corpus: 4 logo-only phish, 4 text-only phish, 2 benign logo
// carriers without credential intent, 2 plain benign pages.
inline std::vector<SampleSpec> ablation_corpus_specs() {
    std::vector<SampleSpec> specs;
    std::string logo_only_html =
        "<html><body><form><input type='text'><input type='password'></form>"
        "<p>please sign in to continue</p></body></html>";  // no capitalized brand text
    for (int i = 0; i < 4; ++i)
        specs.push_back({"logo" + std::to_string(i), "https://stolen-" + std::to_string(i) + ".net/",
                         logo_only_html, sig_alpha(), {}, {}, "phishing"});
    for (int i = 0; i < 4; ++i)
        specs.push_back({"text" + std::to_string(i),
                         "https://betapay-fake-" + std::to_string(i) + ".net/",
                         crp_page_html("Betapay"), std::nullopt, {}, {}, "phishing"});
    for (int i = 0; i < 2; ++i)
        specs.push_back({"carrier" + std::to_string(i), "https://fanblog-" + std::to_string(i) + ".net/",
                         plain_page_html("writing about finance brands"), sig_alpha(), {}, {},
                         "benign"});
    for (int i = 0; i < 2; ++i)
        specs.push_back({"plain" + std::to_string(i), "https://quiet-" + std::to_string(i) + ".net/",
                         plain_page_html("nothing to see"), std::nullopt, {}, {}, "benign"});
    return specs;
}

}  // namespace testfx
