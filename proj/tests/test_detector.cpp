#include <catch_amalgamated.hpp>

#include "rbpd/detector.hpp"
#include "rbpd/eval.hpp"
#include "support/fixtures.hpp"
#include "support/flaky_oracle.hpp"

using namespace rbpd;
using testfx::FlakyOracle;

namespace {

struct DetectorHarness {
    testfx::TempDir tmp;
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    FlakyOracle llm;
    RuleCrpClassifier crp;
    KpdComponents components;

    DetectorHarness() {
        components.llm = &llm;
        components.crp = &crp;
    }

    CorpusSample sample(const testfx::SampleSpec& spec) {
        testfx::write_sample(tmp / "c", spec);
        auto loaded = load_corpus(tmp / "c");
        for (auto& s : loaded)
            if (s.id == spec.id) return s;
        FAIL("sample not loaded");
        return {};
    }
};

}  // namespace

TEST_CASE("domain_check follows the any-brand benign rule") {
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    BrandMatchSet matches;
    matches.channel = BrandChannel::visual;
    matches.brands = {"QA"};

    Verdict benign = domain_check(bkb, "alphabank.com", matches);
    CHECK(benign.label == VerdictLabel::benign);
    CHECK(benign.stage == VerdictStage::domain_match);

    Verdict phishing = domain_check(bkb, "evil.com", matches);
    CHECK(phishing.label == VerdictLabel::phishing);
    CHECK(phishing.stage == VerdictStage::domain_mismatch);
    REQUIRE_FALSE(phishing.matched_brands.empty());

    matches.brands = {"QA", "QB"};
    Verdict any = domain_check(bkb, "betapay.com", matches);
    CHECK(any.label == VerdictLabel::benign);  // second brand matches

    // brand with no legitimate domains can never produce a match
    matches.brands = {"QND"};
    CHECK(domain_check(bkb, "anything.com", matches).label == VerdictLabel::phishing);
}

TEST_CASE("the 12-branch corpus yields the expected verdict and stage per sample") {
    DetectorHarness h;
    auto corpus = testfx::write_kpd12_corpus(h.tmp);
    std::vector<CorpusSample> samples = load_corpus(corpus);
    REQUIRE(samples.size() == 12);

    struct Expect {
        VerdictLabel label;
        VerdictStage stage;
    };
    std::map<std::string, Expect> expected = {
        {"s01", {VerdictLabel::benign, VerdictStage::crp_gate}},
        {"s02", {VerdictLabel::benign, VerdictStage::crp_gate}},
        {"s03", {VerdictLabel::benign, VerdictStage::domain_match}},
        {"s04", {VerdictLabel::phishing, VerdictStage::domain_mismatch}},
        {"s05", {VerdictLabel::phishing, VerdictStage::domain_mismatch}},
        {"s06", {VerdictLabel::benign, VerdictStage::domain_match}},
        {"s07", {VerdictLabel::benign, VerdictStage::no_brand}},
        {"s08", {VerdictLabel::benign, VerdictStage::domain_match}},
        {"s09", {VerdictLabel::unscored, VerdictStage::error}},
        {"s10", {VerdictLabel::phishing, VerdictStage::domain_mismatch}},
        {"s11", {VerdictLabel::phishing, VerdictStage::domain_mismatch}},
        {"s12", {VerdictLabel::benign, VerdictStage::crp_gate}},
    };
    for (const auto& sample : samples) {
        Verdict verdict = kpd_detect(h.bkb, sample, h.components);
        CAPTURE(sample.id, verdict.reason);
        CHECK(verdict.label == expected.at(sample.id).label);
        CHECK(verdict.stage == expected.at(sample.id).stage);
    }
}

TEST_CASE("visual channels and stage bookkeeping on the branch corpus") {
    DetectorHarness h;
    auto corpus = testfx::write_kpd12_corpus(h.tmp);
    for (const auto& sample : load_corpus(corpus)) {
        Verdict verdict = kpd_detect(h.bkb, sample, h.components);
        // soundness: phishing implies a matched brand whose domains miss the page domain
        if (verdict.label == VerdictLabel::phishing) {
            CHECK(verdict.stage == VerdictStage::domain_mismatch);
            REQUIRE_FALSE(verdict.matched_brands.empty());
            for (const auto& m : verdict.matched_brands)
                CHECK(h.bkb.find(m.id)->domains.count(sample.page.domain) == 0);
        }
        // TBE suppression: a visual match means no textual channel in the verdict
        bool has_visual = false, has_textual = false;
        for (const auto& m : verdict.matched_brands) {
            has_visual |= m.channel == BrandChannel::visual;
            has_textual |= m.channel == BrandChannel::textual;
        }
        CHECK_FALSE((has_visual && has_textual));
    }
}

TEST_CASE("non-CRP pages never reach brand extraction") {
    DetectorHarness h;
    auto sample = h.sample({"gate", "https://randomblog.net/", testfx::plain_page_html("quiet"),
                            testfx::sig_alpha(), {}, {}, {}});
    Verdict verdict = kpd_detect(h.bkb, sample, h.components);
    CHECK(verdict.label == VerdictLabel::benign);
    CHECK(verdict.stage == VerdictStage::crp_gate);
    CHECK(verdict.matched_brands.empty());  // the logo was never consulted
}

TEST_CASE("textual channel activates only when the visual one is empty") {
    DetectorHarness h;
    // logo of QA plus text naming Betapay: visual wins, textual suppressed
    auto sample = h.sample({"both", "https://stolen.net/", testfx::crp_page_html("Betapay"),
                            testfx::sig_alpha(), {}, {}, {}});
    Verdict verdict = kpd_detect(h.bkb, sample, h.components);
    REQUIRE(verdict.matched_brands.size() == 1);
    CHECK(verdict.matched_brands[0].id == "QA");
    CHECK(verdict.matched_brands[0].channel == BrandChannel::visual);
}

TEST_CASE("rbpd_detect is the visual-only baseline") {
    DetectorHarness h;
    // logo-less phishing page: documented false negative of the image-only mode
    auto logoless = h.sample({"ll", "https://betapay-verify.net/", testfx::crp_page_html("Betapay"),
                              std::nullopt, {}, {}, {}});
    CHECK(kpd_detect(h.bkb, logoless, h.components).label == VerdictLabel::phishing);
    Verdict baseline = rbpd_detect(h.bkb, logoless);
    CHECK(baseline.label == VerdictLabel::benign);
    CHECK(baseline.stage == VerdictStage::no_brand);

    // logo match with domain mismatch is phishing in both modes
    auto visual = h.sample({"vis", "https://alpha-fake.net/", testfx::crp_page_html("Alpha"),
                            testfx::sig_alpha(), {}, {}, {}});
    CHECK(rbpd_detect(h.bkb, visual).label == VerdictLabel::phishing);
    CHECK(kpd_detect(h.bkb, visual, h.components).label == VerdictLabel::phishing);

    // agreement whenever the page is CRP and the logo fires
    auto benign_own = h.sample({"own", "https://alphabank.com/login", testfx::crp_page_html("Alpha"),
                                testfx::sig_alpha(), {}, {}, {}});
    CHECK(rbpd_detect(h.bkb, benign_own).label == kpd_detect(h.bkb, benign_own, h.components).label);
}

TEST_CASE("adding the page domain to a matched brand flips phishing to benign") {
    DetectorHarness h;
    auto sample = h.sample({"flip", "https://alpha-fake2.net/", testfx::crp_page_html("Alpha"),
                            testfx::sig_alpha(), {}, {}, {}});
    CHECK(kpd_detect(h.bkb, sample, h.components).label == VerdictLabel::phishing);
    BrandKnowledgeBase augmented = h.bkb;
    augmented.brands["QA"].domains.insert("alpha-fake2.net");
    augmented.rebuild_indices();
    CHECK(kpd_detect(augmented, sample, h.components).label == VerdictLabel::benign);
}

TEST_CASE("ablations turn components into pass-throughs") {
    DetectorHarness h;
    auto corpus = testfx::write_kpd12_corpus(h.tmp);
    std::vector<CorpusSample> samples = load_corpus(corpus);

    KpdComponents no_crp = h.components;
    ablate(no_crp, "crp");
    for (const auto& sample : samples) {
        Verdict verdict = kpd_detect(h.bkb, sample, no_crp);
        CHECK(verdict.stage != VerdictStage::crp_gate);  // every sample reaches extraction
    }

    KpdComponents no_channels = h.components;
    ablate(no_channels, "lbe");
    ablate(no_channels, "tbe");
    for (const auto& sample : samples) {
        Verdict verdict = kpd_detect(h.bkb, sample, no_channels);
        CHECK(verdict.label != VerdictLabel::phishing);  // no brand channel, no phishing
    }

    CHECK_THROWS_AS(ablate(no_crp, "nonsense"), std::invalid_argument);
}
