#include <catch_amalgamated.hpp>

#include <random>

#include "rbpd/extractors.hpp"
#include "support/fixtures.hpp"

using namespace rbpd;

TEST_CASE("byte-identical logo matches with similarity 1.0") {
    testfx::TempDir tmp;
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    auto shot = tmp / "shot.png";
    write_file(shot, testfx::logo_png(testfx::sig_alpha()));
    BrandMatchSet match = logo_brand(bkb, shot);
    REQUIRE(match.brands == std::set<EntityId>{"QA"});
    CHECK(match.similarity.at("QA") == 1.0);
}

TEST_CASE("no screenshot and unreadable screenshot yield empty sets") {
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    CHECK(logo_brand(bkb, std::nullopt).empty());
    testfx::TempDir tmp;
    write_file(tmp / "bad.png", "this is not an image");
    CHECK(logo_brand(bkb, tmp / "bad.png").empty());
}

TEST_CASE("tied signatures return all tied brands") {
    testfx::TempDir tmp;
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    auto shot = tmp / "tied.png";
    write_file(shot, testfx::logo_png(testfx::sig_tied()));
    BrandMatchSet match = logo_brand(bkb, shot);
    CHECK(match.brands == std::set<EntityId>{"QT1", "QT2"});
}

TEST_CASE("region annotations crop before hashing") {
    testfx::TempDir tmp;
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    auto shot = tmp / "canvas.png";
    write_file(shot, testfx::canvas_png_with_logo(testfx::sig_betapay(), 64, 48, 20, 10));
    // whole-image hash does not match; the annotated region does
    CHECK(logo_brand(bkb, shot).empty());
    BrandMatchSet match = logo_brand(bkb, shot, {{20, 10, 9, 8}});
    CHECK(match.brands == std::set<EntityId>{"QB"});
}

TEST_CASE("perturbed queries match the exhaustive Hamming-scan oracle") {
    // 5-logo BKB with well-separated signatures
    BrandKnowledgeBase bkb;
    std::vector<std::pair<EntityId, Signature>> logos;
    for (int k = 0; k < 5; ++k) {
        EntityId id = "QL" + std::to_string(k);
        Signature sig = testfx::sig_from_seed(1000 + k);
        logos.emplace_back(id, sig);
        Brand brand;
        brand.id = id;
        brand.name = id;
        brand.aliases = {id};
        LogoAsset logo;
        logo.source = LogoSource::kg;
        logo.signature = sig;
        brand.add_logo(std::move(logo));
        bkb.add(std::move(brand));
    }
    bkb.rebuild_indices();

    const double threshold = 0.90;
    std::mt19937_64 rng(77);
    testfx::TempDir tmp;
    int matched_count = 0;
    for (int q = 0; q < 20; ++q) {
        int flips = q % 9;  // 0..8 flipped bits of 64
        auto [base_id, base_sig] = logos[q % logos.size()];
        Signature query = base_sig;
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < flips) chosen.insert(static_cast<int>(rng() % 64));
        for (int bit : chosen) query.flip_bit(bit);

        auto shot = tmp / ("q" + std::to_string(q) + ".png");
        write_file(shot, testfx::logo_png(query));
        BrandMatchSet got = logo_brand(bkb, shot, {}, threshold);

        // exhaustive scan oracle, written against signatures directly
        int best_distance = 65;
        for (const auto& [id, sig] : logos)
            best_distance = std::min(best_distance, hamming_distance(query, sig));
        std::set<EntityId> expected;
        if (1.0 - best_distance / 64.0 >= threshold)
            for (const auto& [id, sig] : logos)
                if (hamming_distance(query, sig) == best_distance) expected.insert(id);

        CAPTURE(q, flips, base_id);
        CHECK(got.brands == expected);
        if (!expected.empty()) ++matched_count;
    }
    CHECK(matched_count > 0);
}

TEST_CASE("threshold boundary is exact at 0.90") {
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    testfx::TempDir tmp;
    // 6 flips: 58/64 = 0.90625 >= 0.90 -> match; 7 flips: 57/64 = 0.890625 -> no match
    for (int flips : {6, 7}) {
        Signature query = testfx::sig_alpha();
        for (int bit = 0; bit < flips; ++bit) query.flip_bit(bit * 9);
        auto shot = tmp / ("b" + std::to_string(flips) + ".png");
        write_file(shot, testfx::logo_png(query));
        BrandMatchSet match = logo_brand(bkb, shot, {}, 0.90);
        if (flips == 6) CHECK(match.brands == std::set<EntityId>{"QA"});
        else CHECK(match.empty());
    }
}

TEST_CASE("text brand exact alias matching") {
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    WebpageSummary summary;
    summary.brand = "Betapay";
    BrandMatchSet match = text_brand(bkb, summary);
    CHECK(match.brands == std::set<EntityId>{"QB"});
    CHECK(match.matched_alias.value() == "betapay");

    summary.brand = "  BPAY  ";
    CHECK(text_brand(bkb, summary).brands == std::set<EntityId>{"QB"});

    summary.brand = std::nullopt;
    CHECK(text_brand(bkb, summary).empty());

    summary.brand = "Unknown Brand";
    CHECK(text_brand(bkb, summary).empty());
}

TEST_CASE("shared alias returns every brand that carries it") {
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    WebpageSummary summary;
    summary.brand = "DBS";
    BrandMatchSet match = text_brand(bkb, summary);
    CHECK(match.brands == std::set<EntityId>{"QD1", "QD2"});
}

TEST_CASE("text matches stay within the alias index") {
    BrandKnowledgeBase bkb = testfx::make_test_bkb();
    for (const char* guess : {"Alpha Bank", "betapay", "DBS", "dbs bank", "nonesuch"}) {
        WebpageSummary summary;
        summary.brand = guess;
        BrandMatchSet match = text_brand(bkb, summary);
        for (const auto& id : match.brands) {
            const Brand* brand = bkb.find(id);
            REQUIRE(brand != nullptr);
            bool alias_present = false;
            for (const auto& alias : brand->aliases)
                alias_present |= normalize_alias(alias) == match.matched_alias.value();
            CHECK(alias_present);
        }
    }
}
