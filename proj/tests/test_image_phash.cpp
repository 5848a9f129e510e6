#include <catch_amalgamated.hpp>

#include <random>

#include "rbpd/image.hpp"
#include "rbpd/phash.hpp"

using namespace rbpd;

namespace {

GrayImage gradient_image(int w, int h) {
    GrayImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.pixels[static_cast<size_t>(y) * w + x] = static_cast<uint8_t>((x * 7 + y * 13) % 256);
    return img;
}

}  // namespace

TEST_CASE("png encode/decode round trip") {
    GrayImage img = gradient_image(23, 11);
    std::string png = encode_png_gray(img);
    REQUIRE(looks_like_png(png));
    GrayImage back = decode_png_gray(png);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.pixels == img.pixels);
}

TEST_CASE("png encoding is deterministic") {
    GrayImage img = gradient_image(17, 9);
    CHECK(encode_png_gray(img) == encode_png_gray(img));
}

TEST_CASE("pnm decode") {
    std::string p2 = "P2\n# comment\n3 2\n255\n0 128 255\n10 20 30\n";
    GrayImage img = decode_pnm_gray(p2);
    REQUIRE(img.width == 3);
    REQUIRE(img.height == 2);
    CHECK(img.at(1, 0) == 128);
    CHECK(img.at(2, 1) == 30);

    std::string p5 = "P5\n2 2\n255\n";
    p5 += std::string("\x01\x02\x03\x04", 4);
    GrayImage bin = decode_pnm_gray(p5);
    CHECK(bin.at(0, 0) == 1);
    CHECK(bin.at(1, 1) == 4);
}

TEST_CASE("decode rejects garbage") {
    CHECK_THROWS_AS(decode_image_gray("not an image"), ImageError);
    CHECK_THROWS_AS(decode_png_gray("\x89PNG\r\n\x1a\ntruncated"), ImageError);
}

TEST_CASE("resize identity and averaging") {
    GrayImage img = gradient_image(9, 8);
    GrayImage same = resize_gray(img, 9, 8);
    CHECK(same.pixels == img.pixels);

    GrayImage big = gradient_image(36, 32);
    GrayImage small = resize_gray(big, 9, 8);
    CHECK(small.width == 9);
    CHECK(small.height == 8);
}

TEST_CASE("dhash identity and signature round trip") {
    GrayImage img = gradient_image(64, 64);
    Signature sig = dhash(img);
    CHECK(sig.bits == 64);
    CHECK(sig.bytes.size() == 8);
    CHECK(dhash(img) == sig);
    CHECK(Signature::from_hex(sig.hex(), 64) == sig);
    CHECK(hash_similarity(sig, sig) == 1.0);
}

TEST_CASE("image_for_signature embeds an exact hash") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Signature want;
        want.bits = 64;
        want.bytes.resize(8);
        for (auto& b : want.bytes) b = static_cast<uint8_t>(rng());
        GrayImage img = image_for_signature(want);
        CHECK(dhash(img) == want);
        // survives a PNG round trip
        CHECK(dhash(decode_png_gray(encode_png_gray(img))) == want);
    }
}

TEST_CASE("hamming distance counts flipped bits") {
    Signature a;
    a.bits = 64;
    a.bytes.assign(8, 0);
    Signature b = a;
    b.flip_bit(0);
    b.flip_bit(13);
    b.flip_bit(63);
    CHECK(hamming_distance(a, b) == 3);
    CHECK(hash_similarity(a, b) == 1.0 - 3.0 / 64.0);
    CHECK(hash_similarity(a, b) == hash_similarity(b, a));
}

TEST_CASE("crop bounds are clipped") {
    GrayImage img = gradient_image(10, 10);
    GrayImage c = crop_gray(img, 8, 8, 10, 10);
    CHECK(c.width == 2);
    CHECK(c.height == 2);
    CHECK_THROWS_AS(crop_gray(img, 20, 20, 5, 5), ImageError);
}
