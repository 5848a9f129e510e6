#pragma once
// Difference-hash logo signatures. The signature of an image is a bit
// vector of horizontal brightness gradients on a (side+1) x side grayscale
// reduction; default side 8 gives 64 bits. Deterministic in the image bytes.

#include <bit>
#include <cstdint>
#include <tuple>
#include <vector>

#include "rbpd/image.hpp"
#include "rbpd/util.hpp"

namespace rbpd {

struct Signature {
    int bits = 0;
    std::vector<uint8_t> bytes;  // bit i = byte i/8, MSB first

    bool operator==(const Signature&) const = default;
    bool operator<(const Signature& o) const {
        return std::tie(bits, bytes) < std::tie(o.bits, o.bytes);
    }

    bool bit(int i) const { return (bytes[i / 8] >> (7 - i % 8)) & 1; }
    void set_bit(int i, bool v) {
        if (v)
            bytes[i / 8] |= static_cast<uint8_t>(1u << (7 - i % 8));
        else
            bytes[i / 8] &= static_cast<uint8_t>(~(1u << (7 - i % 8)));
    }
    void flip_bit(int i) { bytes[i / 8] ^= static_cast<uint8_t>(1u << (7 - i % 8)); }

    std::string hex() const { return to_hex(bytes); }
    static Signature from_hex(std::string_view h, int bits) {
        Signature s;
        s.bits = bits;
        s.bytes = rbpd::from_hex(h);
        if (static_cast<int>(s.bytes.size()) * 8 < bits) throw std::invalid_argument("signature too short");
        return s;
    }
};

inline int signature_side_for_bits(int bits) {
    int side = 0;
    while (side * side < bits) ++side;
    if (side * side != bits) throw std::invalid_argument("hash bits must be a perfect square");
    return side;
}

inline Signature dhash(const GrayImage& img, int side = 8) {
    GrayImage small = resize_gray(img, side + 1, side);
    Signature sig;
    sig.bits = side * side;
    sig.bytes.assign((sig.bits + 7) / 8, 0);
    int i = 0;
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x, ++i)
            sig.set_bit(i, small.at(x + 1, y) > small.at(x, y));
    return sig;
}

inline Signature dhash_bytes(std::string_view image_bytes, int side = 8) {
    return dhash(decode_image_gray(image_bytes), side);
}

inline int hamming_distance(const Signature& a, const Signature& b) {
    if (a.bits != b.bits) throw std::invalid_argument("signature size mismatch");
    int d = 0;
    for (size_t i = 0; i < a.bytes.size(); ++i)
        d += std::popcount(static_cast<unsigned>(a.bytes[i] ^ b.bytes[i]));
    return d;
}

// Normalized Hamming similarity in [0,1]; 1.0 for identical signatures.
inline double hash_similarity(const Signature& a, const Signature& b) {
    return 1.0 - static_cast<double>(hamming_distance(a, b)) / a.bits;
}

// Builds a (side+1) x side image whose dhash equals the given signature.
// Used to construct fixture logos with known signatures.
inline GrayImage image_for_signature(const Signature& sig) {
    int side = signature_side_for_bits(sig.bits);
    GrayImage img;
    img.width = side + 1;
    img.height = side;
    img.pixels.resize(static_cast<size_t>(side + 1) * side);
    for (int y = 0; y < side; ++y) {
        int v = 128;
        img.pixels[static_cast<size_t>(y) * (side + 1)] = static_cast<uint8_t>(v);
        for (int x = 0; x < side; ++x) {
            v += sig.bit(y * side + x) ? 10 : -10;
            img.pixels[static_cast<size_t>(y) * (side + 1) + x + 1] = static_cast<uint8_t>(v);
        }
    }
    return img;
}

}  // namespace rbpd
