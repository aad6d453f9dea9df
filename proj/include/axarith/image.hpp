#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace axarith {

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // row-major, data.size() == width*height

    std::uint8_t& at(int x, int y) { return data[std::size_t(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[std::size_t(y) * width + x]; }

    static GrayImage filled(int w, int h, std::uint8_t value);

    bool operator==(const GrayImage&) const = default;
};

// Reads P2 (ASCII) or P5 (binary) PGM with maxval <= 255. Header comments are
// handled; sample values are kept as stored (no maxval rescaling). Malformed
// input raises a parse error carrying the byte offset.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm(const std::string& path);

// Writes binary P5 with maxval 255.
void write_pgm(const GrayImage& img, std::ostream& out);
void write_pgm(const GrayImage& img, const std::string& path);

}  // namespace axarith
