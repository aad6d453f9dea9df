#include "axarith/image.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace axarith {

GrayImage GrayImage::filled(int w, int h, std::uint8_t value) {
    if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be positive");
    GrayImage img;
    img.width = w;
    img.height = h;
    img.data.assign(std::size_t(w) * h, value);
    return img;
}

namespace {

// Byte-counting wrapper so every parse error can name the offending offset.
class PgmReader {
  public:
    explicit PgmReader(std::istream& in) : in_(in) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("pgm parse error at byte " + std::to_string(offset_) + ": " +
                                 what);
    }

    int get() {
        const int c = in_.get();
        if (c != std::char_traits<char>::eof()) ++offset_;
        return c;
    }

    int peek() { return in_.peek(); }

    // whitespace and '#'-to-end-of-line comments between tokens
    void skip_separators() {
        while (true) {
            const int c = peek();
            if (c == '#') {
                while (true) {
                    const int d = get();
                    if (d == std::char_traits<char>::eof() || d == '\n') break;
                }
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
                       c == '\f') {
                get();
            } else {
                return;
            }
        }
    }

    int read_uint(const char* what, int max) {
        skip_separators();
        int c = peek();
        if (c == std::char_traits<char>::eof()) fail(std::string("missing ") + what);
        if (c < '0' || c > '9')
            fail(std::string("expected a digit for ") + what);
        long value = 0;
        while (true) {
            c = peek();
            if (c < '0' || c > '9') break;
            get();
            value = value * 10 + (c - '0');
            if (value > max)
                fail(std::string(what) + " exceeds " + std::to_string(max));
        }
        return static_cast<int>(value);
    }

  private:
    std::istream& in_;
    std::size_t offset_ = 0;
};

}  // namespace

GrayImage read_pgm(std::istream& in) {
    PgmReader r(in);
    const int m0 = r.get();
    const int m1 = r.get();
    if (m0 != 'P' || (m1 != '2' && m1 != '5'))
        r.fail("not a P2/P5 pgm file");
    const bool binary = m1 == '5';

    GrayImage img;
    img.width = r.read_uint("width", 1 << 20);
    img.height = r.read_uint("height", 1 << 20);
    if (img.width < 1 || img.height < 1) r.fail("image dimensions must be positive");
    const int maxval = r.read_uint("maxval", 65535);
    if (maxval < 1 || maxval > 255) r.fail("maxval must be 1..255");

    const std::size_t count = std::size_t(img.width) * img.height;
    img.data.reserve(count);
    if (binary) {
        const int sep = r.get();
        if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n')
            r.fail("expected single whitespace after maxval");
        for (std::size_t i = 0; i < count; ++i) {
            const int c = r.get();
            if (c == std::char_traits<char>::eof()) r.fail("unexpected end of pixel data");
            if (c > maxval) r.fail("sample exceeds maxval");
            img.data.push_back(static_cast<std::uint8_t>(c));
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const int v = r.read_uint("sample", 255);
            if (v > maxval) r.fail("sample exceeds maxval");
            img.data.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return img;
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_pgm(in);
}

void write_pgm(const GrayImage& img, std::ostream& out) {
    if (img.width < 1 || img.height < 1 ||
        img.data.size() != std::size_t(img.width) * img.height)
        throw std::invalid_argument("image dimensions do not match its data");
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    if (!out) throw std::runtime_error("pgm write failed");
}

void write_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_pgm(img, out);
}

}  // namespace axarith
