#include "quatern/image_io.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include "quatern/errors.hpp"

namespace quatern {

namespace {

// Reads the P6/P5 header: magic, whitespace/comments, width, height, maxval.
struct PnmHeader {
    std::string magic;
    long width = 0, height = 0, maxval = 0;
};

int next_header_token(std::istream& is, std::string& tok) {
    tok.clear();
    int ch;
    while ((ch = is.get()) != EOF) {
        if (ch == '#') {
            while ((ch = is.get()) != EOF && ch != '\n') {}
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return 0;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok.empty() ? -1 : 0;
}

PnmHeader read_pnm_header(std::istream& is, const std::string& expect_magic,
                          const std::string& path) {
    PnmHeader h;
    std::string tok;
    if (next_header_token(is, tok) != 0) throw ParseError(path + ": missing magic", 1);
    h.magic = tok;
    if (h.magic != expect_magic)
        throw ParseError(path + ": expected " + expect_magic + ", got " + h.magic, 1);
    long* fields[3] = {&h.width, &h.height, &h.maxval};
    for (long* f : fields) {
        if (next_header_token(is, tok) != 0) throw ParseError(path + ": truncated header", 1);
        try {
            *f = std::stol(tok);
        } catch (...) {
            throw ParseError(path + ": non-numeric header field '" + tok + "'", 1);
        }
    }
    if (h.width <= 0 || h.height <= 0) throw ParseError(path + ": bad dimensions", 1);
    if (h.maxval != 255) throw ParseError(path + ": only maxval 255 supported", 1);
    return h;
}

unsigned char to_byte(double v) {
    const double scaled = std::lround(std::min(std::max(v, 0.0), 1.0) * 255.0);
    return static_cast<unsigned char>(scaled);
}

}  // namespace

QuatImage read_ppm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    const PnmHeader h = read_pnm_header(is, "P6", path);

    std::vector<unsigned char> raw(3 * h.width * h.height);
    is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (is.gcount() != static_cast<std::streamsize>(raw.size()))
        throw ParseError(path + ": truncated pixel data", 2);

    Eigen::MatrixXd r(h.height, h.width), g(h.height, h.width), b(h.height, h.width);
    std::size_t i = 0;
    for (long row = 0; row < h.height; ++row)
        for (long col = 0; col < h.width; ++col) {
            r(row, col) = raw[i++] / 255.0;
            g(row, col) = raw[i++] / 255.0;
            b(row, col) = raw[i++] / 255.0;
        }
    return QuatImage::from_channels(r, g, b);
}

void write_ppm(const std::string& path, const QuatImage& img) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "P6\n" << img.width << " " << img.height << "\n255\n";
    for (long row = 0; row < img.height; ++row)
        for (long col = 0; col < img.width; ++col) {
            const Quat& q = img.pixels(row, col);
            const unsigned char rgb[3] = {to_byte(q.x), to_byte(q.y), to_byte(q.z)};
            os.write(reinterpret_cast<const char*>(rgb), 3);
        }
}

Eigen::MatrixXd read_pgm_mask(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    const PnmHeader h = read_pnm_header(is, "P5", path);

    std::vector<unsigned char> raw(h.width * h.height);
    is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (is.gcount() != static_cast<std::streamsize>(raw.size()))
        throw ParseError(path + ": truncated pixel data", 2);

    Eigen::MatrixXd mask(h.height, h.width);
    std::size_t i = 0;
    for (long row = 0; row < h.height; ++row)
        for (long col = 0; col < h.width; ++col) mask(row, col) = raw[i++] != 0 ? 1.0 : 0.0;
    return mask;
}

void write_pgm_mask(const std::string& path, const Eigen::MatrixXd& mask) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "P5\n" << mask.cols() << " " << mask.rows() << "\n255\n";
    for (long row = 0; row < mask.rows(); ++row)
        for (long col = 0; col < mask.cols(); ++col) {
            const unsigned char v = mask(row, col) != 0.0 ? 255 : 0;
            os.write(reinterpret_cast<const char*>(&v), 1);
        }
}

}  // namespace quatern
