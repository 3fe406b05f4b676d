#include "mphase/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace mphase {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok;
}

int parse_int(std::istream& in, const char* what) {
    const std::string tok = next_token(in);
    if (tok.empty()) throw ParseError(std::string("pgm: missing ") + what);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("pgm: bad ") + what + " '" + tok + "'");
    }
}

} // namespace

ImageBuffer load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    const std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5") {
        if (magic.size() == 2 && magic[0] == 'P')
            throw UnsupportedFormat("pgm: unsupported magic '" + magic + "' in " + path);
        throw ParseError("pgm: not a PGM file: " + path);
    }

    ImageBuffer img;
    img.width = parse_int(in, "width");
    img.height = parse_int(in, "height");
    const int maxval = parse_int(in, "maxval");
    if (img.width <= 0 || img.height <= 0) throw ParseError("pgm: non-positive dimensions");
    if (maxval <= 0 || maxval > 65535) throw ParseError("pgm: maxval out of range");

    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(n);
    if (magic == "P2") {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = parse_int(in, "pixel");
            if (v < 0 || v > maxval)
                throw ParseError("pgm: pixel " + std::to_string(v) + " exceeds maxval");
            img.pixels[i] = static_cast<double>(v) / maxval;
        }
    } else {
        // P5: a single whitespace byte separates the header from the raster.
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(n * bytes);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            throw ParseError("pgm: truncated raster in " + path);
        for (std::size_t i = 0; i < n; ++i) {
            const int v = bytes == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
            if (v > maxval) throw ParseError("pgm: pixel exceeds maxval");
            img.pixels[i] = static_cast<double>(v) / maxval;
        }
    }
    return img;
}

void save_pgm(const ImageBuffer& img, const std::string& path, int maxval) {
    if (maxval <= 0 || maxval > 65535) throw IoError("pgm: maxval out of range");
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
        throw IoError("pgm: pixel count does not match dimensions");
    for (double v : img.pixels)
        if (!(v >= -1e-6) || !(v <= 1.0 + 1e-6))
            throw DomainError("pgm: pixel " + std::to_string(v) + " outside [0,1]");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw;
    raw.reserve(img.pixels.size() * bytes);
    for (double v : img.pixels) {
        const double clamped = std::min(std::max(v, 0.0), 1.0);
        const int q = static_cast<int>(std::floor(clamped * maxval + 0.5));
        if (bytes == 2) raw.push_back(static_cast<unsigned char>((q >> 8) & 0xff));
        raw.push_back(static_cast<unsigned char>(q & 0xff));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write failed for " + path);
}

ImageBuffer to_image(const Grid& g, const GridFunction& u) {
    ImageBuffer img;
    img.width = g.nx;
    img.height = g.ny;
    img.pixels = u;
    return img;
}

GridFunction to_grid_function(const ImageBuffer& img) { return img.pixels; }

} // namespace mphase
