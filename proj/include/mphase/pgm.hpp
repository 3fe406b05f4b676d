#pragma once

#include <string>
#include <vector>

#include "mphase/grid.hpp"

namespace mphase {

/// Grayscale image with pixels in [0,1], row-major.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;
};

/// Reads PGM P2 (ASCII) or P5 (binary), maxval up to 65535; pixels are
/// scaled by 1/maxval. Throws ParseError on malformed input and
/// UnsupportedFormat on other magic numbers.
ImageBuffer load_pgm(const std::string& path);

/// Writes binary P5 with round-half-up quantization; 16-bit big-endian when
/// maxval exceeds 255. Pixels must lie in [0,1] up to 1e-6.
void save_pgm(const ImageBuffer& img, const std::string& path, int maxval = 255);

ImageBuffer to_image(const Grid& g, const GridFunction& u);
GridFunction to_grid_function(const ImageBuffer& img);

} // namespace mphase
