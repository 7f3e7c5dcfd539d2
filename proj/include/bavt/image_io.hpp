#pragma once

#include <string>

#include "bavt/grid.hpp"

namespace bavt {

// 8-bit grayscale PNG / binary PGM (P5) in, [0,1] grids out. Color inputs
// are rejected. Masks are 8-bit PNGs holding exactly {0, 255}.

Grid read_image(const std::string& path);              // dispatch on extension
Grid read_image_png(const std::string& path);
Grid read_image_pgm(const std::string& path);
void write_image_png(const std::string& path, const Grid& img);   // clamps to [0,1]
void write_image_pgm(const std::string& path, const Grid& img);

Mask read_mask_png(const std::string& path);
void write_mask_png(const std::string& path, const Mask& mask);

// 8-bit RGB PNG, three [0,1] channel grids of equal shape.
void write_rgb_png(const std::string& path, const Grid& r, const Grid& g,
                   const Grid& b);

// Portable float-grid dump: "bavt-fgrid-1\n<h> <w>\n" followed by h*w
// row-major IEEE 754 doubles, little-endian.
void write_float_grid(const std::string& path, const Grid& g);
Grid read_float_grid(const std::string& path);

}  // namespace bavt
