#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bavt/grid.hpp"

namespace bavt {

// Augmentation pipeline configuration. Geometric transforms act on image and
// mask together; photometric transforms act on the image only.
struct AugmentConfig {
    double flip_prob = 0.5;             // per axis
    double rotation_range_deg = 15.0;   // symmetric bound
    double gamma_lo = 0.8;
    double gamma_hi = 1.2;
    double elastic_prob = 0.3;
    double elastic_alpha = 34.0;        // displacement magnitude, pixels
    double elastic_sigma = 4.0;         // smoothing scale, pixels
    double clahe_clip = 2.0;            // histogram-count multiplier; <=0 or inf disables clipping
    int clahe_tiles = 8;                // tile grid dimension
    double norm_mean = 0.0;
    double norm_std = 1.0;

    // Default displacement scale follows the 512-pixel reference values.
    void scale_elastic_for_size(int size);
    void validate() const;              // throws std::invalid_argument
};

// (input - mean) / std. Output is exempt from the [0,1] invariant.
Grid normalize(const Grid& image, double mean, double std_dev);

// Contrast-limited adaptive histogram equalization. 256 bins per tile, clip
// limit = clip * tile_pixels / 256 (non-finite or non-positive clip disables
// clipping), clipped excess redistributed uniformly, per-tile equalization
// maps blended bilinearly between tile centers.
Grid clahe(const Grid& image, double clip, int tiles);

// Post-clip per-tile histograms (row-major tile order), for bound recounts.
std::vector<std::array<double, 256>> clahe_tile_histograms(const Grid& image,
                                                           double clip, int tiles);

Grid gamma_correct(const Grid& image, double gamma);

// Rotation about the grid center; bilinear for image, nearest for mask,
// zero fill out of bounds. Positive angles rotate row->column.
std::pair<Grid, Mask> rotate_pair(const Grid& image, const Mask& mask,
                                  double angle_deg);

std::pair<Grid, Mask> flip_pair(const Grid& image, const Mask& mask,
                                bool horizontal, bool vertical);

// Displacement field per axis = alpha * gaussian_smooth(uniform [-1,1] noise,
// sigma), drawn from the seeded generator; image bilinear, mask nearest,
// zero fill.
std::pair<Grid, Mask> elastic_deform(const Grid& image, const Mask& mask,
                                     double alpha, double sigma, uint64_t seed);

// Full pipeline in fixed order: flips, rotation, CLAHE, gamma, elastic,
// normalization. One seeded generator drives every draw; geometric steps hit
// image and mask, photometric steps the image only. geometry_changed reports
// whether any geometric transform actually fired (distance maps of the mask
// stay valid when it did not).
struct AugmentResult {
    Grid image;
    Mask mask;
    bool geometry_changed = false;
};
AugmentResult apply_augmentations(const Grid& image, const Mask& mask,
                                  const AugmentConfig& config, uint64_t seed);

// Separable Gaussian smoothing, zero padding, kernel normalized to unit sum.
Grid gaussian_smooth(const Grid& g, double sigma);

}  // namespace bavt
