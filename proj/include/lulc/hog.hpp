#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lulc/image.hpp"

namespace lulc {

struct HogSpec {
    int cell_size = 7;    // pixels per cell side
    int block_size = 2;   // cells per block side
    int block_stride = 1; // cells
    int bins = 9;
    bool signed_orientation = false;
    double epsilon = 1e-5;

    void validate() const;
};

/// Central differences u(x+1,y) - u(x-1,y) with edge replication.
std::pair<Field, Field> gradients(const Field& u);

/// L = sqrt(Lx^2 + Ly^2); theta = atan2(Ly, Lx) in degrees, folded to
/// [0, 180) when unsigned and to [0, 360) when signed; (0,0) maps to 0.
std::pair<Field, Field> gradient_magnitude_orientation(const Field& lx, const Field& ly,
                                                       bool signed_orientation);

std::size_t hog_length(int width, int height, const HogSpec& spec);

/// Cell histograms (magnitude-weighted votes split linearly between the two
/// nearest bin centers at i*bin_width), tiled into blocks, each block
/// L2-normalized as q / sqrt(|q|^2 + e^2). Multichannel images are reduced
/// to their channel-mean luminance first.
std::vector<double> hog_descriptor(const Image& img, const HogSpec& spec);

} // namespace lulc
