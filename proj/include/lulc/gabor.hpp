#pragma once

#include <cstddef>
#include <vector>

#include "lulc/image.hpp"

namespace lulc {

struct GaborBankSpec {
    int scales = 5;
    int orientations = 8;
    std::vector<double> wavelengths = {4.0, 8.0, 16.0, 32.0, 64.0}; // pixels, one per scale
    double sigma_ratio = 0.56;                                      // sigma = ratio * wavelength
    int kernel_size = 11;                                           // odd

    void validate() const;
};

struct GaborKernel {
    int size = 0; // side length, odd
    std::vector<double> real;
    std::vector<double> imag;
};

/// scales x orientations complex kernels; orientation k spans k*180/orientations
/// degrees; the real part is mean-subtracted so constant inputs respond ~0.
/// Order: scale-major, orientation-minor.
std::vector<GaborKernel> gabor_bank(const GaborBankSpec& spec);

/// Magnitude of the complex filter response under replicate-border
/// correlation: the Gabor magnitude picture for one kernel.
Field gabor_magnitude(const Field& u, const GaborKernel& kernel);

} // namespace lulc
