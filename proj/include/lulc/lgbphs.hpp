#pragma once

#include <cstddef>
#include <vector>

#include "lulc/gabor.hpp"
#include "lulc/image.hpp"

namespace lulc {

struct LgbphsSpec {
    int grid_rows = 2;
    int grid_cols = 2;
    int lbp_bins = 256;

    void validate() const;
};

std::size_t lgbphs_length(const GaborBankSpec& gspec, const LgbphsSpec& lspec);

/// For each Gabor kernel the image's magnitude response is LBP-coded and the
/// code field is cut into grid_rows x grid_cols regions, each histogrammed
/// into lbp_bins bins and L1-normalized. The descriptor concatenates the
/// regional histograms over (kernel, region-row, region-col). Multichannel
/// images are reduced to channel-mean luminance first.
std::vector<double> lgbphs_descriptor(const Image& img, const GaborBankSpec& gspec,
                                      const LgbphsSpec& lspec);

/// Same descriptor against an already-built kernel bank (bank construction is
/// the expensive invariant part across a dataset).
std::vector<double> lgbphs_descriptor(const Image& img, const std::vector<GaborKernel>& bank,
                                      const LgbphsSpec& lspec);

} // namespace lulc
