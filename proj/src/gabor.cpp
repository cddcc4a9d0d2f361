#include "lulc/gabor.hpp"

#include <cmath>
#include <string>

#include "lulc/error.hpp"

namespace lulc {

void GaborBankSpec::validate() const {
    if (scales < 1 || orientations < 1) throw Error("gabor bank needs scales, orientations >= 1");
    if (wavelengths.size() != static_cast<std::size_t>(scales))
        throw Error("gabor bank needs one wavelength per scale, got " +
                    std::to_string(wavelengths.size()) + " for " + std::to_string(scales) +
                    " scales");
    for (double w : wavelengths)
        if (!(w > 0.0)) throw Error("gabor wavelengths must be positive");
    if (!(sigma_ratio > 0.0)) throw Error("gabor sigma_ratio must be positive");
    if (kernel_size < 1 || kernel_size % 2 == 0)
        throw Error("gabor kernel_size must be odd and positive, got " +
                    std::to_string(kernel_size));
}

std::vector<GaborKernel> gabor_bank(const GaborBankSpec& spec) {
    spec.validate();
    const double pi = 3.14159265358979323846;
    std::vector<GaborKernel> bank;
    bank.reserve(static_cast<std::size_t>(spec.scales) * spec.orientations);
    const int half = spec.kernel_size / 2;
    for (int s = 0; s < spec.scales; ++s) {
        const double lambda = spec.wavelengths[s];
        const double sigma = spec.sigma_ratio * lambda;
        for (int o = 0; o < spec.orientations; ++o) {
            const double theta = pi * o / spec.orientations;
            const double ct = std::cos(theta), st = std::sin(theta);
            GaborKernel k;
            k.size = spec.kernel_size;
            k.real.resize(static_cast<std::size_t>(k.size) * k.size);
            k.imag.resize(k.real.size());
            std::size_t idx = 0;
            double real_sum = 0.0;
            for (int y = -half; y <= half; ++y)
                for (int x = -half; x <= half; ++x, ++idx) {
                    const double xr = x * ct + y * st;
                    const double yr = -x * st + y * ct;
                    const double envelope = std::exp(-(xr * xr + yr * yr) / (2.0 * sigma * sigma));
                    const double phase = 2.0 * pi * xr / lambda;
                    k.real[idx] = envelope * std::cos(phase);
                    k.imag[idx] = envelope * std::sin(phase);
                    real_sum += k.real[idx];
                }
            // Remove the DC component so flat patches produce no response.
            const double mean = real_sum / static_cast<double>(k.real.size());
            for (double& v : k.real) v -= mean;
            bank.push_back(std::move(k));
        }
    }
    return bank;
}

Field gabor_magnitude(const Field& u, const GaborKernel& kernel) {
    if (kernel.size < 1 || kernel.size % 2 == 0) throw Error("gabor kernel has invalid size");
    if (u.width < 1 || u.height < 1) throw Error("gabor input field is empty");
    const int half = kernel.size / 2;
    Field out = make_field(u.width, u.height);
    auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < u.width; ++x) {
            double re = 0.0, im = 0.0;
            std::size_t idx = 0;
            for (int ky = -half; ky <= half; ++ky) {
                const int sy = clampi(y + ky, u.height - 1);
                for (int kx = -half; kx <= half; ++kx, ++idx) {
                    const double v = u.at(sy, clampi(x + kx, u.width - 1));
                    re += v * kernel.real[idx];
                    im += v * kernel.imag[idx];
                }
            }
            out.at(y, x) = std::sqrt(re * re + im * im);
        }
    return out;
}

} // namespace lulc
