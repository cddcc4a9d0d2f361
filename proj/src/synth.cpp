#include "lulc/synth.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "lulc/error.hpp"
#include "lulc/png_io.hpp"
#include "lulc/rng.hpp"

namespace lulc {

namespace {

constexpr std::uint64_t kStreamSynth = 0x800000000ull; // + class, step = image index

double clamp_byte(double v) { return v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : std::round(v)); }

} // namespace

LabeledDataset make_texture_corpus(const SynthSpec& spec, std::uint64_t seed) {
    spec.validate();
    LabeledDataset ds;
    ds.class_names = {"checker", "hstripes", "speckle", "vstripes"};
    ds.images.reserve(static_cast<std::size_t>(spec.per_class) * ds.class_names.size());
    for (std::size_t cls = 0; cls < ds.class_names.size(); ++cls) {
        for (int n = 0; n < spec.per_class; ++n) {
            Rng rng(mix_seed(seed, kStreamSynth + cls, static_cast<std::uint64_t>(n)));
            const int period = 3 + static_cast<int>(rng.uniform_int(5)); // 3..7
            const int phase_x = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(period)));
            const int phase_y = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(period)));
            const double lo = rng.uniform(10.0, 70.0);
            const double hi = rng.uniform(180.0, 245.0);
            std::vector<double> channel_gain(static_cast<std::size_t>(spec.channels));
            for (double& g : channel_gain) g = rng.uniform(0.75, 1.0);

            Image img = make_image(spec.width, spec.height, spec.channels);
            for (int y = 0; y < spec.height; ++y)
                for (int x = 0; x < spec.width; ++x) {
                    double base;
                    switch (cls) {
                        case 0: { // checker
                            const int cx = (x + phase_x) / period;
                            const int cy = (y + phase_y) / period;
                            base = ((cx + cy) % 2 == 0) ? lo : hi;
                            break;
                        }
                        case 1: // horizontal stripes
                            base = (((y + phase_y) / period) % 2 == 0) ? lo : hi;
                            break;
                        case 2: // speckle
                            base = rng.uniform(lo, hi);
                            break;
                        default: // vertical stripes
                            base = (((x + phase_x) / period) % 2 == 0) ? lo : hi;
                    }
                    const double jitter = rng.uniform(-8.0, 8.0);
                    for (int c = 0; c < spec.channels; ++c)
                        img.at(y, x, c) =
                            clamp_byte(base * channel_gain[static_cast<std::size_t>(c)] + jitter);
                }
            ds.images.push_back(std::move(img));
            ds.labels.push_back(static_cast<std::uint32_t>(cls));
        }
    }
    ds.validate();
    return ds;
}

void write_corpus_png(const std::filesystem::path& root, const LabeledDataset& ds) {
    ds.validate();
    namespace fs = std::filesystem;
    fs::create_directories(root);
    std::vector<int> counters(ds.class_names.size(), 0);
    for (const auto& name : ds.class_names) fs::create_directories(root / name);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const std::uint32_t cls = ds.labels[i];
        char name[32];
        std::snprintf(name, sizeof name, "img_%04d.png", counters[cls]++);
        write_png(root / ds.class_names[cls] / name, ds.images[i]);
    }
}

} // namespace lulc
