#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lulc {

struct ConfusionMatrix {
    std::size_t classes = 0;
    std::vector<std::uint64_t> counts; // row = true class, col = predicted

    std::uint64_t& at(std::size_t t, std::size_t p) { return counts[t * classes + p]; }
    std::uint64_t at(std::size_t t, std::size_t p) const { return counts[t * classes + p]; }
    std::uint64_t total() const;
};

ConfusionMatrix confusion(const std::vector<std::uint32_t>& true_labels,
                          const std::vector<std::uint32_t>& predicted_labels,
                          std::size_t classes);

struct BinaryCounts {
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
};

BinaryCounts one_vs_rest(const ConfusionMatrix& cm, std::size_t c);

struct ClassScores {
    double accuracy = 0.0;  // percent
    double recall = 0.0;    // percent
    double precision = 0.0; // percent
    // Flags for the scores whose denominator was zero and were reported as 0.
    bool recall_undefined = false;
    bool precision_undefined = false;
};

ClassScores scores(const BinaryCounts& counts);

enum class AverageMode { macro, micro };

struct EvalReport {
    std::vector<std::string> class_names;
    std::vector<ClassScores> per_class;
    ClassScores overall;
    ConfusionMatrix matrix;
    AverageMode average = AverageMode::macro;
};

/// Per-class one-vs-rest scores plus an overall row. The default overall is
/// the unweighted mean over classes; micro pools the four counts first.
EvalReport report(const std::vector<std::uint32_t>& true_labels,
                  const std::vector<std::uint32_t>& predicted_labels, std::size_t classes,
                  const std::vector<std::string>& class_names,
                  AverageMode average = AverageMode::macro);

/// Columns: class,accuracy,precision,recall,undefined_flags.
void save_report_csv(const std::filesystem::path& path, const EvalReport& rep);

/// C x C grid with class names on the header row and column.
void save_confusion_csv(const std::filesystem::path& path, const ConfusionMatrix& cm,
                        const std::vector<std::string>& class_names);

} // namespace lulc
