#include "lulc/metrics.hpp"

#include <cstdio>
#include <fstream>

#include "lulc/error.hpp"

namespace lulc {

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t t = 0;
    for (std::uint64_t v : counts) t += v;
    return t;
}

ConfusionMatrix confusion(const std::vector<std::uint32_t>& true_labels,
                          const std::vector<std::uint32_t>& predicted_labels,
                          std::size_t classes) {
    if (true_labels.size() != predicted_labels.size())
        throw Error("true/predicted label counts differ");
    if (classes == 0) throw Error("confusion matrix needs at least one class");
    ConfusionMatrix cm;
    cm.classes = classes;
    cm.counts.assign(classes * classes, 0);
    for (std::size_t i = 0; i < true_labels.size(); ++i) {
        if (true_labels[i] >= classes || predicted_labels[i] >= classes)
            throw Error("label out of range at sample " + std::to_string(i));
        cm.at(true_labels[i], predicted_labels[i])++;
    }
    return cm;
}

BinaryCounts one_vs_rest(const ConfusionMatrix& cm, std::size_t c) {
    if (c >= cm.classes) throw Error("class index out of range");
    BinaryCounts b;
    b.tp = cm.at(c, c);
    std::uint64_t row = 0, col = 0;
    for (std::size_t k = 0; k < cm.classes; ++k) {
        row += cm.at(c, k);
        col += cm.at(k, c);
    }
    b.fn = row - b.tp;
    b.fp = col - b.tp;
    b.tn = cm.total() - b.tp - b.fp - b.fn;
    return b;
}

ClassScores scores(const BinaryCounts& c) {
    const std::uint64_t total = c.tp + c.tn + c.fp + c.fn;
    if (total == 0) throw Error("scores need at least one sample");
    ClassScores s;
    s.accuracy = 100.0 * static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
    if (c.tp + c.fn > 0)
        s.recall = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    else
        s.recall_undefined = true;
    if (c.tp + c.fp > 0)
        s.precision = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    else
        s.precision_undefined = true;
    return s;
}

EvalReport report(const std::vector<std::uint32_t>& true_labels,
                  const std::vector<std::uint32_t>& predicted_labels, std::size_t classes,
                  const std::vector<std::string>& class_names, AverageMode average) {
    if (!class_names.empty() && class_names.size() != classes)
        throw Error("class name count does not match class count");
    EvalReport rep;
    rep.average = average;
    rep.matrix = confusion(true_labels, predicted_labels, classes);
    rep.class_names = class_names;
    if (rep.class_names.empty())
        for (std::size_t c = 0; c < classes; ++c)
            rep.class_names.push_back("class_" + std::to_string(c));
    rep.per_class.reserve(classes);
    BinaryCounts pooled;
    for (std::size_t c = 0; c < classes; ++c) {
        const BinaryCounts b = one_vs_rest(rep.matrix, c);
        pooled.tp += b.tp;
        pooled.tn += b.tn;
        pooled.fp += b.fp;
        pooled.fn += b.fn;
        rep.per_class.push_back(scores(b));
    }
    if (average == AverageMode::micro) {
        rep.overall = scores(pooled);
    } else {
        for (const ClassScores& s : rep.per_class) {
            rep.overall.accuracy += s.accuracy;
            rep.overall.recall += s.recall;
            rep.overall.precision += s.precision;
            rep.overall.recall_undefined |= s.recall_undefined;
            rep.overall.precision_undefined |= s.precision_undefined;
        }
        const double inv = 1.0 / static_cast<double>(classes);
        rep.overall.accuracy *= inv;
        rep.overall.recall *= inv;
        rep.overall.precision *= inv;
    }
    return rep;
}

namespace {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string flags_of(const ClassScores& s) {
    std::string f;
    if (s.precision_undefined) f += "precision";
    if (s.recall_undefined) {
        if (!f.empty()) f += '+';
        f += "recall";
    }
    return f.empty() ? "none" : f;
}

} // namespace

void save_report_csv(const std::filesystem::path& path, const EvalReport& rep) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open report file for writing: " + path.string());
    out << "class,accuracy,precision,recall,undefined_flags\n";
    for (std::size_t c = 0; c < rep.per_class.size(); ++c) {
        const ClassScores& s = rep.per_class[c];
        out << rep.class_names[c] << ',' << format_g17(s.accuracy) << ','
            << format_g17(s.precision) << ',' << format_g17(s.recall) << ',' << flags_of(s)
            << '\n';
    }
    out << "overall," << format_g17(rep.overall.accuracy) << ','
        << format_g17(rep.overall.precision) << ',' << format_g17(rep.overall.recall) << ','
        << flags_of(rep.overall) << '\n';
    if (!out) throw Error("write failed for report file: " + path.string());
}

void save_confusion_csv(const std::filesystem::path& path, const ConfusionMatrix& cm,
                        const std::vector<std::string>& class_names) {
    if (class_names.size() != cm.classes)
        throw Error("class name count does not match confusion matrix");
    std::ofstream out(path);
    if (!out) throw Error("cannot open confusion file for writing: " + path.string());
    out << "true\\pred";
    for (const auto& name : class_names) out << ',' << name;
    out << '\n';
    for (std::size_t t = 0; t < cm.classes; ++t) {
        out << class_names[t];
        for (std::size_t p = 0; p < cm.classes; ++p) out << ',' << cm.at(t, p);
        out << '\n';
    }
    if (!out) throw Error("write failed for confusion file: " + path.string());
}

} // namespace lulc
