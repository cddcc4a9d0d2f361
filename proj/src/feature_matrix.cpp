#include "lulc/feature_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/io_bytes.hpp"

namespace lulc {

void FeatureMatrix::validate() const {
    if (values.size() != rows * cols) throw Error("feature matrix value buffer has wrong size");
    if (column_tags.size() != cols) throw Error("feature matrix tag count does not match columns");
    if (row_labels.size() != rows) throw Error("feature matrix label count does not match rows");
    for (double v : values)
        if (!std::isfinite(v)) throw Error("feature matrix contains a non-finite value");
}

namespace {

constexpr char kMagic[7] = {'L', 'U', 'L', 'C', 'F', '1', '\0'};

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_value(const std::string& text, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw Error("invalid numeric value \"" + text + "\" on csv line " + std::to_string(line_no));
    return v;
}

} // namespace

void save_feature_csv(const std::filesystem::path& path, const FeatureMatrix& fm) {
    fm.validate();
    std::ofstream out(path);
    if (!out) throw Error("cannot open csv for writing: " + path.string());
    out << "label";
    for (const auto& tag : fm.column_tags) {
        if (tag.find(',') != std::string::npos || tag.find('\n') != std::string::npos)
            throw Error("column tag contains a csv delimiter: " + tag);
        out << ',' << tag;
    }
    out << '\n';
    for (std::size_t r = 0; r < fm.rows; ++r) {
        out << fm.row_labels[r];
        for (std::size_t c = 0; c < fm.cols; ++c) out << ',' << format_value(fm.at(r, c));
        out << '\n';
    }
    if (!out) throw Error("write failed for csv: " + path.string());
}

FeatureMatrix load_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open csv: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error("csv is empty: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();

    FeatureMatrix fm;
    {
        std::stringstream header(line);
        std::string cell;
        if (!std::getline(header, cell, ',') || cell != "label")
            throw Error("csv header must start with \"label\": " + path.string());
        while (std::getline(header, cell, ',')) fm.column_tags.push_back(cell);
    }
    fm.cols = fm.column_tags.size();

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ','))
            throw Error("csv line " + std::to_string(line_no) + " is malformed");
        try {
            std::size_t pos = 0;
            unsigned long lab = std::stoul(cell, &pos);
            if (pos != cell.size() || lab > 0xffffffffUL) throw std::invalid_argument("range");
            fm.row_labels.push_back(static_cast<std::uint32_t>(lab));
        } catch (const std::exception&) {
            throw Error("invalid label \"" + cell + "\" on csv line " + std::to_string(line_no));
        }
        std::size_t got = 0;
        while (std::getline(row, cell, ',')) {
            fm.values.push_back(parse_value(cell, line_no));
            ++got;
        }
        if (got != fm.cols)
            throw Error("csv line " + std::to_string(line_no) + " has " + std::to_string(got) +
                        " values, expected " + std::to_string(fm.cols));
        ++fm.rows;
    }
    fm.validate();
    return fm;
}

void save_feature_binary(const std::filesystem::path& path, const FeatureMatrix& fm) {
    fm.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open feature file for writing: " + path.string());
    out.write(kMagic, sizeof kMagic);
    write_u32le(out, static_cast<std::uint32_t>(fm.rows));
    write_u32le(out, static_cast<std::uint32_t>(fm.cols));
    for (double v : fm.values) write_f64le(out, v);
    for (const auto& tag : fm.column_tags) {
        write_u32le(out, static_cast<std::uint32_t>(tag.size()));
        out.write(tag.data(), static_cast<std::streamsize>(tag.size()));
    }
    for (std::uint32_t lab : fm.row_labels) write_u32le(out, lab);
    if (!out) throw Error("write failed for feature file: " + path.string());
}

FeatureMatrix load_feature_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open feature file: " + path.string());
    char magic[sizeof kMagic];
    read_exact(in, magic, sizeof kMagic, "feature file magic");
    if (!std::equal(magic, magic + sizeof kMagic, kMagic))
        throw Error("bad magic in feature file (expected LULCF1): " + path.string());
    FeatureMatrix fm;
    fm.rows = read_u32le(in, "feature row count");
    fm.cols = read_u32le(in, "feature column count");
    fm.values.resize(fm.rows * fm.cols);
    for (double& v : fm.values) v = read_f64le(in, "feature value");
    fm.column_tags.resize(fm.cols);
    for (auto& tag : fm.column_tags) {
        std::uint32_t len = read_u32le(in, "tag length");
        tag.resize(len);
        if (len > 0) read_exact(in, tag.data(), len, "tag text");
    }
    fm.row_labels.resize(fm.rows);
    for (auto& lab : fm.row_labels) lab = read_u32le(in, "row label");
    char extra;
    if (in.read(&extra, 1)) throw Error("trailing bytes in feature file: " + path.string());
    fm.validate();
    return fm;
}

FeatureMatrix select_columns(const FeatureMatrix& fm, const std::vector<std::size_t>& indices) {
    fm.validate();
    FeatureMatrix out;
    out.rows = fm.rows;
    out.cols = indices.size();
    out.row_labels = fm.row_labels;
    out.column_tags.reserve(indices.size());
    for (std::size_t c : indices) {
        if (c >= fm.cols) throw Error("column index out of range in selection");
        out.column_tags.push_back(fm.column_tags[c]);
    }
    out.values.resize(out.rows * out.cols);
    for (std::size_t r = 0; r < fm.rows; ++r)
        for (std::size_t j = 0; j < indices.size(); ++j)
            out.at(r, j) = fm.at(r, indices[j]);
    return out;
}

FeatureMatrix select_rows(const FeatureMatrix& fm, const std::vector<std::size_t>& indices) {
    fm.validate();
    FeatureMatrix out;
    out.cols = fm.cols;
    out.column_tags = fm.column_tags;
    out.rows = indices.size();
    out.values.resize(out.rows * out.cols);
    out.row_labels.reserve(indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        std::size_t r = indices[j];
        if (r >= fm.rows) throw Error("row index out of range in selection");
        out.row_labels.push_back(fm.row_labels[r]);
        for (std::size_t c = 0; c < fm.cols; ++c) out.at(j, c) = fm.at(r, c);
    }
    return out;
}

ColumnStats column_stats(const FeatureMatrix& fm) {
    if (fm.rows == 0) throw Error("cannot compute column stats of an empty matrix");
    ColumnStats s;
    s.mean.assign(fm.cols, 0.0);
    s.stddev.assign(fm.cols, 0.0);
    for (std::size_t r = 0; r < fm.rows; ++r)
        for (std::size_t c = 0; c < fm.cols; ++c) s.mean[c] += fm.at(r, c);
    for (double& m : s.mean) m /= static_cast<double>(fm.rows);
    for (std::size_t r = 0; r < fm.rows; ++r)
        for (std::size_t c = 0; c < fm.cols; ++c) {
            const double d = fm.at(r, c) - s.mean[c];
            s.stddev[c] += d * d;
        }
    for (double& v : s.stddev) v = std::sqrt(v / static_cast<double>(fm.rows));
    return s;
}

} // namespace lulc
