#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <vector>

#include "lulc/error.hpp"
#include "lulc/ingest.hpp"
#include "lulc/png_io.hpp"
#include "lulc/rng.hpp"

#include "test_support.hpp"

using namespace lulc;

namespace {

LabeledDataset tiny_dataset(int per_class, int classes, int w = 6, int h = 5, int ch = 2) {
    LabeledDataset ds;
    Rng rng(101);
    for (int c = 0; c < classes; ++c) ds.class_names.push_back("class_" + std::to_string(c));
    for (int c = 0; c < classes; ++c)
        for (int i = 0; i < per_class; ++i) {
            ds.images.push_back(testsup::random_byte_image(w, h, ch, rng));
            ds.labels.push_back(static_cast<std::uint32_t>(c));
        }
    return ds;
}

} // namespace

TEST_CASE("png round trip preserves every byte value") {
    testsup::TempDir tmp("png");
    Rng rng(7);
    for (int channels : {1, 3, 4}) {
        Image img = testsup::random_byte_image(9, 4, channels, rng);
        const auto path = tmp.path / ("img_" + std::to_string(channels) + ".png");
        write_png(path, img);
        Image back = read_png(path);
        REQUIRE(back.width == img.width);
        REQUIRE(back.height == img.height);
        REQUIRE(back.channels == img.channels);
        for (std::size_t i = 0; i < img.data.size(); ++i) CHECK(back.data[i] == img.data[i]);
    }
    CHECK_THROWS_AS(read_png(tmp.path / "missing.png"), Error);
}

TEST_CASE("directory loading orders classes and files lexicographically") {
    testsup::TempDir tmp("dirload");
    Rng rng(8);
    // Created out of order on purpose.
    for (const char* cls : {"wetland", "barren", "forest"}) {
        std::filesystem::create_directories(tmp.path / cls);
        for (const char* name : {"b.png", "a.png"})
            write_png(tmp.path / cls / name, testsup::random_byte_image(5, 5, 3, rng));
    }
    LabeledDataset ds = load_directory(tmp.path);
    REQUIRE(ds.class_names.size() == 3);
    CHECK(ds.class_names[0] == "barren");
    CHECK(ds.class_names[1] == "forest");
    CHECK(ds.class_names[2] == "wetland");
    REQUIRE(ds.size() == 6);
    // Labels follow the sorted class order, two files each.
    CHECK(ds.labels == std::vector<std::uint32_t>{0, 0, 1, 1, 2, 2});

    LabeledDataset again = load_directory(tmp.path);
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK(again.images[i].data == ds.images[i].data);
}

TEST_CASE("raw tensor files round-trip a dataset exactly") {
    testsup::TempDir tmp("rawtensor");
    LabeledDataset ds = tiny_dataset(3, 2);
    const auto tensor = tmp.path / "data.lulct";
    const auto manifest = tmp.path / "manifest.csv";
    write_raw_tensor(tensor, manifest, ds);

    LabeledDataset back = load_raw_tensor(tensor, manifest);
    REQUIRE(back.size() == ds.size());
    CHECK(back.class_names == ds.class_names);
    CHECK(back.labels == ds.labels);
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK(back.images[i].data == ds.images[i].data);

    SUBCASE("truncated payload is rejected") {
        auto bytes = std::filesystem::file_size(tensor);
        std::filesystem::resize_file(tensor, bytes - 1);
        CHECK_THROWS_AS(load_raw_tensor(tensor, manifest), Error);
    }
    SUBCASE("bad magic is rejected") {
        std::fstream f(tensor, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.write("XXXXXXXX", 8);
        f.close();
        CHECK_THROWS_AS(load_raw_tensor(tensor, manifest), Error);
    }
    SUBCASE("manifest row count must match the tensor") {
        std::ofstream m(manifest, std::ios::app);
        m << "6,class_0\n";
        m.close();
        CHECK_THROWS_AS(load_raw_tensor(tensor, manifest), Error);
    }
}

TEST_CASE("stratified split take counts use round-half-up per class") {
    // Class 0 has 7 samples, class 1 has 3: train takes 5 and 2.
    std::vector<std::uint32_t> labels{0, 0, 0, 0, 0, 0, 0, 1, 1, 1};
    SplitSpec spec;
    spec.train_fraction = 0.7;
    spec.seed = 5;
    auto [train, test] = split_indices(labels, 2, spec);
    REQUIRE(train.size() == 7);
    REQUIRE(test.size() == 3);

    auto count_class = [&](const std::vector<std::size_t>& idx, std::uint32_t c) {
        return std::count_if(idx.begin(), idx.end(), [&](std::size_t i) { return labels[i] == c; });
    };
    CHECK(count_class(train, 0) == 5);
    CHECK(count_class(train, 1) == 2);
    CHECK(count_class(test, 0) == 2);
    CHECK(count_class(test, 1) == 1);

    CHECK(std::is_sorted(train.begin(), train.end()));
    CHECK(std::is_sorted(test.begin(), test.end()));
    std::set<std::size_t> all(train.begin(), train.end());
    all.insert(test.begin(), test.end());
    CHECK(all.size() == labels.size());
}

TEST_CASE("split is deterministic in the seed and changes with it") {
    std::vector<std::uint32_t> labels(60);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 3;
    SplitSpec spec;
    spec.seed = 77;
    auto a = split_indices(labels, 3, spec);
    auto b = split_indices(labels, 3, spec);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    spec.seed = 78;
    auto c = split_indices(labels, 3, spec);
    CHECK(a.first != c.first);
}

TEST_CASE("two-sample classes keep one sample on each side") {
    std::vector<std::uint32_t> labels{0, 0};
    SplitSpec spec;
    spec.train_fraction = 0.95;
    auto [train, test] = split_indices(labels, 1, spec);
    CHECK(train.size() == 1);
    CHECK(test.size() == 1);
}

TEST_CASE("stratified splitting rejects singleton classes") {
    std::vector<std::uint32_t> labels{0, 0, 0, 1};
    SplitSpec spec;
    CHECK_THROWS_AS(split_indices(labels, 2, spec), Error);
    spec.stratified = false;
    CHECK_NOTHROW(split_indices(labels, 2, spec));
    CHECK_THROWS_AS(split_indices({}, 2, spec), Error);
}

TEST_CASE("dataset split materializes matching images and labels") {
    LabeledDataset ds = tiny_dataset(5, 2);
    SplitSpec spec;
    spec.seed = 3;
    auto [train, test] = split(ds, spec);
    CHECK(train.size() + test.size() == ds.size());
    CHECK(train.class_names == ds.class_names);
    train.validate();
    test.validate();
}
