#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "lulc/error.hpp"
#include "lulc/hgpso.hpp"

#include "test_support.hpp"

using namespace lulc;

namespace {

// Two well-separated classes: column 0 carries the label, columns 1+ are noise.
FeatureMatrix separable_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    FeatureMatrix fm;
    fm.rows = rows;
    fm.cols = cols;
    fm.values.resize(rows * cols);
    Rng rng(seed);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::uint32_t label = r % 2;
        fm.row_labels.push_back(label);
        fm.at(r, 0) = static_cast<double>(label) * 10.0 + rng.uniform(-0.1, 0.1);
        for (std::size_t c = 1; c < cols; ++c) fm.at(r, c) = rng.uniform(-1.0, 1.0);
    }
    for (std::size_t c = 0; c < cols; ++c) fm.column_tags.push_back("col_" + std::to_string(c));
    return fm;
}

ArchiveMember member(double fitness, double ratio) {
    ArchiveMember m;
    m.position = {fitness, ratio};
    m.mask = {1, 1};
    m.objectives = {fitness, ratio};
    return m;
}

} // namespace

TEST_CASE("mode names round-trip and unknown names are rejected") {
    CHECK(update_mode_from_string("full") == UpdateMode::full);
    CHECK(update_mode_from_string("plain_pso") == UpdateMode::plain_pso);
    CHECK(update_mode_from_string("hgo_off") == UpdateMode::hgo_off);
    CHECK(to_string(UpdateMode::plain_pso) == "plain_pso");
    CHECK_THROWS_AS(update_mode_from_string("nope"), Error);
    CHECK(fitness_mode_from_string("wrapper") == FitnessMode::wrapper);
    CHECK(to_string(FitnessMode::nk_landscape) == "nk_landscape");
    CHECK_THROWS_AS(fitness_mode_from_string(""), Error);
}

TEST_CASE("the decision mask selects exactly the non-negative positions") {
    const auto mask = mask_from_position({-0.5, 0.0, 2.0, -6.0, 1e-12});
    CHECK(mask == std::vector<std::int8_t>{-1, 1, 1, -1, 1});
    CHECK(selected_count(mask) == 3);
}

TEST_CASE("dominance needs no-worse in both objectives and better in one") {
    CHECK(dominates({2.0, 0.3}, {1.0, 0.5}));
    CHECK(dominates({1.0, 0.3}, {1.0, 0.5})); // same fitness, smaller subset
    CHECK(dominates({2.0, 0.5}, {1.0, 0.5}));
    CHECK_FALSE(dominates({1.0, 0.5}, {1.0, 0.5})); // equal point
    CHECK_FALSE(dominates({2.0, 0.6}, {1.0, 0.5})); // trade-off
    CHECK_FALSE(dominates({1.0, 0.5}, {2.0, 0.3}));
}

TEST_CASE("mutation probability follows the exponential decay schedule") {
    CHECK(mutation_probability(0, 100) == 0.51);
    CHECK(std::abs(mutation_probability(100, 100) - 0.010022699964881242) < 1e-15);
    CHECK(std::abs(mutation_probability(50, 200) - (0.5 * std::exp(-2.5) + 0.01)) < 1e-15);
    CHECK_THROWS_AS(mutation_probability(-1, 100), Error);
    CHECK_THROWS_AS(mutation_probability(101, 100), Error);
}

TEST_CASE("mutation redraws floor(D*p_m) coordinates and nothing else") {
    const std::size_t dims = 100;
    Particle p;
    p.position.assign(dims, 2.0); // outside the redraw range [-1, 1]
    p.velocity.assign(dims, 0.25);
    p.mask = mask_from_position(p.position);

    // Find a seed whose first draw triggers the mutation branch.
    std::uint64_t seed = 0;
    for (;; ++seed) {
        Rng probe(seed);
        if (probe.uniform() < 0.51) break;
    }
    Rng rng(seed);
    adaptive_uniform_mutation(p, 0.51, rng);

    std::size_t changed = 0;
    for (double x : p.position)
        if (x != 2.0) {
            ++changed;
            CHECK(x >= -1.0);
            CHECK(x <= 1.0);
        }
    CHECK(changed == 51); // k = floor(100 * 0.51)
    for (double v : p.velocity) CHECK(v == 0.25);
    CHECK(p.mask == mask_from_position(p.position));
    CHECK_THROWS_AS(adaptive_uniform_mutation(p, 0.0, rng), Error);
}

TEST_CASE("landscape tables are seeded, distinct, and correctly sized") {
    const auto t = make_nk_tables(30, 4, 99);
    REQUIRE(t.neighbors.size() == 30);
    REQUIRE(t.table.size() == 30);
    for (std::size_t j = 0; j < 30; ++j) {
        CHECK(t.neighbors[j].size() == 4);
        std::set<std::size_t> uniq(t.neighbors[j].begin(), t.neighbors[j].end());
        CHECK(uniq.size() == 4);
        CHECK(uniq.count(j) == 0);
        CHECK(t.table[j].size() == 32); // 2^(4+1)
        for (double v : t.table[j]) {
            CHECK(v >= 0.0);
            CHECK(v < 1.0);
        }
    }
    const auto again = make_nk_tables(30, 4, 99);
    CHECK(again.table == t.table);
    CHECK(again.neighbors == t.neighbors);
    const auto other = make_nk_tables(30, 4, 100);
    CHECK(other.table != t.table);
}

TEST_CASE("full knowledge collapses perceived fitness onto the true value") {
    const auto tables = make_nk_tables(50, 4, 7);
    const std::vector<char> omniscient(50, 1);
    Rng rng(21);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<std::int8_t> mask(50);
        for (auto& b : mask) b = rng.bernoulli(0.5) ? 1 : -1;
        CHECK(perceived_fitness(mask, tables, omniscient) == nk_fitness(mask, tables));
    }
}

TEST_CASE("zero knowledge yields zero perceived fitness") {
    const auto tables = make_nk_tables(10, 2, 7);
    const std::vector<char> blank(10, 0);
    const std::vector<std::int8_t> mask(10, 1);
    CHECK(perceived_fitness(mask, tables, blank) == 0.0);
    CHECK(nk_fitness(mask, tables) > 0.0);
}

TEST_CASE("partial knowledge averages only the known contributions") {
    const auto tables = make_nk_tables(4, 1, 3);
    std::vector<char> knows = {1, 0, 1, 0};
    const std::vector<std::int8_t> mask = {1, -1, 1, 1};
    const double expected =
        (tables.contribution(0, mask) + tables.contribution(2, mask)) / 2.0;
    CHECK(perceived_fitness(mask, tables, knows) == expected);
}

TEST_CASE("wrapper fitness scores a nearest-centroid validation accuracy") {
    FeatureMatrix train = separable_matrix(40, 3, 1);
    FeatureMatrix val = separable_matrix(20, 3, 2);
    CHECK(wrapper_fitness({1, -1, -1}, train, val) == 1.0);
    CHECK(wrapper_fitness({1, 1, 1}, train, val) == 1.0);
    const double noise_only = wrapper_fitness({-1, 1, 1}, train, val);
    CHECK(noise_only < 0.9);
    CHECK(wrapper_fitness({-1, -1, -1}, train, val) == 0.0);
}

TEST_CASE("constant columns are unusable for the wrapper") {
    FeatureMatrix train = separable_matrix(20, 2, 5);
    FeatureMatrix val = separable_matrix(10, 2, 6);
    for (std::size_t r = 0; r < train.rows; ++r) train.at(r, 1) = 3.0;
    for (std::size_t r = 0; r < val.rows; ++r) val.at(r, 1) = 3.0;
    CHECK(wrapper_fitness({-1, 1}, train, val) == 0.0); // only the constant column chosen
}

TEST_CASE("crowding gives boundaries infinity and interiors their gap sum") {
    std::vector<ArchiveMember> members = {member(0.0, 0.0), member(1.0, 0.5), member(2.0, 1.0)};
    const auto d = crowding_distance(members);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[2]));
    CHECK(d[1] == doctest::Approx(2.0)); // one full normalized span per objective

    const auto two = crowding_distance({member(1.0, 0.2), member(3.0, 0.1)});
    CHECK(std::isinf(two[0]));
    CHECK(std::isinf(two[1]));
}

TEST_CASE("leader selection spends exactly two draws and prefers crowding") {
    Archive archive; // a genuine trade-off front: more fitness costs more columns
    archive_insert(archive, member(1.0, 0.1), 10);
    archive_insert(archive, member(2.0, 0.5), 10);
    archive_insert(archive, member(3.0, 0.9), 10);
    REQUIRE(archive.members.size() == 3);

    Rng a(42);
    const std::size_t pick = select_gbest_index(archive, a);
    CHECK(pick < 3);
    Rng b(42);
    b.next_u64();
    b.next_u64();
    CHECK(a.next_u64() == b.next_u64()); // exactly two draws consumed

    Rng c(42), d(42);
    CHECK(select_gbest_index(archive, c) == select_gbest_index(archive, d));
}

TEST_CASE("archive keeps only mutually non-dominated distinct members") {
    Archive archive;
    archive_insert(archive, member(1.0, 0.5), 5);
    archive_insert(archive, member(1.0, 0.5), 5); // duplicate objectives
    CHECK(archive.members.size() == 1);
    archive_insert(archive, member(0.5, 0.9), 5); // dominated, rejected
    CHECK(archive.members.size() == 1);
    archive_insert(archive, member(2.0, 0.4), 5); // dominates the original
    CHECK(archive.members.size() == 1);
    CHECK(archive.members[0].objectives.fitness == 2.0);
    archive_insert(archive, member(1.5, 0.2), 5); // trade-off, kept
    CHECK(archive.members.size() == 2);
}

TEST_CASE("archive truncation never evicts the best-fitness member") {
    Rng rng(404);
    Archive archive;
    double best_seen = -1.0;
    for (int i = 0; i < 300; ++i) {
        const double f = rng.uniform();
        const double ratio = rng.uniform();
        archive_insert(archive, member(f, ratio), 6);
        best_seen = std::max(best_seen, f);

        REQUIRE(archive.members.size() <= 6);
        REQUIRE(!archive.members.empty());
        double best_in_archive = -1.0;
        for (const auto& m : archive.members)
            best_in_archive = std::max(best_in_archive, m.objectives.fitness);
        CHECK(best_in_archive == best_seen);
        for (std::size_t a = 0; a < archive.members.size(); ++a)
            for (std::size_t b = 0; b < archive.members.size(); ++b)
                if (a != b)
                    CHECK_FALSE(
                        dominates(archive.members[a].objectives, archive.members[b].objectives));
    }
}

TEST_CASE("the optimizer trace starts at the init row and never loses fitness") {
    FeatureMatrix fm = separable_matrix(30, 12, 9);
    SwarmConfig cfg;
    cfg.swarm_size = 8;
    cfg.archive_size = 6;
    cfg.max_iterations = 15;
    cfg.r_seed = 31;
    cfg.fitness_mode = FitnessMode::nk_landscape;
    cfg.interaction_count = 3;

    int calls = 0;
    SwarmResult res = run_swarm(fm, cfg, [&](int iter, const Archive& archive) {
        CHECK(iter == calls);
        ++calls;
        CHECK(archive.members.size() <= 6);
        CHECK(!archive.members.empty());
    });
    CHECK(calls == 16);
    REQUIRE(res.trace.size() == 16);
    CHECK(res.trace.front().iteration == 0);
    CHECK(res.trace.front().p_m == 0.51);
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
        CHECK(res.trace[i].best_fitness >= res.trace[i - 1].best_fitness);
        CHECK(res.trace[i].iteration == static_cast<int>(i));
        CHECK(res.trace[i].archive_size <= 6);
    }
    CHECK(res.mask.size() == fm.cols);
    CHECK(res.objectives.fitness == res.trace.back().best_fitness);
    CHECK(selected_count(res.mask) == res.selected_columns().size());
}

TEST_CASE("identical configurations reproduce the optimizer run exactly") {
    FeatureMatrix fm = separable_matrix(40, 10, 3);
    SwarmConfig cfg;
    cfg.swarm_size = 6;
    cfg.archive_size = 5;
    cfg.max_iterations = 10;
    cfg.r_seed = 77;

    SwarmResult a = run_swarm(fm, cfg);
    SwarmResult b = run_swarm(fm, cfg);
    CHECK(a.mask == b.mask);
    CHECK(a.objectives.fitness == b.objectives.fitness);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].best_fitness == b.trace[i].best_fitness);
        CHECK(a.trace[i].mean_fitness == b.trace[i].mean_fitness);
        CHECK(a.trace[i].archive_size == b.trace[i].archive_size);
    }

    cfg.r_seed = 78;
    SwarmResult c = run_swarm(fm, cfg);
    bool any_diff = c.mask != a.mask;
    for (std::size_t i = 0; i < a.trace.size() && !any_diff; ++i)
        any_diff = c.trace[i].mean_fitness != a.trace[i].mean_fitness;
    CHECK(any_diff);
}

TEST_CASE("every update mode completes and finds the informative column") {
    FeatureMatrix fm = separable_matrix(60, 8, 12);
    for (UpdateMode mode : {UpdateMode::full, UpdateMode::plain_pso, UpdateMode::hgo_off}) {
        SwarmConfig cfg;
        cfg.swarm_size = 10;
        cfg.archive_size = 8;
        cfg.max_iterations = 12;
        cfg.r_seed = 5;
        cfg.update_mode = mode;
        SwarmResult res = run_swarm(fm, cfg);
        REQUIRE(res.mask.size() == 8);
        CHECK(res.mask[0] == 1); // the label-carrying column gets selected
        CHECK(res.objectives.fitness == 1.0);
    }
}

TEST_CASE("mask files round-trip the selection") {
    testsup::TempDir tmp("mask");
    const std::vector<std::int8_t> mask = {1, -1, -1, 1, 1};
    const std::vector<std::string> tags = {"a", "b", "c", "d", "e"};
    const auto path = tmp.path / "mask.txt";
    save_mask(path, mask, tags);
    CHECK(load_mask(path) == mask);
    CHECK_THROWS_AS(save_mask(path, mask, {"too", "few"}), Error);
    CHECK_THROWS_AS(load_mask(tmp.path / "absent.txt"), Error);
}

TEST_CASE("trace files carry the header and one line per iteration") {
    testsup::TempDir tmp("trace");
    std::vector<TraceRow> trace(3);
    for (int i = 0; i < 3; ++i) {
        trace[i].iteration = i;
        trace[i].best_fitness = 0.5 + i;
        trace[i].archive_size = static_cast<std::size_t>(i + 1);
    }
    const auto path = tmp.path / "trace.csv";
    save_trace_csv(path, trace);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iter,best_fitness,mean_fitness,archive_size,p_m,selected_count");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}
