#include "lulc/hgpso.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/ingest.hpp"
#include "lulc/parallel.hpp"

namespace lulc {

namespace {

constexpr std::uint64_t kStreamInit = 0x100000000ull;      // + particle
constexpr std::uint64_t kStreamKnowledge = 0x200000000ull; // + particle
constexpr std::uint64_t kStreamNk = 0x300000000ull;        // + term
constexpr std::uint64_t kStreamUpdate = 0x400000000ull;    // + particle, step = iteration
constexpr std::uint64_t kStreamWrapperSplit = 0x500000000ull;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

FitnessMode fitness_mode_from_string(const std::string& s) {
    if (s == "wrapper") return FitnessMode::wrapper;
    if (s == "nk_landscape") return FitnessMode::nk_landscape;
    throw Error("unknown fitness mode: " + s);
}

std::string to_string(FitnessMode mode) {
    return mode == FitnessMode::wrapper ? "wrapper" : "nk_landscape";
}

UpdateMode update_mode_from_string(const std::string& s) {
    if (s == "full") return UpdateMode::full;
    if (s == "plain_pso") return UpdateMode::plain_pso;
    if (s == "hgo_off") return UpdateMode::hgo_off;
    throw Error("unknown update mode: " + s);
}

std::string to_string(UpdateMode mode) {
    switch (mode) {
        case UpdateMode::full: return "full";
        case UpdateMode::plain_pso: return "plain_pso";
        default: return "hgo_off";
    }
}

void SwarmConfig::validate(std::size_t dims) const {
    if (swarm_size < 2) throw Error("swarm_size must be >= 2");
    if (archive_size < 1) throw Error("archive_size must be >= 1");
    if (max_iterations < 1) throw Error("max_iterations must be >= 1");
    if (!(inertia >= 0.0 && inertia <= 1.0)) throw Error("inertia must lie in [0, 1]");
    if (!(knowledge_prob >= 0.0 && knowledge_prob <= 1.0))
        throw Error("knowledge_prob must lie in [0, 1]");
    if (interaction_count < 0 || static_cast<std::size_t>(interaction_count) >= dims)
        throw Error("interaction_count must lie in 0..D-1, got " +
                    std::to_string(interaction_count) + " for D = " + std::to_string(dims));
    if (!(v_max > 0.0)) throw Error("v_max must be positive");
    if (!(validation_fraction > 0.0) || !(validation_fraction < 1.0))
        throw Error("validation_fraction must lie strictly between 0 and 1");
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    const bool no_worse = a.fitness >= b.fitness && a.subset_ratio <= b.subset_ratio;
    const bool better = a.fitness > b.fitness || a.subset_ratio < b.subset_ratio;
    return no_worse && better;
}

std::vector<std::int8_t> mask_from_position(const std::vector<double>& position) {
    std::vector<std::int8_t> mask(position.size());
    for (std::size_t j = 0; j < position.size(); ++j)
        mask[j] = position[j] >= 0.0 ? std::int8_t{1} : std::int8_t{-1};
    return mask;
}

std::size_t selected_count(const std::vector<std::int8_t>& mask) {
    std::size_t n = 0;
    for (std::int8_t d : mask) n += d > 0 ? 1 : 0;
    return n;
}

double NkTables::contribution(std::size_t j, const std::vector<std::int8_t>& mask) const {
    std::size_t idx = mask[j] > 0 ? 1u : 0u;
    const auto& nbr = neighbors[j];
    for (std::size_t t = 0; t < nbr.size(); ++t)
        if (mask[nbr[t]] > 0) idx |= std::size_t{1} << (t + 1);
    return table[j][idx];
}

NkTables make_nk_tables(std::size_t dims, int interaction_count, std::uint64_t seed) {
    if (dims < 1) throw Error("landscape needs at least one dimension");
    if (interaction_count < 0 || static_cast<std::size_t>(interaction_count) >= dims)
        throw Error("interaction_count must lie in 0..D-1");
    NkTables t;
    t.dims = dims;
    t.interaction_count = interaction_count;
    t.neighbors.resize(dims);
    t.table.resize(dims);
    const std::size_t combos = std::size_t{1} << (interaction_count + 1);
    for (std::size_t j = 0; j < dims; ++j) {
        Rng rng(mix_seed(seed, kStreamNk + j, 0));
        auto& nbr = t.neighbors[j];
        nbr.reserve(static_cast<std::size_t>(interaction_count));
        while (nbr.size() < static_cast<std::size_t>(interaction_count)) {
            std::size_t c = static_cast<std::size_t>(rng.uniform_int(dims));
            if (c == j || std::find(nbr.begin(), nbr.end(), c) != nbr.end()) continue;
            nbr.push_back(c);
        }
        auto& tab = t.table[j];
        tab.resize(combos);
        for (double& v : tab) v = rng.uniform();
    }
    return t;
}

double nk_fitness(const std::vector<std::int8_t>& mask, const NkTables& tables) {
    if (mask.size() != tables.dims) throw Error("mask size does not match landscape dimension");
    double sum = 0.0;
    for (std::size_t j = 0; j < tables.dims; ++j) sum += tables.contribution(j, mask);
    return sum / static_cast<double>(tables.dims);
}

double perceived_fitness(const std::vector<std::int8_t>& mask, const NkTables& tables,
                         const std::vector<char>& member_knowledge) {
    if (mask.size() != tables.dims || member_knowledge.size() != tables.dims)
        throw Error("mask/knowledge size does not match landscape dimension");
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < tables.dims; ++j) {
        if (!member_knowledge[j]) continue;
        num += tables.contribution(j, mask);
        den += 1.0;
    }
    return den > 0.0 ? num / den : 0.0;
}

namespace {

// Standardized train/validation views a mask can be scored against.
struct WrapperEvaluator {
    std::size_t cols = 0;
    std::size_t classes = 0;
    std::size_t train_rows = 0;
    std::size_t val_rows = 0;
    std::vector<double> train_values;
    std::vector<double> val_values;
    std::vector<std::uint32_t> train_labels;
    std::vector<std::uint32_t> val_labels;
    std::vector<char> usable;
    std::vector<std::size_t> class_counts;

    double evaluate(const std::vector<std::int8_t>& mask) const {
        if (mask.size() != cols) throw Error("mask size does not match feature columns");
        std::vector<std::size_t> sel;
        for (std::size_t j = 0; j < cols; ++j)
            if (mask[j] > 0 && usable[j]) sel.push_back(j);
        if (sel.empty() || val_rows == 0) return 0.0;

        std::vector<double> centroids(classes * sel.size(), 0.0);
        for (std::size_t r = 0; r < train_rows; ++r) {
            double* cen = centroids.data() + train_labels[r] * sel.size();
            const double* row = train_values.data() + r * cols;
            for (std::size_t s = 0; s < sel.size(); ++s) cen[s] += row[sel[s]];
        }
        for (std::size_t c = 0; c < classes; ++c)
            if (class_counts[c] > 0) {
                double* cen = centroids.data() + c * sel.size();
                for (std::size_t s = 0; s < sel.size(); ++s)
                    cen[s] /= static_cast<double>(class_counts[c]);
            }

        std::size_t correct = 0;
        for (std::size_t r = 0; r < val_rows; ++r) {
            const double* row = val_values.data() + r * cols;
            std::size_t best_class = 0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < classes; ++c) {
                if (class_counts[c] == 0) continue;
                const double* cen = centroids.data() + c * sel.size();
                double dist = 0.0;
                for (std::size_t s = 0; s < sel.size(); ++s) {
                    const double d = row[sel[s]] - cen[s];
                    dist += d * d;
                }
                if (dist < best_dist) {
                    best_dist = dist;
                    best_class = c;
                }
            }
            if (best_class == val_labels[r]) ++correct;
        }
        return static_cast<double>(correct) / static_cast<double>(val_rows);
    }
};

WrapperEvaluator make_wrapper_evaluator(const FeatureMatrix& train, const FeatureMatrix& val) {
    if (train.cols != val.cols) throw Error("train/validation column counts differ");
    if (train.rows == 0 || val.rows == 0) throw Error("wrapper fitness needs non-empty splits");
    WrapperEvaluator ev;
    ev.cols = train.cols;
    ev.train_rows = train.rows;
    ev.val_rows = val.rows;
    ev.train_labels = train.row_labels;
    ev.val_labels = val.row_labels;
    std::uint32_t max_label = 0;
    for (std::uint32_t l : train.row_labels) max_label = std::max(max_label, l);
    for (std::uint32_t l : val.row_labels) max_label = std::max(max_label, l);
    ev.classes = static_cast<std::size_t>(max_label) + 1;
    ev.class_counts.assign(ev.classes, 0);
    for (std::uint32_t l : train.row_labels) ev.class_counts[l]++;

    const ColumnStats stats = column_stats(train);
    ev.usable.resize(ev.cols);
    for (std::size_t c = 0; c < ev.cols; ++c) ev.usable[c] = stats.stddev[c] > 0.0 ? 1 : 0;
    auto standardize = [&](const FeatureMatrix& fm) {
        std::vector<double> out(fm.values.size(), 0.0);
        for (std::size_t r = 0; r < fm.rows; ++r)
            for (std::size_t c = 0; c < fm.cols; ++c)
                if (ev.usable[c]) out[r * fm.cols + c] = (fm.at(r, c) - stats.mean[c]) / stats.stddev[c];
        return out;
    };
    ev.train_values = standardize(train);
    ev.val_values = standardize(val);
    return ev;
}

} // namespace

double wrapper_fitness(const std::vector<std::int8_t>& mask, const FeatureMatrix& train,
                       const FeatureMatrix& val) {
    return make_wrapper_evaluator(train, val).evaluate(mask);
}

double mutation_probability(int n, int max_iterations) {
    if (max_iterations < 1) throw Error("mutation schedule needs max_iterations >= 1");
    if (n < 0 || n > max_iterations) throw Error("iteration outside 0..max_iterations");
    return 0.5 * std::exp(-10.0 * static_cast<double>(n) / static_cast<double>(max_iterations)) +
           0.01;
}

void adaptive_uniform_mutation(Particle& p, double p_m, Rng& rng) {
    if (!(p_m > 0.0 && p_m <= 1.0)) throw Error("mutation probability must lie in (0, 1]");
    if (rng.uniform() >= p_m) return;
    const std::size_t dims = p.position.size();
    std::size_t k = static_cast<std::size_t>(std::floor(static_cast<double>(dims) * p_m));
    if (k < 1) k = 1;
    std::vector<std::size_t> idx(dims);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t t = 0; t < k; ++t) {
        std::size_t j = t + static_cast<std::size_t>(rng.uniform_int(dims - t));
        std::swap(idx[t], idx[j]);
    }
    for (std::size_t t = 0; t < k; ++t) p.position[idx[t]] = rng.uniform(-1.0, 1.0);
    p.mask = mask_from_position(p.position);
}

std::vector<double> crowding_distance(const std::vector<ArchiveMember>& members) {
    const std::size_t n = members.size();
    std::vector<double> dist(n, 0.0);
    if (n == 0) return dist;
    const double inf = std::numeric_limits<double>::infinity();
    auto accumulate_objective = [&](auto value_of) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double va = value_of(members[a]), vb = value_of(members[b]);
            return va < vb || (va == vb && a < b);
        });
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        const double span = value_of(members[order.back()]) - value_of(members[order.front()]);
        if (!(span > 0.0)) return;
        for (std::size_t t = 1; t + 1 < n; ++t) {
            if (std::isinf(dist[order[t]])) continue;
            dist[order[t]] +=
                (value_of(members[order[t + 1]]) - value_of(members[order[t - 1]])) / span;
        }
    };
    accumulate_objective([](const ArchiveMember& m) { return m.objectives.fitness; });
    accumulate_objective([](const ArchiveMember& m) { return m.objectives.subset_ratio; });
    return dist;
}

std::size_t select_gbest_index(const Archive& archive, Rng& rng) {
    const std::size_t n = archive.members.size();
    if (n == 0) throw Error("cannot pick a leader from an empty archive");
    const std::size_t a = static_cast<std::size_t>(rng.uniform_int(n));
    const std::size_t b = static_cast<std::size_t>(rng.uniform_int(n));
    if (archive.crowding[a] > archive.crowding[b]) return a;
    if (archive.crowding[b] > archive.crowding[a]) return b;
    return std::min(a, b);
}

void archive_insert(Archive& archive, ArchiveMember member, int capacity) {
    if (capacity < 1) throw Error("archive capacity must be >= 1");
    for (const ArchiveMember& m : archive.members) {
        if (m.objectives.fitness == member.objectives.fitness &&
            m.objectives.subset_ratio == member.objectives.subset_ratio)
            return; // duplicate point in objective space
        if (dominates(m.objectives, member.objectives)) return;
    }
    std::erase_if(archive.members, [&](const ArchiveMember& m) {
        return dominates(member.objectives, m.objectives);
    });
    archive.members.push_back(std::move(member));
    while (archive.members.size() > static_cast<std::size_t>(capacity)) {
        const std::vector<double> crowd = crowding_distance(archive.members);
        // Least crowded goes first; among ties drop the lower-fitness, then
        // later-added member, so the best-fitness member always survives.
        std::size_t victim = 0;
        for (std::size_t i = 1; i < archive.members.size(); ++i) {
            const bool worse_crowd = crowd[i] < crowd[victim];
            const bool tie_crowd = crowd[i] == crowd[victim];
            const double fi = archive.members[i].objectives.fitness;
            const double fv = archive.members[victim].objectives.fitness;
            if (worse_crowd || (tie_crowd && (fi < fv || (fi == fv && i > victim)))) victim = i;
        }
        archive.members.erase(archive.members.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    archive.crowding = crowding_distance(archive.members);
}

namespace {

std::size_t best_member_index(const Archive& archive) {
    if (archive.members.empty()) throw Error("archive is empty");
    std::size_t best = 0;
    for (std::size_t i = 1; i < archive.members.size(); ++i) {
        const auto& a = archive.members[i].objectives;
        const auto& b = archive.members[best].objectives;
        if (a.fitness > b.fitness ||
            (a.fitness == b.fitness && a.subset_ratio < b.subset_ratio))
            best = i;
    }
    return best;
}

} // namespace

std::vector<std::size_t> SwarmResult::selected_columns() const {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < mask.size(); ++j)
        if (mask[j] > 0) idx.push_back(j);
    return idx;
}

SwarmResult run_swarm(const FeatureMatrix& features, const SwarmConfig& cfg,
                      const SwarmObserver& observer) {
    features.validate();
    const std::size_t dims = features.cols;
    if (dims < 2) throw Error("feature selection needs at least 2 columns");
    cfg.validate(dims);
    const std::size_t swarm = static_cast<std::size_t>(cfg.swarm_size);

    NkTables tables;
    std::vector<std::vector<char>> knowledge;
    WrapperEvaluator wrap;
    if (cfg.fitness_mode == FitnessMode::nk_landscape) {
        tables = make_nk_tables(dims, cfg.interaction_count, cfg.r_seed);
        knowledge.resize(swarm);
        for (std::size_t m = 0; m < swarm; ++m) {
            Rng rng(mix_seed(cfg.r_seed, kStreamKnowledge + m, 0));
            knowledge[m].resize(dims);
            for (std::size_t j = 0; j < dims; ++j)
                knowledge[m][j] = rng.bernoulli(cfg.knowledge_prob) ? 1 : 0;
        }
    } else {
        std::uint32_t max_label = 0;
        for (std::uint32_t l : features.row_labels) max_label = std::max(max_label, l);
        SplitSpec ss;
        ss.train_fraction = 1.0 - cfg.validation_fraction;
        ss.seed = mix_seed(cfg.r_seed, kStreamWrapperSplit, 0);
        ss.stratified = true;
        std::pair<std::vector<std::size_t>, std::vector<std::size_t>> parts;
        try {
            parts = split_indices(features.row_labels, static_cast<std::size_t>(max_label) + 1, ss);
        } catch (const Error&) {
            ss.stratified = false; // tiny classes: fall back to a plain shuffle split
            parts = split_indices(features.row_labels, static_cast<std::size_t>(max_label) + 1, ss);
        }
        wrap = make_wrapper_evaluator(select_rows(features, parts.first),
                                      select_rows(features, parts.second));
    }

    auto true_fitness = [&](const std::vector<std::int8_t>& mask) {
        return cfg.fitness_mode == FitnessMode::nk_landscape ? nk_fitness(mask, tables)
                                                             : wrap.evaluate(mask);
    };
    auto perceived_of = [&](const std::vector<std::int8_t>& mask, double vtrue, std::size_t m) {
        if (cfg.fitness_mode == FitnessMode::nk_landscape && cfg.update_mode == UpdateMode::full)
            return perceived_fitness(mask, tables, knowledge[m]);
        return vtrue;
    };
    auto ratio_of = [&](const std::vector<std::int8_t>& mask) {
        return static_cast<double>(selected_count(mask)) / static_cast<double>(dims);
    };

    std::vector<Particle> particles(swarm);
    std::vector<ObjectiveVector> current(swarm);
    parallel_for(swarm, [&](std::size_t i) {
        Particle& p = particles[i];
        Rng rng(mix_seed(cfg.r_seed, kStreamInit + i, 0));
        p.position.resize(dims);
        for (double& x : p.position) x = rng.uniform(-1.0, 1.0);
        p.velocity.assign(dims, 0.0);
        p.mask = mask_from_position(p.position);
        p.best_position = p.position;
        const double vtrue = true_fitness(p.mask);
        p.best_objectives = {vtrue, ratio_of(p.mask)};
        p.perceived = perceived_of(p.mask, vtrue, i);
        current[i] = p.best_objectives;
    });

    Archive archive;
    for (std::size_t i = 0; i < swarm; ++i)
        archive_insert(archive, {particles[i].position, particles[i].mask, current[i]},
                       cfg.archive_size);

    std::vector<TraceRow> trace;
    trace.reserve(static_cast<std::size_t>(cfg.max_iterations) + 1);
    auto record = [&](int iteration, double p_m) {
        TraceRow row;
        row.iteration = iteration;
        const std::size_t best = best_member_index(archive);
        row.best_fitness = archive.members[best].objectives.fitness;
        double mean = 0.0;
        for (const ObjectiveVector& o : current) mean += o.fitness;
        row.mean_fitness = mean / static_cast<double>(swarm);
        row.archive_size = archive.members.size();
        row.p_m = p_m;
        row.selected = selected_count(archive.members[best].mask);
        trace.push_back(row);
    };
    record(0, mutation_probability(0, cfg.max_iterations));
    if (observer) observer(0, archive);

    for (int n = 1; n <= cfg.max_iterations; ++n) {
        const double p_m = mutation_probability(n, cfg.max_iterations);
        const Archive snapshot = archive;
        parallel_for(swarm, [&](std::size_t i) {
            Particle& p = particles[i];
            Rng rng(mix_seed(cfg.r_seed, kStreamUpdate + i, static_cast<std::uint64_t>(n)));
            const std::size_t g = select_gbest_index(snapshot, rng);
            const std::vector<double>& gb = snapshot.members[g].position;
            for (std::size_t j = 0; j < dims; ++j) {
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                double v;
                if (cfg.update_mode == UpdateMode::plain_pso)
                    v = cfg.inertia * p.velocity[j] + 2.0 * r1 * (p.best_position[j] - p.position[j]) +
                        2.0 * r2 * (gb[j] - p.position[j]);
                else
                    v = cfg.inertia * p.velocity[j] +
                        r1 * p.perceived * (p.best_position[j] - p.position[j]) +
                        r2 * p.perceived * (gb[j] - p.position[j]);
                v = std::clamp(v, -cfg.v_max, cfg.v_max);
                p.velocity[j] = v;
                p.position[j] = std::clamp(p.position[j] + v, -kPositionClamp, kPositionClamp);
            }
            p.mask = mask_from_position(p.position);
            if (cfg.update_mode != UpdateMode::plain_pso) adaptive_uniform_mutation(p, p_m, rng);

            const double vtrue = true_fitness(p.mask);
            const ObjectiveVector obj{vtrue, ratio_of(p.mask)};
            p.perceived = perceived_of(p.mask, vtrue, i);
            current[i] = obj;
            // Personal best: replaced when dominated; among mutually
            // non-dominated pairs the higher fitness wins.
            if (dominates(obj, p.best_objectives) ||
                (!dominates(p.best_objectives, obj) && obj.fitness > p.best_objectives.fitness)) {
                p.best_position = p.position;
                p.best_objectives = obj;
            }
        });
        for (std::size_t i = 0; i < swarm; ++i)
            archive_insert(archive, {particles[i].position, particles[i].mask, current[i]},
                           cfg.archive_size);
        record(n, p_m);
        if (observer) observer(n, archive);
    }

    const std::size_t best = best_member_index(archive);
    SwarmResult result;
    result.mask = archive.members[best].mask;
    result.objectives = archive.members[best].objectives;
    result.trace = std::move(trace);
    return result;
}

void save_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open trace file for writing: " + path.string());
    out << "iter,best_fitness,mean_fitness,archive_size,p_m,selected_count\n";
    for (const TraceRow& row : trace)
        out << row.iteration << ',' << format_g17(row.best_fitness) << ','
            << format_g17(row.mean_fitness) << ',' << row.archive_size << ','
            << format_g17(row.p_m) << ',' << row.selected << '\n';
    if (!out) throw Error("write failed for trace file: " + path.string());
}

void save_mask(const std::filesystem::path& path, const std::vector<std::int8_t>& mask,
               const std::vector<std::string>& tags) {
    if (mask.size() != tags.size()) throw Error("mask and tag counts differ");
    std::ofstream out(path);
    if (!out) throw Error("cannot open mask file for writing: " + path.string());
    for (std::size_t j = 0; j < mask.size(); ++j)
        out << (mask[j] > 0 ? '1' : '0') << ' ' << tags[j] << '\n';
    if (!out) throw Error("write failed for mask file: " + path.string());
}

std::vector<std::int8_t> load_mask(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open mask file: " + path.string());
    std::vector<std::int8_t> mask;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '1')
            mask.push_back(1);
        else if (line[0] == '0')
            mask.push_back(-1);
        else
            throw Error("mask line " + std::to_string(line_no) + " must start with 0 or 1: " +
                        path.string());
    }
    if (mask.empty()) throw Error("mask file has no entries: " + path.string());
    return mask;
}

} // namespace lulc
