#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "lulc/feature_matrix.hpp"
#include "lulc/rng.hpp"

namespace lulc {

enum class FitnessMode { wrapper, nk_landscape };
enum class UpdateMode {
    full,      // group-perceived fitness drives the update, mutation on
    plain_pso, // classic update with c1 = c2 = 2, mutation off
    hgo_off    // perceived fitness replaced by the true fitness, mutation on
};

FitnessMode fitness_mode_from_string(const std::string& s);
std::string to_string(FitnessMode mode);
UpdateMode update_mode_from_string(const std::string& s);
std::string to_string(UpdateMode mode);

/// Sigmoid saturation bound for positions.
inline constexpr double kPositionClamp = 6.0;

struct SwarmConfig {
    int swarm_size = 30;      // particles
    int archive_size = 20;    // non-dominated store capacity
    int max_iterations = 100; // update rounds after initialization
    double inertia = 0.7;
    std::uint64_t r_seed = 0;
    double knowledge_prob = 0.8; // chance a member knows a contribution term
    int interaction_count = 4;   // neighbors per contribution term
    double v_max = 2.0;
    FitnessMode fitness_mode = FitnessMode::wrapper;
    UpdateMode update_mode = UpdateMode::full;
    double validation_fraction = 0.3; // wrapper mode internal holdout

    void validate(std::size_t dims) const;
};

struct ObjectiveVector {
    double fitness = 0.0;      // maximized
    double subset_ratio = 0.0; // minimized
};

/// a dominates b: no worse in both objectives, strictly better in one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<std::int8_t> mask; // +1 selected, -1 dropped
    std::vector<double> best_position;
    ObjectiveVector best_objectives;
    double perceived = 0.0; // drives the velocity update
};

/// mask[j] = +1 iff sigmoid(position[j]) >= 0.5, i.e. position[j] >= 0.
std::vector<std::int8_t> mask_from_position(const std::vector<double>& position);
std::size_t selected_count(const std::vector<std::int8_t>& mask);

struct ArchiveMember {
    std::vector<double> position;
    std::vector<std::int8_t> mask;
    ObjectiveVector objectives;
};

struct Archive {
    std::vector<ArchiveMember> members;
    std::vector<double> crowding;
};

/// Additive landscape with seeded contribution tables: term j depends on the
/// j-th decision and interaction_count fixed neighbor decisions, with one
/// uniform [0,1] table value per decision combination.
struct NkTables {
    std::size_t dims = 0;
    int interaction_count = 0;
    std::vector<std::vector<std::size_t>> neighbors; // per term, S indices != j
    std::vector<std::vector<double>> table;          // per term, 2^(S+1) entries

    double contribution(std::size_t j, const std::vector<std::int8_t>& mask) const;
};

NkTables make_nk_tables(std::size_t dims, int interaction_count, std::uint64_t seed);

/// Mean of all contribution terms.
double nk_fitness(const std::vector<std::int8_t>& mask, const NkTables& tables);

/// Ratio of known contribution terms only; all-unknown gives 0. With full
/// knowledge this equals nk_fitness bit-for-bit.
double perceived_fitness(const std::vector<std::int8_t>& mask, const NkTables& tables,
                         const std::vector<char>& member_knowledge);

/// Validation accuracy of a nearest-centroid classifier over the selected,
/// per-column-standardized features (training statistics; zero-variance
/// columns are skipped). Empty effective selection gives 0.
double wrapper_fitness(const std::vector<std::int8_t>& mask, const FeatureMatrix& train,
                       const FeatureMatrix& val);

/// p_m = 0.5 * exp(-10 n / N) + 0.01.
double mutation_probability(int n, int max_iterations);

/// With probability p_m, re-draws max(1, floor(D * p_m)) distinct position
/// coordinates uniform in [-1, 1] and re-derives the mask.
void adaptive_uniform_mutation(Particle& p, double p_m, Rng& rng);

/// NSGA-II crowding over (fitness, subset_ratio): boundary members get
/// +infinity, interior members accumulate normalized neighbor gaps.
std::vector<double> crowding_distance(const std::vector<ArchiveMember>& members);

/// Binary tournament: two uniform draws; larger crowding wins, ties go to the
/// lower index.
std::size_t select_gbest_index(const Archive& archive, Rng& rng);

/// Inserts a candidate unless dominated or duplicating an existing objective
/// vector; evicts members the candidate dominates; truncates to capacity by
/// dropping minimum-crowding members (ties: lower fitness, then higher index,
/// which keeps the best-fitness member alive).
void archive_insert(Archive& archive, ArchiveMember member, int capacity);

struct TraceRow {
    int iteration = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    std::size_t archive_size = 0;
    double p_m = 0.0;
    std::size_t selected = 0;
};

struct SwarmResult {
    std::vector<std::int8_t> mask;
    ObjectiveVector objectives;
    std::vector<TraceRow> trace; // max_iterations + 1 rows, first is the init state
    std::vector<std::size_t> selected_columns() const;
};

/// Called after archive maintenance with the iteration number (0 = initial
/// population) and the current archive state.
using SwarmObserver = std::function<void(int, const Archive&)>;

/// Full optimization loop: init, then per iteration velocity/position update,
/// mutation, evaluation, personal-best and archive maintenance. Deterministic
/// in (features, cfg) regardless of worker count. Returns the archive member
/// with the highest fitness (ties: smaller subset_ratio, then lower index).
SwarmResult run_swarm(const FeatureMatrix& features, const SwarmConfig& cfg,
                      const SwarmObserver& observer = {});

void save_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace);

/// One "0 tag" / "1 tag" line per column.
void save_mask(const std::filesystem::path& path, const std::vector<std::int8_t>& mask,
               const std::vector<std::string>& tags);
std::vector<std::int8_t> load_mask(const std::filesystem::path& path);

} // namespace lulc
