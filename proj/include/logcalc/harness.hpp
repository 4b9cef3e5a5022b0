#pragma once

#include <logcalc/graph.hpp>
#include <logcalc/graphon.hpp>
#include <logcalc/margins.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace logcalc {

// ---------------------------------------------------------------------------
// Randomized/exhaustive property suites: every theorem becomes a falsifiable
// desk-scale check over random step graphons and enumerated graph corpora.
// ---------------------------------------------------------------------------

// Symmetric matrix with rational entries in [floor, max_value] on a grid of
// 1/64 steps, node weights positive and normalized to sum 1 exactly.
// Deterministic per seed.
StepGraphon random_step_graphon(int m, std::uint64_t seed, const Rational& floor,
                                const Rational& max_value);

struct SuiteConfig {
    std::string family;     // blakley-roy | cfs | reflection-tree | edge-glue |
                            // refl-square | unlabel | edge-smooth | tree-weight
    int trials = 1;
    int max_blocks = 3;
    Rational positivity_floor = Rational(1, 10);
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    // When set, instances are drawn from these graphs instead of the family
    // corpus; family preconditions on them raise std::invalid_argument.
    std::vector<LabeledGraph> explicit_graphs;
};

struct TrialRecord {
    int trial = 0;
    std::string instance;  // short human-readable descriptor
    double margin = 0.0;
    bool failed = false;
    bool support_violation = false;
    // Only failing trials keep their full inputs for replay.
    std::optional<LabeledGraph> graph;
    std::optional<StepGraphon> graphon;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<TrialRecord> trials;
    double min_margin = 0.0;
    int failures = 0;
    double elapsed_ms = 0.0;

    bool passed() const { return failures == 0; }
};

// Runs `config.trials` property checks of the named family; per-trial seeds
// are derived as mix_seed(config.seed, trial). Unknown family names throw.
SuiteReport run_suite(const SuiteConfig& config);

// Replays a trial's (graph, graphon) pair under its family check and
// returns the margin. Used to verify failure artifacts reproduce.
double replay_margin(const std::string& family, const LabeledGraph& g, const StepGraphon& w);

// ---------------------------------------------------------------------------
// Perturbation probes around the constant graphon.
// ---------------------------------------------------------------------------

// A symmetric direction matrix with zero mean under its node weights, so
// base + eps * direction keeps edge density exactly `base` for every eps.
struct Direction {
    std::vector<Rational> node_weights;
    std::vector<std::vector<Rational>> matrix;
};

// Random zero-mean direction with entries on the 1/64 grid in [-1/2, 1/2]
// before mean correction; uniform node weights.
Direction random_direction(int m, std::uint64_t seed);

// Evaluates sidorenko_margin(H, base + eps * direction) per epsilon.
// Throws if the direction is not zero-mean or an entry would go negative.
std::vector<MarginReport> perturbation_scan(const LabeledGraph& h, const Rational& base,
                                            const Direction& direction,
                                            const std::vector<Rational>& epsilons);

// ---------------------------------------------------------------------------
// Conjecture probe: retract + Sidorenko does not (provably) imply smooth;
// negative margins here are recorded as evidence, never as failures.
// ---------------------------------------------------------------------------
struct ProbeReport {
    double min_margin = 0.0;
    int trials = 0;
    bool conjecture_consistent = true;  // min_margin >= -1e-9
    std::vector<TrialRecord> records;
};
ProbeReport retract_smoothness_probe(const LabeledGraph& h, int trials, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Corpora.
// ---------------------------------------------------------------------------

// All non-isomorphic trees on 1..max_vertices vertices (Pruefer enumeration
// deduplicated by AHU canonical codes), unlabeled.
std::vector<LabeledGraph> enumerate_trees(int max_vertices);

// Reflection trees from trees <= max_tree_vertices with at most
// max_reflections reflections of subtrees <= max_subtree vertices; results
// capped at <= max_vertices vertices, deduplicated, deterministic order.
std::vector<LabeledGraph> reflection_tree_corpus(int max_tree_vertices, int max_subtree,
                                                 int max_reflections, int max_vertices);

// Even cycles C4..C_max plus a small canonical CFS family (k <= max_k).
std::vector<LabeledGraph> edge_glue_corpus(int max_cycle, int max_k);

// All symmetric 0/1 matrices on exactly m blocks as uniform-weight step
// graphons (2^(m(m+1)/2) of them, including the all-zero one).
std::vector<StepGraphon> binary_graphons(int m);

}  // namespace logcalc
