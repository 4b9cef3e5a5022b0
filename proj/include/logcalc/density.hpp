#pragma once

#include <logcalc/graph.hpp>
#include <logcalc/graphon.hpp>
#include <logcalc/table.hpp>

#include <optional>
#include <string>
#include <vector>

namespace logcalc {

// A homomorphism density value. Densities over rational step graphons are
// exact; the float rendering is derived from the rational.
struct DensityValue {
    Rational exact;
    double value = 0.0;
    std::string provenance;  // "brute-force" or "elimination"
};

DensityValue make_density(Rational exact, std::string provenance);

// t(H,W): sum over all block assignments of (prod node weights)(prod edge
// weights). Labels are ignored. Direct enumeration with prefix products and
// zero pruning; the oracle the elimination evaluator is checked against.
DensityValue hom_density(const LabeledGraph& h, const StepGraphon& w);

// Same value via bucket elimination. Default order is greedy minimum
// boundary with ties broken by vertex name; correctness never depends on
// the order, and the result equals hom_density bit for bit.
DensityValue hom_density_elimination(const LabeledGraph& h, const StepGraphon& w,
                                     const std::optional<std::vector<std::string>>& order = std::nullopt);

// Restricted density t_S(H,W): for each block assignment of the labeled
// vertices, the conditional density integrating only the unlabeled ones.
// Variables follow label order. Requires at least one label.
BlockTable restricted_density(const LabeledGraph& h, const StepGraphon& w);

// d(x) = E_x(W(x,y)) as an arity-1 table with variable "x".
BlockTable degree_function(const StepGraphon& w);

// d = E(W).
DensityValue edge_density(const StepGraphon& w);

}  // namespace logcalc
