#pragma once

#include <logcalc/rational.hpp>

#include <vector>

namespace logcalc {

// A step graphon: m blocks with positive node weights summing to 1 exactly
// and a symmetric non-negative m x m weight matrix. Finite graphs embed as
// 0/1 matrices with uniform node weights. Entries are not required to be
// <= 1; only non-negativity is enforced.
class StepGraphon {
public:
    StepGraphon(std::vector<Rational> node_weights, std::vector<std::vector<Rational>> weights);

    int block_count() const { return m_; }
    const Rational& node_weight(int i) const { return node_weights_.at(i); }
    const std::vector<Rational>& node_weights() const { return node_weights_; }
    const Rational& weight(int i, int j) const { return weights_.at(i).at(j); }
    const std::vector<std::vector<Rational>>& matrix() const { return weights_; }

    // All matrix entries strictly positive.
    bool strictly_positive() const { return strictly_positive_; }

    bool operator==(const StepGraphon& other) const {
        return node_weights_ == other.node_weights_ && weights_ == other.weights_;
    }

private:
    int m_ = 0;
    std::vector<Rational> node_weights_;
    std::vector<std::vector<Rational>> weights_;
    bool strictly_positive_ = false;
};

// Uniform node weights, matrix entries given as 0/1 flags.
StepGraphon graphon_from_binary(const std::vector<std::vector<int>>& adj);

// One block of weight 1 with the single entry c.
StepGraphon constant_graphon(const Rational& c);

// Block set = k-tuples of blocks with product node weights; weight matrix
// entry = product of coordinate-wise entries. Rejects k = 0.
StepGraphon tensor_power(const StepGraphon& g, int k);

}  // namespace logcalc
