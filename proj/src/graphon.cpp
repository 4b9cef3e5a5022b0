#include <logcalc/graphon.hpp>

#include <stdexcept>

namespace logcalc {

StepGraphon::StepGraphon(std::vector<Rational> node_weights,
                         std::vector<std::vector<Rational>> weights)
    : m_(static_cast<int>(node_weights.size())),
      node_weights_(std::move(node_weights)),
      weights_(std::move(weights)) {
    if (m_ == 0) throw std::invalid_argument("step graphon needs at least one block");
    Rational total = 0;
    for (int i = 0; i < m_; ++i) {
        if (sgn(node_weights_[i]) <= 0)
            throw std::invalid_argument("node weight " + std::to_string(i) + " must be positive");
        total += node_weights_[i];
    }
    if (total != 1)
        throw std::invalid_argument("node weights sum to " + rat::to_string(total) + ", expected 1");
    if (static_cast<int>(weights_.size()) != m_)
        throw std::invalid_argument("weight matrix must have one row per block");
    strictly_positive_ = true;
    for (int i = 0; i < m_; ++i) {
        if (static_cast<int>(weights_[i].size()) != m_)
            throw std::invalid_argument("weight matrix row " + std::to_string(i) + " has wrong size");
        for (int j = 0; j < m_; ++j) {
            if (sgn(weights_[i][j]) < 0)
                throw std::invalid_argument("negative weight at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            if (sgn(weights_[i][j]) == 0) strictly_positive_ = false;
            if (weights_[i][j] != weights_[j][i])
                throw std::invalid_argument("matrix not symmetric at (" + std::to_string(i) + "," +
                                            std::to_string(j) + "): " + rat::to_string(weights_[i][j]) +
                                            " vs " + rat::to_string(weights_[j][i]));
        }
    }
}

StepGraphon graphon_from_binary(const std::vector<std::vector<int>>& adj) {
    const int m = static_cast<int>(adj.size());
    std::vector<Rational> p(m, Rational(1, m <= 0 ? 1 : m));
    std::vector<std::vector<Rational>> w(m, std::vector<Rational>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) w[i][j] = adj[i][j] ? 1 : 0;
    return StepGraphon(std::move(p), std::move(w));
}

StepGraphon constant_graphon(const Rational& c) {
    return StepGraphon({Rational(1)}, {{c}});
}

StepGraphon tensor_power(const StepGraphon& g, int k) {
    if (k < 1) throw std::invalid_argument("tensor_power: k must be positive");
    if (k == 1) return g;
    const int m = g.block_count();
    int blocks = 1;
    for (int i = 0; i < k; ++i) blocks *= m;

    const auto digits = [&](int idx) {
        std::vector<int> out(k);
        for (int i = k - 1; i >= 0; --i) {
            out[i] = idx % m;
            idx /= m;
        }
        return out;
    };

    std::vector<Rational> p(blocks);
    for (int b = 0; b < blocks; ++b) {
        Rational w = 1;
        for (const int d : digits(b)) w *= g.node_weight(d);
        p[b] = w;
    }
    std::vector<std::vector<Rational>> mat(blocks, std::vector<Rational>(blocks));
    for (int a = 0; a < blocks; ++a) {
        const auto da = digits(a);
        for (int b = 0; b < blocks; ++b) {
            const auto db = digits(b);
            Rational w = 1;
            for (int i = 0; i < k; ++i) w *= g.weight(da[i], db[i]);
            mat[a][b] = w;
        }
    }
    return StepGraphon(std::move(p), std::move(mat));
}

}  // namespace logcalc
