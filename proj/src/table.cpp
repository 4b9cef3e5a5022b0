#include <logcalc/table.hpp>

#include <algorithm>
#include <stdexcept>

namespace logcalc {

namespace {

std::size_t pow_size(int blocks, std::size_t arity) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < arity; ++i) s *= static_cast<std::size_t>(blocks);
    return s;
}

}  // namespace

BlockTable::BlockTable(std::vector<std::string> vars, int blocks, std::vector<Rational> values)
    : vars_(std::move(vars)), blocks_(blocks), exact_(true), exact_values_(std::move(values)) {
    if (blocks_ < 1) throw std::invalid_argument("BlockTable: blocks must be positive");
    size_ = pow_size(blocks_, vars_.size());
    if (exact_values_.size() != size_)
        throw std::invalid_argument("BlockTable: expected " + std::to_string(size_) + " values, got " +
                                    std::to_string(exact_values_.size()));
}

BlockTable::BlockTable(std::vector<std::string> vars, int blocks, std::vector<long double> values)
    : vars_(std::move(vars)), blocks_(blocks), exact_(false), approx_values_(std::move(values)) {
    if (blocks_ < 1) throw std::invalid_argument("BlockTable: blocks must be positive");
    size_ = pow_size(blocks_, vars_.size());
    if (approx_values_.size() != size_)
        throw std::invalid_argument("BlockTable: expected " + std::to_string(size_) + " values, got " +
                                    std::to_string(approx_values_.size()));
}

BlockTable BlockTable::constant(const Rational& value, int blocks) {
    return BlockTable({}, blocks, std::vector<Rational>{value});
}

const Rational& BlockTable::at(std::size_t index) const {
    if (!exact_) throw std::logic_error("BlockTable: exact access on approximate table");
    return exact_values_.at(index);
}

const Rational& BlockTable::at(const std::vector<int>& tuple) const { return at(index_of(tuple)); }

long double BlockTable::approx_at(std::size_t index) const {
    return exact_ ? rat::to_long_double(exact_values_.at(index)) : approx_values_.at(index);
}

const std::vector<Rational>& BlockTable::values() const {
    if (!exact_) throw std::logic_error("BlockTable: exact access on approximate table");
    return exact_values_;
}

std::size_t BlockTable::index_of(const std::vector<int>& tuple) const {
    if (tuple.size() != vars_.size()) throw std::invalid_argument("BlockTable: tuple arity mismatch");
    std::size_t idx = 0;
    for (const int b : tuple) {
        if (b < 0 || b >= blocks_) throw std::out_of_range("BlockTable: block out of range");
        idx = idx * static_cast<std::size_t>(blocks_) + static_cast<std::size_t>(b);
    }
    return idx;
}

std::vector<int> BlockTable::tuple_of(std::size_t index) const {
    std::vector<int> tuple(vars_.size());
    for (int i = static_cast<int>(vars_.size()) - 1; i >= 0; --i) {
        tuple[i] = static_cast<int>(index % static_cast<std::size_t>(blocks_));
        index /= static_cast<std::size_t>(blocks_);
    }
    return tuple;
}

void BlockTable::for_each(
    const std::function<void(const std::vector<int>&, std::size_t)>& fn) const {
    std::vector<int> tuple(vars_.size(), 0);
    for (std::size_t idx = 0; idx < size_; ++idx) {
        fn(tuple, idx);
        for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
            if (++tuple[i] < blocks_) break;
            tuple[i] = 0;
        }
    }
}

bool BlockTable::operator==(const BlockTable& other) const {
    if (vars_ != other.vars_ || blocks_ != other.blocks_ || exact_ != other.exact_) return false;
    return exact_ ? exact_values_ == other.exact_values_ : approx_values_ == other.approx_values_;
}

BlockTable table_product(const BlockTable& a, const BlockTable& b) {
    if (!a.exact() || !b.exact()) throw std::logic_error("table_product: exact tables only");
    if (a.blocks() != b.blocks()) throw std::invalid_argument("table_product: block count mismatch");
    std::vector<std::string> vars = a.variables();
    for (const auto& v : b.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

    // Position of each output variable inside a and b (or -1).
    const auto position = [](const std::vector<std::string>& vs, const std::string& name) {
        const auto it = std::find(vs.begin(), vs.end(), name);
        return it == vs.end() ? -1 : static_cast<int>(it - vs.begin());
    };
    std::vector<int> pa, pb;
    for (const auto& v : vars) {
        pa.push_back(position(a.variables(), v));
        pb.push_back(position(b.variables(), v));
    }

    const int m = a.blocks();
    std::vector<Rational> values;
    std::vector<int> ta(a.arity()), tb(b.arity());
    std::vector<int> tuple(vars.size(), 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) total *= static_cast<std::size_t>(m);
    values.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (pa[i] >= 0) ta[pa[i]] = tuple[i];
            if (pb[i] >= 0) tb[pb[i]] = tuple[i];
        }
        values[idx] = a.at(a.index_of(ta)) * b.at(b.index_of(tb));
        for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
            if (++tuple[i] < m) break;
            tuple[i] = 0;
        }
    }
    return BlockTable(std::move(vars), m, std::move(values));
}

BlockTable conditional_expectation(const BlockTable& g, const std::vector<std::string>& keep,
                                   const StepGraphon& w) {
    if (g.blocks() != w.block_count())
        throw std::invalid_argument("conditional_expectation: block count mismatch");
    for (const auto& name : keep)
        if (std::find(g.variables().begin(), g.variables().end(), name) == g.variables().end())
            throw std::invalid_argument("conditional_expectation: unknown variable " + name);

    std::vector<std::string> out_vars;
    std::vector<int> kept_pos, dropped_pos;
    for (int i = 0; i < g.arity(); ++i) {
        const auto& v = g.variables()[i];
        if (std::find(keep.begin(), keep.end(), v) != keep.end()) {
            out_vars.push_back(v);
            kept_pos.push_back(i);
        } else {
            dropped_pos.push_back(i);
        }
    }

    const int m = g.blocks();
    std::size_t out_size = 1;
    for (std::size_t i = 0; i < out_vars.size(); ++i) out_size *= static_cast<std::size_t>(m);

    if (g.exact()) {
        std::vector<Rational> out(out_size, Rational(0));
        g.for_each([&](const std::vector<int>& tuple, std::size_t idx) {
            Rational weight = 1;
            for (const int pos : dropped_pos) weight *= w.node_weight(tuple[pos]);
            std::size_t out_idx = 0;
            for (const int pos : kept_pos)
                out_idx = out_idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(tuple[pos]);
            out[out_idx] += weight * g.at(idx);
        });
        return BlockTable(std::move(out_vars), m, std::move(out));
    }
    std::vector<long double> out(out_size, 0.0L);
    g.for_each([&](const std::vector<int>& tuple, std::size_t idx) {
        long double weight = 1.0L;
        for (const int pos : dropped_pos) weight *= rat::to_long_double(w.node_weight(tuple[pos]));
        std::size_t out_idx = 0;
        for (const int pos : kept_pos)
            out_idx = out_idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(tuple[pos]);
        out[out_idx] += weight * g.approx_at(idx);
    });
    return BlockTable(std::move(out_vars), m, std::move(out));
}

Rational table_expectation(const BlockTable& g, const StepGraphon& w) {
    const BlockTable scalar = conditional_expectation(g, {}, w);
    return scalar.at(std::size_t{0});
}

}  // namespace logcalc
