#pragma once

#include <logcalc/graphon.hpp>
#include <logcalc/rational.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace logcalc {

// A function of k point variables over an m-block space, stored as a dense
// table over the m^k block tuples in lexicographic order (first variable is
// the most significant digit). Tables are tagged exact (rational) or
// approximate (long double, 64-bit mantissa on x86-64).
class BlockTable {
public:
    BlockTable(std::vector<std::string> vars, int blocks, std::vector<Rational> values);
    BlockTable(std::vector<std::string> vars, int blocks, std::vector<long double> values);

    static BlockTable constant(const Rational& value, int blocks);

    bool exact() const { return exact_; }
    int arity() const { return static_cast<int>(vars_.size()); }
    int blocks() const { return blocks_; }
    std::size_t size() const { return size_; }
    const std::vector<std::string>& variables() const { return vars_; }

    const Rational& at(std::size_t index) const;
    const Rational& at(const std::vector<int>& tuple) const;
    long double approx_at(std::size_t index) const;

    const std::vector<Rational>& values() const;

    std::size_t index_of(const std::vector<int>& tuple) const;
    std::vector<int> tuple_of(std::size_t index) const;

    // Iterates tuples in index order; `tuple` is reused between calls.
    void for_each(const std::function<void(const std::vector<int>& tuple, std::size_t index)>& fn) const;

    bool operator==(const BlockTable& other) const;

private:
    std::vector<std::string> vars_;
    int blocks_ = 1;
    std::size_t size_ = 1;
    bool exact_ = true;
    std::vector<Rational> exact_values_;
    std::vector<long double> approx_values_;
};

// Pointwise product (variables merged by name, deterministic order: vars of
// lhs then new vars of rhs). Exact tables only.
BlockTable table_product(const BlockTable& a, const BlockTable& b);

// Integrates out all variables NOT in `keep` against the node weights of w.
// keep preserves the table's own variable order. Unknown names throw.
// E(g) = E(E_S(g)) holds exactly on exact tables.
BlockTable conditional_expectation(const BlockTable& g, const std::vector<std::string>& keep,
                                   const StepGraphon& w);

// Full expectation against node weights (arity-0 contraction), exact path.
Rational table_expectation(const BlockTable& g, const StepGraphon& w);

}  // namespace logcalc
