#include <logcalc/density.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace logcalc {

DensityValue make_density(Rational exact, std::string provenance) {
    DensityValue d;
    d.value = rat::to_double(exact);
    d.exact = std::move(exact);
    d.provenance = std::move(provenance);
    return d;
}

namespace {

// BFS vertex order per component so each new vertex (after the first of its
// component) sees at least one assigned neighbor; zero weights then prune
// whole assignment subtrees.
std::vector<int> bfs_order(const LabeledGraph& h) {
    std::vector<int> order;
    std::vector<char> seen(h.vertex_count(), 0);
    for (int start = 0; start < h.vertex_count(); ++start) {
        if (seen[start]) continue;
        std::vector<int> queue = {start};
        seen[start] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const int v = queue[q];
            order.push_back(v);
            for (const int u : h.neighbors(v))
                if (!seen[u]) {
                    seen[u] = 1;
                    queue.push_back(u);
                }
        }
    }
    return order;
}

}  // namespace

DensityValue hom_density(const LabeledGraph& h, const StepGraphon& w) {
    const int n = h.vertex_count();
    const int m = w.block_count();
    const std::vector<int> order = bfs_order(h);
    std::vector<int> rank(n, -1);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;

    // prev_nbrs[i] = neighbors of order[i] occurring earlier in the order.
    std::vector<std::vector<int>> prev_nbrs(n);
    for (int i = 0; i < n; ++i)
        for (const int u : h.neighbors(order[i]))
            if (rank[u] < i) prev_nbrs[i].push_back(rank[u]);

    Rational total = 0;
    std::vector<int> assign(n, 0);

    std::function<void(int, const Rational&)> descend = [&](int depth, const Rational& partial) {
        if (depth == n) {
            total += partial;
            return;
        }
        for (int b = 0; b < m; ++b) {
            Rational next = partial * w.node_weight(b);
            for (const int p : prev_nbrs[depth]) {
                next *= w.weight(assign[p], b);
                if (sgn(next) == 0) break;
            }
            if (sgn(next) == 0) continue;
            assign[depth] = b;
            descend(depth + 1, next);
        }
    };
    descend(0, Rational(1));
    return make_density(std::move(total), "brute-force");
}

namespace {

// Bucket elimination over the factor graph whose factors are the edges of H.
// Labeled vertices in `frozen` are never eliminated; they remain dimensions
// of the final table (used by restricted_density with frozen = labels).
struct Eliminator {
    const LabeledGraph& h;
    const StepGraphon& w;
    std::vector<BlockTable> factors;

    Eliminator(const LabeledGraph& graph, const StepGraphon& graphon) : h(graph), w(graphon) {
        for (const auto& [u, v] : h.edges()) {
            std::vector<Rational> vals;
            vals.reserve(static_cast<std::size_t>(w.block_count()) * w.block_count());
            for (int a = 0; a < w.block_count(); ++a)
                for (int b = 0; b < w.block_count(); ++b) vals.push_back(w.weight(a, b));
            factors.emplace_back(std::vector<std::string>{h.name(u), h.name(v)}, w.block_count(),
                                 std::move(vals));
        }
    }

    // Scope size after eliminating `name` (minimum-boundary greedy metric).
    int boundary_after(const std::string& name) const {
        std::set<std::string> scope;
        for (const auto& f : factors)
            if (std::find(f.variables().begin(), f.variables().end(), name) != f.variables().end())
                scope.insert(f.variables().begin(), f.variables().end());
        scope.erase(name);
        return static_cast<int>(scope.size());
    }

    void eliminate(const std::string& name) {
        std::vector<BlockTable> touching;
        std::vector<BlockTable> rest;
        for (auto& f : factors) {
            if (std::find(f.variables().begin(), f.variables().end(), name) != f.variables().end())
                touching.push_back(std::move(f));
            else
                rest.push_back(std::move(f));
        }
        factors = std::move(rest);
        if (touching.empty()) return;  // isolated variable: integrates to 1
        BlockTable merged = std::move(touching.front());
        for (std::size_t i = 1; i < touching.size(); ++i) merged = table_product(merged, touching[i]);
        std::vector<std::string> keep;
        for (const auto& v : merged.variables())
            if (v != name) keep.push_back(v);
        factors.push_back(conditional_expectation(merged, keep, w));
    }

    // Multiplies all remaining factors into one table over `out_vars`
    // (every remaining scope must be a subset of out_vars).
    BlockTable gather(const std::vector<std::string>& out_vars) {
        std::size_t size = 1;
        for (std::size_t i = 0; i < out_vars.size(); ++i) size *= static_cast<std::size_t>(w.block_count());
        BlockTable acc(out_vars, w.block_count(), std::vector<Rational>(size, Rational(1)));
        for (const auto& f : factors) acc = table_product(acc, f);
        // table_product keeps acc's variable order first, so acc's layout
        // already matches out_vars.
        return acc;
    }
};

}  // namespace

DensityValue hom_density_elimination(const LabeledGraph& h, const StepGraphon& w,
                                     const std::optional<std::vector<std::string>>& order) {
    Eliminator elim(h, w);
    std::vector<std::string> remaining = h.vertex_names();
    if (order) {
        auto sorted_given = *order;
        std::sort(sorted_given.begin(), sorted_given.end());
        auto sorted_all = remaining;
        std::sort(sorted_all.begin(), sorted_all.end());
        if (sorted_given != sorted_all)
            throw std::invalid_argument("elimination order must be a permutation of the vertices");
        for (const auto& name : *order) elim.eliminate(name);
    } else {
        while (!remaining.empty()) {
            // Greedy minimum boundary, ties by vertex name.
            std::string best;
            int best_boundary = -1;
            for (const auto& name : remaining) {
                const int b = elim.boundary_after(name);
                if (best_boundary == -1 || b < best_boundary ||
                    (b == best_boundary && name < best)) {
                    best = name;
                    best_boundary = b;
                }
            }
            elim.eliminate(best);
            remaining.erase(std::find(remaining.begin(), remaining.end(), best));
        }
    }
    const BlockTable scalar = elim.gather({});
    return make_density(scalar.at(std::size_t{0}), "elimination");
}

BlockTable restricted_density(const LabeledGraph& h, const StepGraphon& w) {
    const int n = h.label_count();
    if (n == 0)
        throw std::invalid_argument("restricted_density: graph has no labels (use hom_density)");
    Eliminator elim(h, w);

    std::vector<std::string> label_names;
    for (const int v : h.labels()) label_names.push_back(h.name(v));

    std::vector<std::string> remaining;
    for (const int v : h.unlabeled_vertices()) remaining.push_back(h.name(v));
    while (!remaining.empty()) {
        std::string best;
        int best_boundary = -1;
        for (const auto& name : remaining) {
            const int b = elim.boundary_after(name);
            if (best_boundary == -1 || b < best_boundary || (b == best_boundary && name < best)) {
                best = name;
                best_boundary = b;
            }
        }
        elim.eliminate(best);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    }
    return elim.gather(label_names);
}

BlockTable degree_function(const StepGraphon& w) {
    std::vector<Rational> vals(w.block_count());
    for (int i = 0; i < w.block_count(); ++i) {
        Rational d = 0;
        for (int j = 0; j < w.block_count(); ++j) d += w.node_weight(j) * w.weight(i, j);
        vals[i] = d;
    }
    return BlockTable({"x"}, w.block_count(), std::move(vals));
}

DensityValue edge_density(const StepGraphon& w) {
    Rational d = 0;
    for (int i = 0; i < w.block_count(); ++i)
        for (int j = 0; j < w.block_count(); ++j)
            d += w.node_weight(i) * w.node_weight(j) * w.weight(i, j);
    return make_density(std::move(d), "brute-force");
}

}  // namespace logcalc
