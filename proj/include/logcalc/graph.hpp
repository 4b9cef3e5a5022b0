#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace logcalc {

// A finite simple graph with an injective labeling of some vertices by
// 1..n. Vertices are identified by unique string names; internal indices
// follow construction order, serialization order is canonical (sorted).
//
// Immutable after construction. All operations below are pure functions.
class LabeledGraph {
public:
    LabeledGraph() = default;

    // vertices: unique names; edges: pairs of names; labels: vertex names,
    // position = label index - 1. Throws std::invalid_argument on loops,
    // duplicate edges, unknown names, duplicate vertices or label collisions.
    LabeledGraph(std::vector<std::string> vertices,
                 const std::vector<std::pair<std::string, std::string>>& edges,
                 const std::vector<std::string>& labels = {});

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int label_count() const { return static_cast<int>(labels_.size()); }

    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& name(int v) const { return names_.at(v); }
    int index_of(const std::string& name) const;  // throws if unknown

    // Edges as index pairs (i < j), sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    // labels()[i] = vertex index carrying label i+1.
    const std::vector<int>& labels() const { return labels_; }
    bool is_labeled(int v) const;
    std::vector<int> unlabeled_vertices() const;

    bool is_connected() const;
    bool is_tree() const;  // connected and |E| = |V| - 1
    // Two-colorable; a witness side assignment is written to side if given.
    bool is_bipartite(std::vector<int>* side = nullptr) const;

    // Equal as labeled structures (same names, edges, labels).
    bool operator==(const LabeledGraph& other) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> labels_;
};

// A tree together with its in-tree degree vector. Produced by
// validate_labeled_tree and the tree builders; consumed by the tree-weight
// machinery, where degrees[i] is the exponent datum r_i for vertex i.
struct TreeSpec {
    LabeledGraph tree;
    std::vector<int> degrees;  // aligned with tree.vertex_names()
};

// --- constructions ---

// Path with n_edges edges, vertices p0..p{n_edges}. If label_endpoints, the
// endpoints carry labels 1 and 2. Rejects n_edges = 0.
LabeledGraph build_path(int n_edges, bool label_endpoints);

// Cycle c0..c{n-1}, n >= 3.
LabeledGraph build_cycle(int n);

// Star: center x adjacent to v1..vk. Equals build_cfs_graph(k, {}).
LabeledGraph build_star(int k);

// Bipartite graph on {x, y_1..y_m, v_1..v_k}: x adjacent to every v_i and
// y_t adjacent to exactly the v_j with j in attach_sets[t] (1-based).
// Each attachment set must be a non-empty subset of {1..k}.
LabeledGraph build_cfs_graph(int k, const std::vector<std::set<int>>& attach_sets);

// Product in the labeled-graph algebra: disjoint union, merge equally
// labeled vertices, collapse parallel edges. Requires equal label counts.
// Output names are canonical: labels keep h1's names, unlabeled vertices
// become a:<name> / b:<name>, so repeated runs are byte-identical.
LabeledGraph glue(const LabeledGraph& h1, const LabeledGraph& h2);

// Adds a fresh copy of the induced subgraph H[K], identified with the
// original along S (S must be independent in H, S subset of K subset of V).
// Fresh vertices are named by priming: v -> v' (more primes if taken).
LabeledGraph reflect(const LabeledGraph& h, const std::set<std::string>& k_set,
                     const std::set<std::string>& s_set);

// Applies reflect for each (K_i, S_i) in sequence, each validated against
// the original tree (K_i must induce a subtree of T, S_i independent in T).
// The result carries no labels.
LabeledGraph build_reflection_tree(
    const TreeSpec& t,
    const std::vector<std::pair<std::set<std::string>, std::set<std::string>>>& reflections);

// Same graph with labels restricted to `keep` (label indices, 1-based),
// renumbered 1..|keep| preserving order.
LabeledGraph unlabel(const LabeledGraph& h, const std::set<int>& keep);

// Relabels h so that labels 1..|V| enumerate all vertices in index order
// (existing labels are discarded). Used to present "one whole copy labeled"
// smoothness instances.
LabeledGraph label_all(const LabeledGraph& h);

// Puts labels 1,2 on the endpoints of the given edge (by index pair).
LabeledGraph label_edge(const LabeledGraph& h, int u, int v);

// Extracts the subgraph induced on the labeled vertices; throws unless it
// is a tree spanning them. TreeSpec vertices follow label order and keep
// labels 1..n.
TreeSpec validate_labeled_tree(const LabeledGraph& h);

// Homomorphism H -> H[S] fixing S pointwise, found by backtracking with
// most-constrained-vertex-first ordering (ties by vertex name). Exponential
// in the worst case; fine at desk scale. Returns the witness map (vertex
// name -> image name, defined on all of V) when one exists.
struct RetractResult {
    bool is_retract = false;
    std::map<std::string, std::string> witness;
};
RetractResult retract_check(const LabeledGraph& h, const std::set<std::string>& s_set);

// Isomorphism test by backtracking over degree-compatible assignments.
// Small-graph verification utility, not a general service. When
// respect_labels is set, label-i vertices must map to label-i vertices.
bool graph_isomorphic(const LabeledGraph& a, const LabeledGraph& b, bool respect_labels = false);

// Connected vertex subsets of size 1..max_size, as sorted index sets in
// deterministic order. Used for subtree enumeration over trees.
std::vector<std::vector<int>> connected_subsets(const LabeledGraph& g, int max_size);

// All independent subsets (including the empty set) of the given graph,
// restricted to `within` when non-empty.
std::vector<std::vector<int>> independent_subsets(const LabeledGraph& g,
                                                  const std::vector<int>& within = {});

}  // namespace logcalc
