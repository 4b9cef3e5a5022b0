#include <logcalc/graph.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace logcalc {

namespace {

std::pair<int, int> ordered(int u, int v) { return u < v ? std::make_pair(u, v) : std::make_pair(v, u); }

}  // namespace

LabeledGraph::LabeledGraph(std::vector<std::string> vertices,
                           const std::vector<std::pair<std::string, std::string>>& edges,
                           const std::vector<std::string>& labels)
    : names_(std::move(vertices)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (names_[i].empty()) throw std::invalid_argument("empty vertex name");
        if (!index_.emplace(names_[i], i).second)
            throw std::invalid_argument("duplicate vertex name: " + names_[i]);
    }
    adj_.assign(names_.size(), {});
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : edges) {
        const int u = index_of(a);
        const int v = index_of(b);
        if (u == v) throw std::invalid_argument("loop edge at vertex: " + a);
        if (!seen.insert(ordered(u, v)).second)
            throw std::invalid_argument("duplicate edge: " + a + " -- " + b);
    }
    edges_.assign(seen.begin(), seen.end());
    for (const auto& [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

    std::set<int> used;
    labels_.reserve(labels.size());
    for (const auto& name : labels) {
        const int v = index_of(name);
        if (!used.insert(v).second)
            throw std::invalid_argument("vertex labeled twice: " + name);
        labels_.push_back(v);
    }
}

int LabeledGraph::index_of(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex: " + name);
    return it->second;
}

bool LabeledGraph::has_edge(int u, int v) const {
    const auto& nbrs = adj_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool LabeledGraph::is_labeled(int v) const {
    return std::find(labels_.begin(), labels_.end(), v) != labels_.end();
}

std::vector<int> LabeledGraph::unlabeled_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count(); ++v)
        if (!is_labeled(v)) out.push_back(v);
    return out;
}

bool LabeledGraph::is_connected() const {
    if (vertex_count() == 0) return true;
    std::vector<char> seen(vertex_count(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const int u : adj_[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                q.push(u);
            }
    }
    return reached == vertex_count();
}

bool LabeledGraph::is_tree() const {
    return vertex_count() >= 1 && edge_count() == vertex_count() - 1 && is_connected();
}

bool LabeledGraph::is_bipartite(std::vector<int>* side) const {
    std::vector<int> color(vertex_count(), -1);
    for (int start = 0; start < vertex_count(); ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (const int u : adj_[v]) {
                if (color[u] == -1) {
                    color[u] = 1 - color[v];
                    q.push(u);
                } else if (color[u] == color[v]) {
                    return false;
                }
            }
        }
    }
    if (side) *side = color;
    return true;
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
    return names_ == other.names_ && edges_ == other.edges_ && labels_ == other.labels_;
}

// --- constructions ---

LabeledGraph build_path(int n_edges, bool label_endpoints) {
    if (n_edges < 1) throw std::invalid_argument("build_path: need at least one edge");
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i <= n_edges; ++i) names.push_back("p" + std::to_string(i));
    for (int i = 0; i < n_edges; ++i) edges.emplace_back(names[i], names[i + 1]);
    std::vector<std::string> labels;
    if (label_endpoints) labels = {names.front(), names.back()};
    return LabeledGraph(names, edges, labels);
}

LabeledGraph build_cycle(int n) {
    if (n < 3) throw std::invalid_argument("build_cycle: need at least 3 vertices");
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
    for (int i = 0; i < n; ++i) edges.emplace_back(names[i], names[(i + 1) % n]);
    return LabeledGraph(names, edges);
}

LabeledGraph build_star(int k) { return build_cfs_graph(k, {}); }

LabeledGraph build_cfs_graph(int k, const std::vector<std::set<int>>& attach_sets) {
    if (k < 1) throw std::invalid_argument("build_cfs_graph: k must be positive");
    std::vector<std::string> names = {"x"};
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 1; i <= k; ++i) {
        names.push_back("v" + std::to_string(i));
        edges.emplace_back("x", names.back());
    }
    for (std::size_t t = 0; t < attach_sets.size(); ++t) {
        const auto& s = attach_sets[t];
        if (s.empty())
            throw std::invalid_argument("build_cfs_graph: attachment set " + std::to_string(t + 1) +
                                        " is empty");
        const std::string y = "y" + std::to_string(t + 1);
        names.push_back(y);
        for (const int j : s) {
            if (j < 1 || j > k)
                throw std::invalid_argument("build_cfs_graph: attachment index out of range");
            edges.emplace_back(y, "v" + std::to_string(j));
        }
    }
    return LabeledGraph(names, edges);
}

LabeledGraph glue(const LabeledGraph& h1, const LabeledGraph& h2) {
    if (h1.label_count() != h2.label_count())
        throw std::invalid_argument("glue: label counts differ");
    const int n = h1.label_count();

    // Canonical output names: labeled vertices keep h1's names, unlabeled
    // ones are prefixed by side so repeated gluings cannot collide.
    auto merged_name = [&](const LabeledGraph& g, int v, const char* prefix) -> std::string {
        for (int i = 0; i < n; ++i)
            if (g.labels()[i] == v) return h1.name(h1.labels()[i]);
        return std::string(prefix) + ":" + g.name(v);
    };

    std::vector<std::string> names;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(h1.name(h1.labels()[i]));
    for (int v = 0; v < h1.vertex_count(); ++v) names.push_back(merged_name(h1, v, "a"));
    for (int v = 0; v < h2.vertex_count(); ++v) {
        if (h2.is_labeled(v)) continue;  // merged into h1's labeled vertex
        names.push_back(merged_name(h2, v, "b"));
    }

    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : h1.edges()) edges.emplace_back(merged_name(h1, u, "a"), merged_name(h1, v, "a"));
    for (const auto& [u, v] : h2.edges()) {
        const std::string a = merged_name(h2, u, "b");
        const std::string b = merged_name(h2, v, "b");
        // Parallel edges collapse; a loop would need two equally labeled
        // endpoints, which injectivity of labels rules out.
        if (a == b) throw std::logic_error("glue: merged edge became a loop");
        bool dup = false;
        for (const auto& [x, y] : edges)
            if ((x == a && y == b) || (x == b && y == a)) {
                dup = true;
                break;
            }
        if (!dup) edges.emplace_back(a, b);
    }
    return LabeledGraph(names, edges, labels);
}

LabeledGraph reflect(const LabeledGraph& h, const std::set<std::string>& k_set,
                     const std::set<std::string>& s_set) {
    std::vector<int> k_idx;
    for (const auto& name : k_set) k_idx.push_back(h.index_of(name));  // throws if K not in V
    for (const auto& name : s_set)
        if (!k_set.count(name))
            throw std::invalid_argument("reflect: S must be a subset of K (missing " + name + ")");
    // S independent in H.
    for (const auto& a : s_set)
        for (const auto& b : s_set)
            if (a < b && h.has_edge(h.index_of(a), h.index_of(b)))
                throw std::invalid_argument("reflect: S is not independent (" + a + " -- " + b + ")");

    std::set<std::string> taken(h.vertex_names().begin(), h.vertex_names().end());
    std::map<std::string, std::string> copy_name;
    for (const auto& name : k_set) {
        if (s_set.count(name)) {
            copy_name[name] = name;  // identified
        } else {
            std::string fresh = name + "'";
            while (taken.count(fresh)) fresh += "'";
            taken.insert(fresh);
            copy_name[name] = fresh;
        }
    }

    std::vector<std::string> names = h.vertex_names();
    for (const auto& name : k_set)
        if (!s_set.count(name)) names.push_back(copy_name[name]);

    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : h.edges()) edges.emplace_back(h.name(u), h.name(v));
    for (const auto& [u, v] : h.edges()) {
        const std::string& nu = h.name(u);
        const std::string& nv = h.name(v);
        if (!k_set.count(nu) || !k_set.count(nv)) continue;  // copy only H[K]
        const std::string a = copy_name[nu];
        const std::string b = copy_name[nv];
        bool dup = false;
        for (const auto& [x, y] : edges)
            if ((x == a && y == b) || (x == b && y == a)) {
                dup = true;
                break;
            }
        if (!dup) edges.emplace_back(a, b);
    }

    std::vector<std::string> labels;
    for (const int v : h.labels()) labels.push_back(h.name(v));
    return LabeledGraph(names, edges, labels);
}

LabeledGraph build_reflection_tree(
    const TreeSpec& t,
    const std::vector<std::pair<std::set<std::string>, std::set<std::string>>>& reflections) {
    const LabeledGraph& tree = t.tree;
    if (!tree.is_tree()) throw std::invalid_argument("build_reflection_tree: not a tree");

    LabeledGraph result = unlabel(tree, {});
    for (const auto& [k_set, s_set] : reflections) {
        // Validate against the original tree: K must induce a subtree of T.
        std::vector<std::string> k_names(k_set.begin(), k_set.end());
        std::vector<std::pair<std::string, std::string>> k_edges;
        for (const auto& [u, v] : tree.edges())
            if (k_set.count(tree.name(u)) && k_set.count(tree.name(v)))
                k_edges.emplace_back(tree.name(u), tree.name(v));
        const LabeledGraph induced(k_names, k_edges);
        if (!induced.is_tree())
            throw std::invalid_argument("build_reflection_tree: K does not induce a subtree");
        for (const auto& a : s_set)
            for (const auto& b : s_set)
                if (a < b && tree.has_edge(tree.index_of(a), tree.index_of(b)))
                    throw std::invalid_argument("build_reflection_tree: S not independent in T");
        result = reflect(result, k_set, s_set);
    }
    return result;
}

LabeledGraph unlabel(const LabeledGraph& h, const std::set<int>& keep) {
    std::vector<std::string> labels;
    for (const int idx : keep) {
        if (idx < 1 || idx > h.label_count())
            throw std::invalid_argument("unlabel: label index out of range: " + std::to_string(idx));
        labels.push_back(h.name(h.labels()[idx - 1]));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : h.edges()) edges.emplace_back(h.name(u), h.name(v));
    return LabeledGraph(h.vertex_names(), edges, labels);
}

LabeledGraph label_all(const LabeledGraph& h) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : h.edges()) edges.emplace_back(h.name(u), h.name(v));
    return LabeledGraph(h.vertex_names(), edges, h.vertex_names());
}

LabeledGraph label_edge(const LabeledGraph& h, int u, int v) {
    if (!h.has_edge(u, v)) throw std::invalid_argument("label_edge: not an edge");
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [a, b] : h.edges()) edges.emplace_back(h.name(a), h.name(b));
    return LabeledGraph(h.vertex_names(), edges, {h.name(u), h.name(v)});
}

TreeSpec validate_labeled_tree(const LabeledGraph& h) {
    const int n = h.label_count();
    if (n == 0) throw std::invalid_argument("validate_labeled_tree: graph has no labels");
    std::vector<std::string> names;
    std::vector<std::string> labels;
    for (const int v : h.labels()) {
        names.push_back(h.name(v));
        labels.push_back(h.name(v));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : h.edges())
        if (h.is_labeled(u) && h.is_labeled(v)) edges.emplace_back(h.name(u), h.name(v));
    LabeledGraph tree(names, edges, labels);
    if (!tree.is_tree())
        throw std::invalid_argument("validate_labeled_tree: labeled vertices do not induce a tree (" +
                                    std::to_string(tree.vertex_count()) + " vertices, " +
                                    std::to_string(tree.edge_count()) + " edges)");
    std::vector<int> degrees;
    for (int v = 0; v < tree.vertex_count(); ++v) degrees.push_back(tree.degree(v));
    return TreeSpec{std::move(tree), std::move(degrees)};
}

RetractResult retract_check(const LabeledGraph& h, const std::set<std::string>& s_set) {
    if (s_set.empty()) throw std::invalid_argument("retract_check: S must be non-empty");
    std::vector<int> s_idx;
    for (const auto& name : s_set) s_idx.push_back(h.index_of(name));
    std::sort(s_idx.begin(), s_idx.end());

    const int nv = h.vertex_count();
    std::vector<int> assign(nv, -1);
    for (const int s : s_idx) assign[s] = s;

    // candidates[v] = images in S still adjacency-consistent with assigned
    // neighbors of v.
    std::vector<std::vector<char>> candidates(nv, std::vector<char>(nv, 0));
    std::vector<int> cand_count(nv, 0);
    for (int v = 0; v < nv; ++v) {
        if (assign[v] != -1) continue;
        for (const int img : s_idx) {
            bool ok = true;
            for (const int u : h.neighbors(v)) {
                if (assign[u] != -1 && !h.has_edge(img, assign[u])) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                candidates[v][img] = 1;
                ++cand_count[v];
            }
        }
    }

    // Most-constrained-vertex-first, ties by vertex name.
    std::function<bool()> search = [&]() -> bool {
        int best = -1;
        for (int v = 0; v < nv; ++v) {
            if (assign[v] != -1) continue;
            if (best == -1 || cand_count[v] < cand_count[best] ||
                (cand_count[v] == cand_count[best] && h.name(v) < h.name(best)))
                best = v;
        }
        if (best == -1) return true;
        if (cand_count[best] == 0) return false;
        for (const int img : s_idx) {
            if (!candidates[best][img]) continue;
            assign[best] = img;
            // Narrow neighbors' candidate sets; remember removals to undo.
            std::vector<std::pair<int, int>> removed;
            bool dead = false;
            for (const int u : h.neighbors(best)) {
                if (assign[u] != -1) continue;
                for (const int c : s_idx) {
                    if (candidates[u][c] && !h.has_edge(c, img)) {
                        candidates[u][c] = 0;
                        --cand_count[u];
                        removed.emplace_back(u, c);
                    }
                }
                if (cand_count[u] == 0) dead = true;
            }
            if (!dead && search()) return true;
            for (const auto& [u, c] : removed) {
                candidates[u][c] = 1;
                ++cand_count[u];
            }
            assign[best] = -1;
        }
        return false;
    };

    RetractResult result;
    result.is_retract = search();
    if (result.is_retract)
        for (int v = 0; v < nv; ++v) result.witness[h.name(v)] = h.name(assign[v]);
    return result;
}

namespace {

// Backtracking isomorphism on (small) graphs with degree pruning.
bool iso_search(const LabeledGraph& a, const LabeledGraph& b, std::vector<int>& map,
                std::vector<char>& used, int v) {
    const int n = a.vertex_count();
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
        if (used[w] || a.degree(v) != b.degree(w)) continue;
        bool ok = true;
        for (const int u : a.neighbors(v)) {
            if (u < v && !b.has_edge(map[u], w)) {
                ok = false;
                break;
            }
        }
        // Non-edges must map to non-edges too (counts are equal, so edge
        // preservation both ways follows once all vertices are placed).
        if (ok) {
            for (int u = 0; u < v && ok; ++u)
                if (!a.has_edge(u, v) && b.has_edge(map[u], w)) ok = false;
        }
        if (!ok) continue;
        map[v] = w;
        used[w] = 1;
        if (iso_search(a, b, map, used, v + 1)) return true;
        used[w] = 0;
    }
    return false;
}

}  // namespace

bool graph_isomorphic(const LabeledGraph& a, const LabeledGraph& b, bool respect_labels) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    if (respect_labels && a.label_count() != b.label_count()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < a.vertex_count(); ++v) da.push_back(a.degree(v));
    for (int v = 0; v < b.vertex_count(); ++v) db.push_back(b.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;

    if (!respect_labels) {
        std::vector<int> map(a.vertex_count(), -1);
        std::vector<char> used(a.vertex_count(), 0);
        return iso_search(a, b, map, used, 0);
    }
    // Pin label-i -> label-i, then extend.
    std::vector<int> map(a.vertex_count(), -1);
    std::vector<char> used(a.vertex_count(), 0);
    for (int i = 0; i < a.label_count(); ++i) {
        map[a.labels()[i]] = b.labels()[i];
        used[b.labels()[i]] = 1;
    }
    // Reorder so pinned vertices come first: run a search that skips them.
    std::function<bool(int)> go = [&](int v) -> bool {
        while (v < a.vertex_count() && map[v] != -1) {
            // verify pinned consistency
            for (const int u : a.neighbors(v))
                if (map[u] != -1 && !b.has_edge(map[u], map[v])) return false;
            ++v;
        }
        if (v == a.vertex_count()) {
            // full verification of edge preservation both ways
            for (const auto& [x, y] : a.edges())
                if (!b.has_edge(map[x], map[y])) return false;
            return true;
        }
        for (int w = 0; w < b.vertex_count(); ++w) {
            if (used[w] || a.degree(v) != b.degree(w)) continue;
            bool ok = true;
            for (const int u : a.neighbors(v))
                if (map[u] != -1 && !b.has_edge(map[u], w)) {
                    ok = false;
                    break;
                }
            for (int u = 0; u < a.vertex_count() && ok; ++u)
                if (map[u] != -1 && !a.has_edge(u, v) && b.has_edge(map[u], w)) ok = false;
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            if (go(v + 1)) return true;
            used[w] = 0;
            map[v] = -1;
        }
        return false;
    };
    return go(0);
}

std::vector<std::vector<int>> connected_subsets(const LabeledGraph& g, int max_size) {
    std::set<std::vector<int>> out;
    // Grow connected sets from each start vertex; dedup via the sorted form.
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
        std::vector<int> key = cur;
        std::sort(key.begin(), key.end());
        if (!out.insert(key).second) return;
        if (static_cast<int>(cur.size()) >= max_size) return;
        std::set<int> frontier;
        for (const int v : cur)
            for (const int u : g.neighbors(v))
                if (std::find(cur.begin(), cur.end(), u) == cur.end()) frontier.insert(u);
        for (const int u : frontier) {
            cur.push_back(u);
            grow(cur);
            cur.pop_back();
        }
    };
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> cur = {v};
        grow(cur);
    }
    return {out.begin(), out.end()};
}

std::vector<std::vector<int>> independent_subsets(const LabeledGraph& g,
                                                  const std::vector<int>& within) {
    std::vector<int> universe = within;
    if (universe.empty())
        for (int v = 0; v < g.vertex_count(); ++v) universe.push_back(v);
    std::vector<std::vector<int>> out = {{}};
    for (const int v : universe) {
        const std::size_t existing = out.size();
        for (std::size_t i = 0; i < existing; ++i) {
            bool ok = true;
            for (const int u : out[i])
                if (g.has_edge(u, v)) {
                    ok = false;
                    break;
                }
            if (ok) {
                auto next = out[i];
                next.push_back(v);
                out.push_back(std::move(next));
            }
        }
    }
    return out;
}

}  // namespace logcalc
