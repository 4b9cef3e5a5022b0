#include <logcalc/margins.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace logcalc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Rational rational_pow(const Rational& base, int exponent) {
    if (exponent == 0) return Rational(1);
    const Rational mag = rat::pow_ui(base, static_cast<unsigned long>(std::abs(exponent)));
    if (exponent > 0) return mag;
    if (sgn(mag) == 0) throw std::domain_error("rational_pow: zero base with negative exponent");
    return Rational(1) / mag;
}

// E(q(x) ln q(x)) against node weights, with 0 ln 0 = 0.
long double zlnz_expectation(const BlockTable& q, const StepGraphon& w) {
    long double acc = 0.0L;
    for (int b = 0; b < w.block_count(); ++b) {
        const Rational& v = q.at(static_cast<std::size_t>(b));
        if (sgn(v) == 0) continue;
        acc += rat::to_long_double(w.node_weight(b)) * rat::to_long_double(v) * rat::log(v);
    }
    return acc;
}

}  // namespace

double finalize_margin(long double lhs, long double rhs) {
    if (std::isinf(static_cast<double>(lhs))) return kNegInf;
    return static_cast<double>(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Tree weights and mu_T.
// ---------------------------------------------------------------------------

TreeWeight tree_weight(const TreeSpec& t, const StepGraphon& w) {
    const LabeledGraph& tree = t.tree;
    if (!tree.is_tree()) throw std::invalid_argument("tree_weight: not a tree");
    DensityValue d = edge_density(w);
    if (sgn(d.exact) <= 0) throw std::invalid_argument("tree_weight: degenerate graphon (d = 0)");

    const BlockTable deg = degree_function(w);
    const int n = tree.vertex_count();
    const int m = w.block_count();

    std::size_t size = 1;
    for (int i = 0; i < n; ++i) size *= static_cast<std::size_t>(m);
    std::vector<Rational> values(size, Rational(0));
    std::vector<std::size_t> support;

    std::vector<int> tuple(n, 0);
    for (std::size_t idx = 0; idx < size; ++idx) {
        Rational edge_prod = 1;
        for (const auto& [u, v] : tree.edges()) {
            edge_prod *= w.weight(tuple[u], tuple[v]);
            if (sgn(edge_prod) == 0) break;
        }
        bool defined = true;
        Rational value = 0;
        if (n == 1) {
            // Degenerate tree: f_T = d(x)/d (r = 0, one d(x)^{1} factor).
            value = deg.at(static_cast<std::size_t>(tuple[0])) / d.exact;
        } else if (sgn(edge_prod) != 0) {
            Rational denom = d.exact;
            for (int i = 0; i < n; ++i) {
                const int r = t.degrees.at(i);
                if (r <= 1) continue;
                const Rational& dx = deg.at(static_cast<std::size_t>(tuple[i]));
                if (sgn(dx) == 0) {
                    defined = false;  // formula divides by zero: value is 0
                    break;
                }
                denom *= rational_pow(dx, r - 1);
            }
            if (defined) value = edge_prod / denom;
        }
        if (sgn(value) > 0) {
            values[idx] = value;
            support.push_back(idx);
        }
        for (int i = n - 1; i >= 0; --i) {
            if (++tuple[i] < m) break;
            tuple[i] = 0;
        }
    }

    TreeWeight out{t, BlockTable(tree.vertex_names(), m, std::move(values)), std::move(d),
                   std::move(support)};
    return out;
}

namespace {

// Canonical [0,1) double from a 64-bit generator; stdlib distributions are
// implementation-defined, this is not.
double canonical_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_cumulative(const std::vector<double>& weights, std::mt19937_64& rng) {
    double total = 0.0;
    for (const double w : weights) total += w;
    if (!(total > 0.0)) throw std::invalid_argument("mu_t_sample: zero-mass distribution");
    double u = canonical_double(rng) * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        u -= weights[i];
        if (u < 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

}  // namespace

std::vector<std::vector<int>> mu_t_sample(const TreeWeight& fw, const StepGraphon& w,
                                          std::uint64_t seed, int count) {
    if (count < 0) throw std::invalid_argument("mu_t_sample: negative count");
    const LabeledGraph& tree = fw.tree.tree;
    const int n = tree.vertex_count();
    const int m = w.block_count();
    const BlockTable deg = degree_function(w);

    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> samples;
    samples.reserve(static_cast<std::size_t>(count));

    if (n == 1) {
        // Single vertex: mu_T(b) = p_b d(b)/d.
        std::vector<double> weights(m);
        for (int b = 0; b < m; ++b)
            weights[b] = rat::to_double(w.node_weight(b) * deg.at(static_cast<std::size_t>(b)));
        for (int s = 0; s < count; ++s) samples.push_back({sample_cumulative(weights, rng)});
        return samples;
    }

    // Seed edge: first tree edge in index order; ordered block pair with
    // probability proportional to p_i p_j W(i,j).
    const auto [u0, v0] = tree.edges().front();
    std::vector<double> edge_weights(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            edge_weights[static_cast<std::size_t>(i) * m + j] =
                rat::to_double(w.node_weight(i) * w.node_weight(j) * w.weight(i, j));

    // Breadth-first attachment order from the seed edge.
    std::vector<int> order = {u0, v0};
    std::vector<int> parent(n, -1);
    std::vector<char> placed(n, 0);
    placed[u0] = placed[v0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int z = order[head];
        for (const int nb : tree.neighbors(z)) {
            if (placed[nb]) continue;
            placed[nb] = 1;
            parent[nb] = z;
            order.push_back(nb);
        }
    }

    std::vector<int> assign(n, -1);
    std::vector<double> leaf_weights(m);
    for (int s = 0; s < count; ++s) {
        const int pair = sample_cumulative(edge_weights, rng);
        assign[u0] = pair / m;
        assign[v0] = pair % m;
        for (std::size_t head = 2; head < order.size(); ++head) {
            const int v = order[head];
            const int pb = assign[parent[v]];
            for (int j = 0; j < m; ++j)
                leaf_weights[j] = rat::to_double(w.node_weight(j) * w.weight(pb, j));
            assign[v] = sample_cumulative(leaf_weights, rng);
        }
        samples.push_back(assign);
    }
    return samples;
}

// ---------------------------------------------------------------------------
// Weighted-log expectations.
// ---------------------------------------------------------------------------

long double expect_weighted_log(const BlockTable& weight, const BlockTable& value,
                                const StepGraphon& w,
                                std::vector<std::vector<int>>* violations) {
    if (!weight.exact() || !value.exact())
        throw std::logic_error("expect_weighted_log: exact tables only");
    // Every variable of `value` must appear in `weight`.
    std::vector<int> positions;
    for (const auto& name : value.variables()) {
        const auto& vars = weight.variables();
        const auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end())
            throw std::invalid_argument("expect_weighted_log: variable " + name + " missing");
        positions.push_back(static_cast<int>(it - vars.begin()));
    }

    long double acc = 0.0L;
    bool violated = false;
    std::vector<int> sub(value.arity());
    weight.for_each([&](const std::vector<int>& tuple, std::size_t idx) {
        const Rational& f = weight.at(idx);
        if (sgn(f) == 0) return;
        for (std::size_t i = 0; i < positions.size(); ++i) sub[i] = tuple[positions[i]];
        const Rational& v = value.at(value.index_of(sub));
        if (sgn(v) == 0) {
            violated = true;
            if (violations) violations->push_back(tuple);
            return;
        }
        long double p = 1.0L;
        for (const int b : tuple) p *= rat::to_long_double(w.node_weight(b));
        acc += p * rat::to_long_double(f) * rat::log(v);
    });
    if (violated) return -std::numeric_limits<long double>::infinity();
    return acc;
}

// ---------------------------------------------------------------------------
// Smoothness and Sidorenko margins.
// ---------------------------------------------------------------------------

namespace {

LabeledGraph delete_labeled_edges(const LabeledGraph& h) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, v] : h.edges())
        if (!(h.is_labeled(u) && h.is_labeled(v))) edges.emplace_back(h.name(u), h.name(v));
    std::vector<std::string> labels;
    for (const int v : h.labels()) labels.push_back(h.name(v));
    return LabeledGraph(h.vertex_names(), edges, labels);
}

}  // namespace

SmoothnessParts smoothness_parts(const LabeledGraph& h, const StepGraphon& w) {
    const TreeSpec t = validate_labeled_tree(h);
    const TreeWeight fw = tree_weight(t, w);
    const LabeledGraph h_star = delete_labeled_edges(h);
    const BlockTable t_s = restricted_density(h_star, w);

    SmoothnessParts parts;
    std::vector<std::vector<int>> violations;
    parts.lhs = expect_weighted_log(fw.table, t_s, w, &violations);
    parts.rhs = static_cast<long double>(h_star.edge_count()) * rat::log(fw.d.exact);
    parts.violated = !violations.empty();
    return parts;
}

MarginReport smoothness_margin(const LabeledGraph& h, const StepGraphon& w) {
    const TreeSpec t = validate_labeled_tree(h);
    const TreeWeight fw = tree_weight(t, w);
    const LabeledGraph h_star = delete_labeled_edges(h);
    const BlockTable t_s = restricted_density(h_star, w);

    MarginReport report;
    report.digest = input_digest(h, w);
    std::vector<std::vector<int>> violations;
    const long double lhs = expect_weighted_log(fw.table, t_s, w, &violations);
    const long double rhs = static_cast<long double>(h_star.edge_count()) * rat::log(fw.d.exact);
    report.rhs = static_cast<double>(rhs);
    report.support_violations = std::move(violations);
    if (report.violated()) {
        report.lhs = kNegInf;
        report.margin = kNegInf;
    } else {
        report.lhs = static_cast<double>(lhs);
        report.margin = finalize_margin(lhs, rhs);
    }
    return report;
}

MarginReport sidorenko_margin(const LabeledGraph& h, const StepGraphon& w) {
    const DensityValue d = edge_density(w);
    if (sgn(d.exact) <= 0) throw std::invalid_argument("sidorenko_margin: requires d > 0");
    const DensityValue t = hom_density_elimination(h, w);

    MarginReport report;
    report.digest = input_digest(h, w);
    const long double rhs = static_cast<long double>(h.edge_count()) * rat::log(d.exact);
    report.rhs = static_cast<double>(rhs);
    if (sgn(t.exact) == 0) {
        report.lhs = kNegInf;
        report.margin = kNegInf;
    } else {
        const long double lhs = rat::log(t.exact);
        report.lhs = static_cast<double>(lhs);
        report.margin = finalize_margin(lhs, rhs);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Blakley-Roy audit.
// ---------------------------------------------------------------------------

BlakleyRoyReport blakley_roy_audit(int n_edges, const StepGraphon& w) {
    if (n_edges < 1) throw std::invalid_argument("blakley_roy_audit: need at least one edge");
    const DensityValue d = edge_density(w);
    if (sgn(d.exact) <= 0) throw std::invalid_argument("blakley_roy_audit: requires d > 0");

    const LabeledGraph path = build_path(n_edges, false);
    const TreeSpec spec = [&] {
        std::vector<int> degrees;
        for (int v = 0; v < path.vertex_count(); ++v) degrees.push_back(path.degree(v));
        return TreeSpec{path, degrees};
    }();

    BlakleyRoyReport report;
    report.n_edges = n_edges;
    const TreeWeight fw = tree_weight(spec, w);
    report.expected_weight = table_expectation(fw.table, w);

    const BlockTable deg = degree_function(w);
    const long double ln_d = rat::log(d.exact);
    // Exact marginal identity: E(f ln d(x_i)) = d^{-1} E(d(x) ln d(x)).
    const long double z = zlnz_expectation(deg, w) / rat::to_long_double(d.exact);

    const DensityValue t = hom_density_elimination(path, w);
    if (sgn(t.exact) == 0)
        throw std::logic_error("blakley_roy_audit: t(P_n,W) = 0 with d > 0");
    const long double ln_t = rat::log(t.exact);

    const int interior = n_edges - 1;
    report.steps.push_back({"log-jensen", static_cast<double>(ln_t - ln_d - interior * z)});
    for (int i = 0; i < interior; ++i)
        report.steps.push_back({"zlnz-x" + std::to_string(i + 2), static_cast<double>(z - ln_d)});

    report.total.lhs = static_cast<double>(ln_t);
    report.total.rhs = static_cast<double>(n_edges * ln_d);
    report.total.margin = finalize_margin(ln_t, n_edges * ln_d);
    report.total.digest = input_digest(path, w);
    return report;
}

// ---------------------------------------------------------------------------
// CFS audit.
// ---------------------------------------------------------------------------

CfsAuditReport cfs_audit(int k, const std::vector<std::set<int>>& attach_sets,
                         const StepGraphon& w) {
    if (k < 1) throw std::invalid_argument("cfs_audit: k must be positive");
    const DensityValue d = edge_density(w);
    if (sgn(d.exact) <= 0) throw std::invalid_argument("cfs_audit: requires d > 0");
    const int m = w.block_count();

    const LabeledGraph h = build_cfs_graph(k, attach_sets);
    const BlockTable q = degree_function(w);  // q(x) = E_x(W(x,z)) = d(x)

    // Variable names shared by f and f_t: x, v1..vk.
    std::vector<std::string> star_vars = {"x"};
    for (int i = 1; i <= k; ++i) star_vars.push_back("v" + std::to_string(i));
    std::size_t star_size = 1;
    for (int i = 0; i <= k; ++i) star_size *= static_cast<std::size_t>(m);

    const auto star_table = [&](const std::function<Rational(const std::vector<int>&)>& fn) {
        std::vector<Rational> vals(star_size);
        std::vector<int> tuple(k + 1, 0);
        for (std::size_t idx = 0; idx < star_size; ++idx) {
            vals[idx] = fn(tuple);
            for (int i = k; i >= 0; --i) {
                if (++tuple[i] < m) break;
                tuple[i] = 0;
            }
        }
        return BlockTable(star_vars, m, std::move(vals));
    };

    const auto star_product = [&](const std::vector<int>& tuple) {
        Rational prod = 1;
        for (int i = 1; i <= k; ++i) {
            prod *= w.weight(tuple[0], tuple[i]);
            if (sgn(prod) == 0) break;
        }
        return prod;
    };

    // f = d^{-1} q^{1-k} prod_i W(x, v_i); undefined values -> 0.
    const BlockTable f = star_table([&](const std::vector<int>& tuple) -> Rational {
        const Rational prod = star_product(tuple);
        if (sgn(prod) == 0) return Rational(0);
        const Rational& qx = q.at(static_cast<std::size_t>(tuple[0]));
        return prod / (d.exact * rational_pow(qx, k - 1));  // qx > 0 since prod > 0
    });

    CfsAuditReport report{.k = k, .attach_sets = attach_sets, .q = q, .s = {}, .h = {},
                          .expected_f = table_expectation(f, w)};

    const long double ln_d = rat::log(d.exact);
    const long double z = zlnz_expectation(q, w) / rat::to_long_double(d.exact);

    const DensityValue t = hom_density_elimination(h, w);
    const bool t_positive = sgn(t.exact) > 0;
    const long double ln_t =
        t_positive ? rat::log(t.exact) : -std::numeric_limits<long double>::infinity();

    long double sum_e_f_ln_s = 0.0L;
    report.ex_fh_equals_q = true;
    report.e_fh = d.exact;

    int e = k;
    for (std::size_t ti = 0; ti < attach_sets.size(); ++ti) {
        const auto& s_set = attach_sets[ti];
        const int a_t = static_cast<int>(s_set.size());
        e += a_t;

        std::vector<std::string> s_vars;
        std::vector<int> s_members(s_set.begin(), s_set.end());
        for (const int j : s_members) s_vars.push_back("v" + std::to_string(j));

        // s_t(v_{S_t}) = E_z(prod_{j in S_t} W(z, v_j)).
        std::size_t s_size = 1;
        for (int i = 0; i < a_t; ++i) s_size *= static_cast<std::size_t>(m);
        std::vector<Rational> s_vals(s_size);
        {
            std::vector<int> tuple(a_t, 0);
            for (std::size_t idx = 0; idx < s_size; ++idx) {
                Rational acc = 0;
                for (int zb = 0; zb < m; ++zb) {
                    Rational prod = w.node_weight(zb);
                    for (int i = 0; i < a_t; ++i) {
                        prod *= w.weight(zb, tuple[i]);
                        if (sgn(prod) == 0) break;
                    }
                    acc += prod;
                }
                s_vals[idx] = acc;
                for (int i = a_t - 1; i >= 0; --i) {
                    if (++tuple[i] < m) break;
                    tuple[i] = 0;
                }
            }
        }
        BlockTable s_t(s_vars, m, std::move(s_vals));

        // Positions of the S_t coordinates inside the star tuple.
        std::vector<int> s_pos;
        for (const int j : s_members) s_pos.push_back(j);  // tuple[0] is x, tuple[j] is v_j

        // f_t = s_t^{-1} q^{a_t-k} prod_i W(x,v_i); undefined -> 0.
        const BlockTable f_t = star_table([&](const std::vector<int>& tuple) -> Rational {
            const Rational prod = star_product(tuple);
            if (sgn(prod) == 0) return Rational(0);
            std::vector<int> sub;
            for (const int p : s_pos) sub.push_back(tuple[p]);
            const Rational& sv = s_t.at(s_t.index_of(sub));
            if (sgn(sv) == 0) return Rational(0);
            const Rational& qx = q.at(static_cast<std::size_t>(tuple[0]));
            return prod * rational_pow(qx, a_t - k) / (sv);
        });

        // h_t = s_t q^{1-a_t} over (x, v_{S_t}).
        std::vector<std::string> h_vars = {"x"};
        for (const auto& v : s_vars) h_vars.push_back(v);
        std::size_t h_size = static_cast<std::size_t>(m);
        for (int i = 0; i < a_t; ++i) h_size *= static_cast<std::size_t>(m);
        std::vector<Rational> h_vals(h_size);
        {
            std::vector<int> tuple(a_t + 1, 0);
            for (std::size_t idx = 0; idx < h_size; ++idx) {
                const Rational& qx = q.at(static_cast<std::size_t>(tuple[0]));
                std::vector<int> sub(tuple.begin() + 1, tuple.end());
                const Rational& sv = s_t.at(s_t.index_of(sub));
                if (a_t > 1 && sgn(qx) == 0)
                    h_vals[idx] = 0;  // undefined -> 0
                else
                    h_vals[idx] = sv * rational_pow(qx, 1 - a_t);
                for (int i = a_t; i >= 0; --i) {
                    if (++tuple[i] < m) break;
                    tuple[i] = 0;
                }
            }
        }
        BlockTable h_t(h_vars, m, std::move(h_vals));

        report.expected_ft.push_back(table_expectation(f_t, w));

        // E_x(f_t h_t) should equal q; E(f_t h_t) should equal d.
        const BlockTable fh = table_product(f_t, h_t);
        const BlockTable fh_x = conditional_expectation(fh, {"x"}, w);
        if (!(fh_x == q)) report.ex_fh_equals_q = false;
        report.e_fh = table_expectation(fh, w);

        // Jensen steps for this attachment.
        const long double e_fh_ln_h = expect_weighted_log(fh, h_t, w);
        const long double margin_c =
            e_fh_ln_h / rat::to_long_double(d.exact) - ln_d;
        const long double margin_d = (a_t - 1) * (z - ln_d);
        report.step_margins.push_back(
            {"attach-" + std::to_string(ti + 1) + "-hzlnz", static_cast<double>(margin_c)});
        report.step_margins.push_back(
            {"attach-" + std::to_string(ti + 1) + "-qzlnz", static_cast<double>(margin_d)});

        const long double e_f_ln_s = expect_weighted_log(f, s_t, w);
        sum_e_f_ln_s += e_f_ln_s;
        report.attachment_margins.push_back(static_cast<double>(e_f_ln_s - a_t * ln_d));

        report.s.push_back(std::move(s_t));
        report.h.push_back(std::move(h_t));
    }

    // Leading steps: concave-log and the (k-1)-weighted q z ln z step.
    const long double margin_a = ln_t - (k - 1) * z - ln_d - sum_e_f_ln_s;
    const long double margin_b = (k - 1) * (z - ln_d);
    report.step_margins.insert(report.step_margins.begin(),
                               {AuditStep{"log-jensen", static_cast<double>(margin_a)},
                                AuditStep{"q-zlnz", static_cast<double>(margin_b)}});

    report.final_margin = finalize_margin(ln_t, e * ln_d);
    report.total.lhs = t_positive ? static_cast<double>(ln_t) : kNegInf;
    report.total.rhs = static_cast<double>(e * ln_d);
    report.total.margin = report.final_margin;
    report.total.digest = input_digest(h, w);
    return report;
}

// ---------------------------------------------------------------------------
// Forcing and gluing.
// ---------------------------------------------------------------------------

std::string to_string(ForcingVerdict v) {
    switch (v) {
        case ForcingVerdict::Strict: return "STRICT";
        case ForcingVerdict::Consistent: return "CONSISTENT";
        case ForcingVerdict::Violation: return "VIOLATION";
    }
    return "UNKNOWN";
}

ForcingReport forcing_check(const LabeledGraph& h, const StepGraphon& w, double tol) {
    if (!h.is_bipartite()) throw std::invalid_argument("forcing_check: H must be bipartite");
    if (h.is_tree()) throw std::invalid_argument("forcing_check: H must not be a tree");

    ForcingReport report;
    report.margin = sidorenko_margin(h, w);
    const Rational d = edge_density(w).exact;
    double dev = 0.0;
    for (int i = 0; i < w.block_count(); ++i)
        for (int j = 0; j < w.block_count(); ++j)
            dev = std::max(dev, std::abs(rat::to_double(w.weight(i, j) - d)));
    report.max_deviation = dev;

    if (report.margin.margin > tol) {
        report.verdict = ForcingVerdict::Strict;
    } else if (std::abs(report.margin.margin) <= tol && dev <= tol) {
        report.verdict = ForcingVerdict::Consistent;
    } else {
        report.verdict = ForcingVerdict::Violation;
    }
    return report;
}

AdditivityReport smoothness_additivity_check(const LabeledGraph& h1, const LabeledGraph& h2,
                                             const StepGraphon& w) {
    const TreeSpec t1 = validate_labeled_tree(h1);
    const TreeSpec t2 = validate_labeled_tree(h2);
    if (t1.tree.vertex_count() != t2.tree.vertex_count() || t1.tree.edges() != t2.tree.edges())
        throw std::invalid_argument(
            "smoothness_additivity_check: labeled trees differ (edge sets over label indices)");

    const LabeledGraph glued = glue(h1, h2);
    const SmoothnessParts p1 = smoothness_parts(h1, w);
    const SmoothnessParts p2 = smoothness_parts(h2, w);
    const SmoothnessParts pg = smoothness_parts(glued, w);

    AdditivityReport report;
    report.any_violation = p1.violated || p2.violated || pg.violated;
    report.lhs_glued = static_cast<double>(pg.lhs);
    report.lhs_sum = static_cast<double>(p1.lhs + p2.lhs);
    report.delta = static_cast<double>(pg.lhs - (p1.lhs + p2.lhs));
    report.margin_glued = finalize_margin(pg.lhs, pg.rhs);
    report.margin_sum = finalize_margin(p1.lhs, p1.rhs) + finalize_margin(p2.lhs, p2.rhs);
    return report;
}

}  // namespace logcalc
