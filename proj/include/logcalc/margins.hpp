#pragma once

#include <logcalc/density.hpp>
#include <logcalc/graph.hpp>
#include <logcalc/graphon.hpp>
#include <logcalc/table.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace logcalc {

// ---------------------------------------------------------------------------
// Tree weights.
//
// For a tree T on x_1..x_n with in-tree degrees r_i,
//
//     f_T = d^{-1} * prod_i d(x_i)^{1-r_i} * prod_{(i,j) in E(T)} W(x_i,x_j)
//
// is a probability density against the node weights: E(f_T) = 1 and every
// single-variable marginal is d(x_i)/d, exactly, for any non-negative W with
// d > 0 once the zero-support convention is applied (entries whose formula
// divides by zero are set to 0). The induced distribution mu_T is realized
// constructively by sampling a weighted edge and growing leaves.
// ---------------------------------------------------------------------------
struct TreeWeight {
    TreeSpec tree;
    BlockTable table;            // exact f_T values, variables = tree vertex names
    DensityValue d;              // edge density of W
    std::vector<std::size_t> support;  // table indices with f_T > 0
};

// Requires edge_density(w) > 0. A single-vertex tree yields f_T = d(x)/d.
TreeWeight tree_weight(const TreeSpec& t, const StepGraphon& w);

// Draws `count` block tuples distributed as mu_T (node weights times f_T):
// the first edge of the tree in index order is seeded with probability
// proportional to p_i p_j W(i,j), then the remaining vertices are attached
// leaf-by-leaf in breadth-first order with probability proportional to
// p_j W(current, j) / d(current). Deterministic given the seed.
std::vector<std::vector<int>> mu_t_sample(const TreeWeight& fw, const StepGraphon& w,
                                          std::uint64_t seed, int count);

// ---------------------------------------------------------------------------
// Margin reports.
// ---------------------------------------------------------------------------

// One inequality check: margin = lhs - rhs. If a logarithm receives 0 at a
// point carrying positive weight, the tuples are listed in
// support_violations and the margin is the -inf sentinel.
struct MarginReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    std::vector<std::vector<int>> support_violations;
    std::string digest;  // fnv1a64(graph doc) ":" fnv1a64(graphon doc)

    bool violated() const { return !support_violations.empty(); }
};

struct AuditStep {
    std::string name;
    double margin = 0.0;
};

// Smoothness of the labeled tree T in H:
//   E(f_T ln t_S(H*,W)) >= |E(H*)| ln d,   H* = H minus the edges of T.
// The labeled vertices must induce a tree; W must have d > 0.
MarginReport smoothness_margin(const LabeledGraph& h, const StepGraphon& w);

// ln t(H,W) >= |E(H)| ln d. t = 0 yields the -inf sentinel.
MarginReport sidorenko_margin(const LabeledGraph& h, const StepGraphon& w);

// Both sides of a smoothness check without building MarginReport, used by
// additivity checks. lhs may be -inf.
struct SmoothnessParts {
    long double lhs = 0.0L;
    long double rhs = 0.0L;
    bool violated = false;
};
SmoothnessParts smoothness_parts(const LabeledGraph& h, const StepGraphon& w);

// ---------------------------------------------------------------------------
// Proof-chain audits. Each audit recomputes the intermediate functions of a
// proof, checks its exact identities, and reports one margin per Jensen
// step; the step margins sum to the total margin.
// ---------------------------------------------------------------------------

// Path inequality t(P_n,W) >= d^n for the n-edge path.
// Steps: one concave-log step and, per interior vertex, one z*ln z step
// d^{-1} E(d(x) ln d(x)) >= ln d.
struct BlakleyRoyReport {
    int n_edges = 0;
    Rational expected_weight;  // E(f); must be 1
    std::vector<AuditStep> steps;
    MarginReport total;  // lhs = ln t(P_n,W), rhs = n ln d
};
BlakleyRoyReport blakley_roy_audit(int n_edges, const StepGraphon& w);

// Star-with-attachments audit (vertex x complete to v_1..v_k, each y_t
// attached to S_t). Intermediates:
//   q = E_x(W(x,z)),  f = d^{-1} q^{1-k} prod_i W(x,v_i),
//   s_t = E_{S_t}(prod_{j in S_t} W(z,v_j)),
//   f_t = s_t^{-1} q^{a_t-k} prod_i W(x,v_i),  h_t = s_t q^{1-a_t}.
// Exact identities: E(f) = E(f_t) = 1, E_x(f_t h_t) = q, E(f_t h_t) = d.
// Jensen steps: concave-log, (k-1) q-zlnz, and per attachment a z*ln z step
// on h_t plus (a_t-1) more q-zlnz; per-attachment E(f ln s_t) >= a_t ln d.
struct CfsAuditReport {
    int k = 0;
    std::vector<std::set<int>> attach_sets;
    BlockTable q;
    std::vector<BlockTable> s;
    std::vector<BlockTable> h;
    Rational expected_f;               // E(f); 1 for strictly positive W
    std::vector<Rational> expected_ft; // E(f_t)
    bool ex_fh_equals_q = false;       // E_x(f_t h_t) == q for every t
    Rational e_fh;                     // E(f_t h_t); equals d
    std::vector<AuditStep> step_margins;
    std::vector<double> attachment_margins;  // E(f ln s_t) - a_t ln d
    double final_margin = 0.0;               // ln t(H,W) - e ln d
    MarginReport total;
};
CfsAuditReport cfs_audit(int k, const std::vector<std::set<int>>& attach_sets,
                         const StepGraphon& w);

// ---------------------------------------------------------------------------
// Equality analysis and gluing.
// ---------------------------------------------------------------------------

enum class ForcingVerdict { Strict, Consistent, Violation };
std::string to_string(ForcingVerdict v);

struct ForcingReport {
    ForcingVerdict verdict = ForcingVerdict::Consistent;
    MarginReport margin;
    double max_deviation = 0.0;  // max_ij |W_ij - d|
};

// For bipartite non-tree H: margin > tol => Strict; |margin| <= tol and W
// within tol of constant => Consistent; otherwise Violation. Trees and
// non-bipartite graphs are rejected.
ForcingReport forcing_check(const LabeledGraph& h, const StepGraphon& w, double tol);

// Checks E(f_T ln t_S((H1 H2)*,W)) = lhs(H1) + lhs(H2) and the margin
// additivity that follows from |E((H1 H2)*)| = |E(H1*)| + |E(H2*)|.
// H1 and H2 must induce the same tree on equal label counts.
struct AdditivityReport {
    double lhs_glued = 0.0;
    double lhs_sum = 0.0;
    double delta = 0.0;  // lhs_glued - lhs_sum
    double margin_glued = 0.0;
    double margin_sum = 0.0;
    bool any_violation = false;
};
AdditivityReport smoothness_additivity_check(const LabeledGraph& h1, const LabeledGraph& h2,
                                             const StepGraphon& w);

// ---------------------------------------------------------------------------
// Shared numeric helpers.
// ---------------------------------------------------------------------------

// E(weight * ln value) over tuples, with 0 ln 0 = 0. Returns -inf and fills
// `violations` (if given) where value = 0 meets weight > 0.
long double expect_weighted_log(const BlockTable& weight, const BlockTable& value,
                                const StepGraphon& w,
                                std::vector<std::vector<int>>* violations = nullptr);

double finalize_margin(long double lhs, long double rhs);

std::string input_digest(const LabeledGraph& h, const StepGraphon& w);
std::string graphon_digest(const StepGraphon& w);

}  // namespace logcalc
