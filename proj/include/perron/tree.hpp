#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perron/bounds.hpp"
#include "perron/eig.hpp"
#include "perron/errors.hpp"
#include "perron/matrix.hpp"
#include "perron/power_iteration.hpp"

namespace perron {

// Simple undirected weighted graph, 1-based vertex labels.
struct WeightedGraph {
    struct Edge {
        int u, v;
        double w;
    };
    int n = 0;
    std::vector<Edge> edges;
};

// Rooted tree as a parent map: parent[v] = 0 exactly when v is the root.
// Entry 0 of `parent` is unused padding so labels index directly.
struct RootedTree {
    int n = 0;
    std::vector<int> parent;  // size n + 1
    int root = 1;
};

enum class TreeType { TYPE_I, TYPE_II };
enum class CharMethod { PERRON_BRANCH, FIEDLER_SIGN };

// Characteristic set of a tree: the single vertex where a Fiedler vector
// vanishes (Type I) or the two adjacent vertices u < v across which it
// changes sign (Type II).  For Type II, gamma in (0,1) locates the zero of
// the affinely extended Fiedler valuation along the characteristic edge,
// measured from u as a fraction of the edge's resistance; equivalently
// 1/rho(M1 - (gamma/theta) J) equals the algebraic connectivity, where M1
// is the bottleneck block of the branch at u containing v and theta is the
// edge weight.  Both methods report this same gamma.
struct CharacteristicSetResult {
    TreeType tree_type;
    std::vector<int> vertices;  // ascending; 1 entry (Type I) or 2 (Type II)
    double algebraic_connectivity;
    std::optional<double> gamma;  // Type II only
    CharMethod method;
};

struct PerronBranch {
    std::vector<int> vertices;  // ascending original labels
    Matrix bottleneck;          // rows/cols follow `vertices`
    double perron_value;
    bool is_perron;
};

namespace detail {

inline void validate_graph(const WeightedGraph& g) {
    if (g.n < 1) throw HypothesisError("graph must have at least one vertex");
    std::vector<std::vector<char>> seen(g.n + 1, std::vector<char>(0));
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : g.edges) {
        if (e.u < 1 || e.u > g.n || e.v < 1 || e.v > g.n)
            throw HypothesisError("edge endpoint out of range");
        if (e.u == e.v) throw HypothesisError("self-loops are not allowed");
        if (!(e.w > 0.0)) throw HypothesisError("edge weights must be positive");
        pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
        throw HypothesisError("duplicate edge in graph");
}

inline std::vector<std::vector<std::pair<int, double>>> adjacency(const WeightedGraph& g) {
    std::vector<std::vector<std::pair<int, double>>> adj(g.n + 1);
    for (const auto& e : g.edges) {
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

} // namespace detail

inline bool is_connected(const WeightedGraph& g) {
    detail::validate_graph(g);
    const auto adj = detail::adjacency(g);
    std::vector<char> seen(g.n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 0;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        ++count;
        for (const auto& [v, w] : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
    }
    return count == g.n;
}

inline bool is_tree(const WeightedGraph& g) {
    return static_cast<int>(g.edges.size()) == g.n - 1 && is_connected(g);
}

// Graph Laplacian: diagonal = weighted degree, off-diagonal = -weight.
inline Matrix laplacian(const WeightedGraph& g) {
    if (!is_connected(g)) throw HypothesisError("laplacian: graph must be connected");
    Matrix l(g.n);
    for (const auto& e : g.edges) {
        l(e.u - 1, e.u - 1) += e.w;
        l(e.v - 1, e.v - 1) += e.w;
        l(e.u - 1, e.v - 1) -= e.w;
        l(e.v - 1, e.u - 1) -= e.w;
    }
    return l;
}

namespace detail {

// Inverse of a symmetric positive definite matrix via Cholesky factorization.
// The factorization certifies positive definiteness; a non-positive pivot is
// an internal error because every caller passes a principal submatrix of a
// connected graph's Laplacian, which is provably positive definite.
inline Matrix cholesky_inverse(const Matrix& a) {
    const int n = a.n();
    Matrix l(n);
    for (int j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0))
            throw InternalError("cholesky_inverse: matrix is not positive definite");
        l(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    Matrix inv(n);
    Vector y(n);
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (int k = 0; k < i; ++k) s -= l(i, k) * y[k];
            y[i] = s / l(i, i);
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = y[i];
            for (int k = i + 1; k < n; ++k) s -= l(k, i) * inv(k, col);
            inv(i, col) = s / l(i, i);
        }
    }
    // Kill factorization roundoff asymmetry; downstream code relies on
    // exact symmetry.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = m;
            inv(j, i) = m;
        }
    return inv;
}

// Principal submatrix of `a` on the given 0-based index list.
inline Matrix principal_submatrix(const Matrix& a, const std::vector<int>& idx) {
    const int m = static_cast<int>(idx.size());
    Matrix out(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = a(idx[i], idx[j]);
    return out;
}

// Largest eigenvalue of a symmetric matrix (deterministic Jacobi solve).
inline double lambda_max(const Matrix& a) { return symmetric_eigensystem(a).values.front(); }

// Connected components of g with vertex `skip` removed, each sorted
// ascending, components ordered by smallest member.
inline std::vector<std::vector<int>> components_without(
    const std::vector<std::vector<std::pair<int, double>>>& adj, int n, int skip) {
    std::vector<char> seen(n + 1, 0);
    seen[skip] = 1;
    std::vector<std::vector<int>> comps;
    for (int s = 1; s <= n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (const auto& [v, w] : adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace detail

// Bottleneck matrix at v: inverse of the Laplacian with row and column v
// removed.  Rows/columns follow the remaining vertex labels in ascending
// order.
inline Matrix bottleneck_at(const WeightedGraph& g, int v) {
    if (v < 1 || v > g.n) throw HypothesisError("bottleneck_at: vertex out of range");
    if (g.n < 2) throw HypothesisError("bottleneck_at: need at least two vertices");
    const Matrix l = laplacian(g);
    std::vector<int> idx;
    for (int i = 0; i < g.n; ++i)
        if (i != v - 1) idx.push_back(i);
    return detail::cholesky_inverse(detail::principal_submatrix(l, idx));
}

namespace detail {

inline void validate_rooted(const RootedTree& t) {
    if (t.n < 1) throw HypothesisError("rooted tree must have at least one vertex");
    if (static_cast<int>(t.parent.size()) != t.n + 1)
        throw HypothesisError("rooted tree parent map has wrong size");
    if (t.root < 1 || t.root > t.n) throw HypothesisError("root label out of range");
    if (t.parent[t.root] != 0) throw HypothesisError("root must have parent 0");
    for (int v = 1; v <= t.n; ++v) {
        if (v == t.root) continue;
        if (t.parent[v] < 1 || t.parent[v] > t.n)
            throw HypothesisError("non-root vertex must have a parent in range");
    }
    // Depth-consistency: every vertex must reach the root without cycling.
    for (int v = 1; v <= t.n; ++v) {
        int u = v, steps = 0;
        while (u != t.root) {
            u = t.parent[u];
            if (++steps > t.n) throw HypothesisError("parent map contains a cycle");
        }
    }
}

// Depth in vertices: root has depth 1.
inline std::vector<int> vertex_depths(const RootedTree& t) {
    std::vector<int> depth(t.n + 1, 0);
    for (int v = 1; v <= t.n; ++v) {
        std::vector<int> chain;
        int u = v;
        while (u != 0 && depth[u] == 0) {
            chain.push_back(u);
            u = t.parent[u];
        }
        int d = (u == 0) ? 0 : depth[u];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
    }
    return depth;
}

} // namespace detail

// Vertex labels in depth-first preorder from the root, children visited in
// ascending label order.  All rooted-tree matrix constructors index their
// rows and columns by this order, which makes the path matrix upper
// triangular; position i corresponds to vertex dfs_order(t)[i].
inline std::vector<int> dfs_order(const RootedTree& t) {
    detail::validate_rooted(t);
    std::vector<std::vector<int>> children(t.n + 1);
    for (int v = 1; v <= t.n; ++v)
        if (v != t.root) children[t.parent[v]].push_back(v);
    std::vector<int> order;
    order.reserve(t.n);
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (auto it = children[u].rbegin(); it != children[u].rend(); ++it) stack.push_back(*it);
    }
    return order;
}

// Eccentricity of the root in edges.
inline int root_eccentricity(const RootedTree& t) {
    detail::validate_rooted(t);
    const auto depth = detail::vertex_depths(t);
    int ecc = 0;
    for (int v = 1; v <= t.n; ++v) ecc = std::max(ecc, depth[v] - 1);
    return ecc;
}

// Bottleneck matrix of an unweighted rooted tree: entry (i,j) counts the
// vertices lying simultaneously on the two root paths, i.e. the depth (in
// vertices) of the lowest common ancestor.  Equals the bottleneck matrix at
// the pendant vertex of the tree extended by a new pendant at the root.
inline Matrix bottleneck_of_rooted_tree(const RootedTree& t) {
    const std::vector<int> order = dfs_order(t);
    const auto depth = detail::vertex_depths(t);
    auto lca_depth = [&](int a, int b) {
        while (a != b) {
            if (depth[a] >= depth[b])
                a = t.parent[a];
            else
                b = t.parent[b];
        }
        return depth[a];
    };
    Matrix m(t.n);
    for (int i = 0; i < t.n; ++i)
        for (int j = i; j < t.n; ++j) {
            const double d = lca_depth(order[i], order[j]);
            m(i, j) = d;
            m(j, i) = d;
        }
    return m;
}

// Path matrix N: column j is the 0/1 indicator of the path from vertex j to
// the root.  With the depth-first row/column order it is upper triangular
// with unit diagonal, and the root's row is all ones.
inline Matrix path_matrix(const RootedTree& t) {
    const std::vector<int> order = dfs_order(t);
    std::vector<int> pos(t.n + 1, 0);
    for (int i = 0; i < t.n; ++i) pos[order[i]] = i;
    Matrix n(t.n);
    for (int j = 0; j < t.n; ++j) {
        int u = order[j];
        while (u != 0) {
            n(pos[u], j) = 1.0;
            u = t.parent[u];
        }
    }
    return n;
}

// Neckbottle matrix Q = N N^T; shares its spectrum with the bottleneck
// matrix M = N^T N.
inline Matrix neckbottle(const RootedTree& t) {
    const Matrix n = path_matrix(t);
    return mat_mul(n, transpose(n));
}

// Rooted view of a tree: parent map by breadth-first search from `root`.
inline RootedTree to_rooted(const WeightedGraph& g, int root) {
    if (!is_tree(g)) throw HypothesisError("to_rooted: input must be a tree");
    if (root < 1 || root > g.n) throw HypothesisError("to_rooted: root out of range");
    const auto adj = detail::adjacency(g);
    RootedTree t;
    t.n = g.n;
    t.root = root;
    t.parent.assign(g.n + 1, -1);
    t.parent[root] = 0;
    std::vector<int> queue{root};
    for (size_t h = 0; h < queue.size(); ++h) {
        const int u = queue[h];
        for (const auto& [v, w] : adj[u])
            if (t.parent[v] == -1) {
                t.parent[v] = u;
                queue.push_back(v);
            }
    }
    return t;
}

// Unweighted graph view of a rooted tree.
inline WeightedGraph to_graph(const RootedTree& t) {
    detail::validate_rooted(t);
    WeightedGraph g;
    g.n = t.n;
    for (int v = 1; v <= t.n; ++v)
        if (v != t.root) g.edges.push_back({v, t.parent[v], 1.0});
    return g;
}

// Components of G - v with their bottleneck blocks and Perron values;
// maximal Perron values (within relative tie_tol) are flagged.
inline std::vector<PerronBranch> perron_branches(const WeightedGraph& g, int v,
                                                 double tie_tol = 1e-10) {
    if (v < 1 || v > g.n) throw HypothesisError("perron_branches: vertex out of range");
    if (!is_connected(g)) throw HypothesisError("perron_branches: graph must be connected");
    if (g.n < 2) throw HypothesisError("perron_branches: need at least two vertices");
    const Matrix l = laplacian(g);
    const auto adj = detail::adjacency(g);
    std::vector<PerronBranch> out;
    for (const auto& comp : detail::components_without(adj, g.n, v)) {
        std::vector<int> idx;
        for (int c : comp) idx.push_back(c - 1);
        PerronBranch b;
        b.vertices = comp;
        b.bottleneck = detail::cholesky_inverse(detail::principal_submatrix(l, idx));
        b.perron_value = detail::lambda_max(b.bottleneck);
        b.is_perron = false;
        out.push_back(std::move(b));
    }
    double mx = 0.0;
    for (const auto& b : out) mx = std::max(mx, b.perron_value);
    for (auto& b : out) b.is_perron = b.perron_value >= mx * (1.0 - tie_tol);
    return out;
}

// Characteristic set via Perron branches: Type I at the unique vertex with
// two or more Perron branches; otherwise Type II at the unique edge whose
// endpoints each lie in the other's unique Perron branch.  With the edge
// written u < v, gamma in (0,1) is the fraction of the edge (in resistance)
// from u at which the affinely extended Fiedler valuation crosses zero, and
// it solves rho(M1 - (gamma/theta) J) = rho(M2 - ((1-gamma)/theta) J) where
// M1 is the bottleneck block of the branch at u containing v, M2 the block
// of the branch at v containing u, and theta the edge weight.  Subtracting
// (gamma/theta) J from M1 replaces the full edge resistance 1/theta baked
// into that block by the resistance (1-gamma)/theta between v's side and
// the zero point, so both sides become bottleneck matrices taken at the
// zero point and a(G) = 1/rho of either.  Bisection exploits that
// rho(M1 - (gamma/theta) J) is continuous and decreasing in gamma.  Both
// spectral radii are evaluated with the deterministic symmetric
// eigensolver: the shifted matrices can carry negative off-diagonal entries
// for weighted trees (a diagonal shift cannot repair that), and power
// iteration's stopping bracket is an order of magnitude looser than the
// gamma tolerance.
inline CharacteristicSetResult characteristic_set_perron(const WeightedGraph& g,
                                                         double tie_tol = 1e-10) {
    if (!is_tree(g)) throw HypothesisError("characteristic_set_perron: input must be a tree");
    if (g.n < 2)
        throw HypothesisError("characteristic_set_perron: need at least two vertices");

    std::vector<std::vector<PerronBranch>> branches(g.n + 1);
    std::optional<int> type1_vertex;
    double type1_rho = 0.0;
    for (int v = 1; v <= g.n; ++v) {
        branches[v] = perron_branches(g, v, tie_tol);
        int flagged = 0;
        for (const auto& b : branches[v])
            if (b.is_perron) ++flagged;
        if (flagged >= 2) {
            if (type1_vertex)
                throw InternalError(
                    "characteristic_set_perron: two distinct vertices carry tied Perron "
                    "branches (tie tolerance too loose for this input)");
            type1_vertex = v;
            for (const auto& b : branches[v])
                if (b.is_perron) type1_rho = b.perron_value;
        }
    }

    CharacteristicSetResult res;
    res.method = CharMethod::PERRON_BRANCH;
    if (type1_vertex) {
        res.tree_type = TreeType::TYPE_I;
        res.vertices = {*type1_vertex};
        res.algebraic_connectivity = 1.0 / type1_rho;
        return res;
    }

    // Each vertex points to its unique Perron branch; the characteristic
    // edge is the unique mutually-pointing pair.
    auto points_to = [&](int a, int b) {
        for (const auto& br : branches[a])
            if (br.is_perron) return std::binary_search(br.vertices.begin(), br.vertices.end(), b);
        return false;
    };
    std::optional<WeightedGraph::Edge> char_edge;
    for (const auto& e : g.edges) {
        if (points_to(e.u, e.v) && points_to(e.v, e.u)) {
            if (char_edge)
                throw InternalError(
                    "characteristic_set_perron: multiple mutually-Perron edges found");
            char_edge = e;
        }
    }
    if (!char_edge)
        throw InternalError("characteristic_set_perron: no Type I vertex and no mutually-Perron "
                            "edge (classification failure)");

    const int u = std::min(char_edge->u, char_edge->v);
    const int v = std::max(char_edge->u, char_edge->v);
    const double theta = char_edge->w;
    auto side_block = [&](int at, int containing) -> const Matrix& {
        for (const auto& br : branches[at])
            if (std::binary_search(br.vertices.begin(), br.vertices.end(), containing))
                return br.bottleneck;
        throw InternalError("characteristic_set_perron: branch lookup failed");
    };
    const Matrix& m1 = side_block(u, v);  // block of the branch at u containing v
    const Matrix& m2 = side_block(v, u);  // block of the branch at v containing u

    auto shifted_rho = [&](const Matrix& m, double coef) {
        Matrix s = m;
        for (int i = 0; i < s.n(); ++i)
            for (int j = 0; j < s.n(); ++j) s(i, j) -= coef;
        return detail::lambda_max(s);
    };
    double lo = 0.0, hi = 1.0;
    double r1 = 0.0;
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        r1 = shifted_rho(m1, mid / theta);
        const double r2 = shifted_rho(m2, (1.0 - mid) / theta);
        if (r1 > r2)
            lo = mid;
        else
            hi = mid;
    }
    const double gamma = 0.5 * (lo + hi);
    r1 = shifted_rho(m1, gamma / theta);

    res.tree_type = TreeType::TYPE_II;
    res.vertices = {u, v};
    res.algebraic_connectivity = 1.0 / r1;
    res.gamma = gamma;
    return res;
}

// Characteristic set from the sign pattern of a Fiedler vector.  Entries
// within zero_band (relative to the largest magnitude) count as zero.  For
// Type II, gamma interpolates the sign change across the characteristic
// edge: the Fiedler value hits zero at fraction gamma of the edge from the
// smaller-labelled endpoint, matching the Perron-branch method's gamma.
inline CharacteristicSetResult characteristic_set_fiedler(const WeightedGraph& g,
                                                          double zero_band = 1e-7) {
    if (!is_tree(g)) throw HypothesisError("characteristic_set_fiedler: input must be a tree");
    if (g.n < 2)
        throw HypothesisError("characteristic_set_fiedler: need at least two vertices");
    const Matrix l = laplacian(g);
    const Eigensystem es = symmetric_eigensystem(l);
    const double a = es.values[g.n - 2];  // second smallest
    Vector f(g.n);
    for (int i = 0; i < g.n; ++i) f[i] = es.vectors(i, g.n - 2);
    double scale = 0.0;
    for (double t : f) scale = std::max(scale, std::abs(t));
    std::vector<char> zero(g.n, 0);
    for (int i = 0; i < g.n; ++i) zero[i] = std::abs(f[i]) <= zero_band * scale;

    const auto adj = detail::adjacency(g);
    CharacteristicSetResult res;
    res.method = CharMethod::FIEDLER_SIGN;
    res.algebraic_connectivity = a;

    if (std::any_of(zero.begin(), zero.end(), [](char z) { return z != 0; })) {
        std::vector<int> cands;
        for (int i = 1; i <= g.n; ++i) {
            if (!zero[i - 1]) continue;
            for (const auto& [j, w] : adj[i])
                if (!zero[j - 1]) {
                    cands.push_back(i);
                    break;
                }
        }
        if (cands.size() != 1)
            throw InternalError(
                "characteristic_set_fiedler: ambiguous zero pattern (near-degenerate Fiedler "
                "spectrum); cross-check with the Perron-branch method");
        res.tree_type = TreeType::TYPE_I;
        res.vertices = {cands.front()};
        return res;
    }

    std::vector<const WeightedGraph::Edge*> cross;
    for (const auto& e : g.edges)
        if (f[e.u - 1] * f[e.v - 1] < 0.0) cross.push_back(&e);
    if (cross.size() != 1)
        throw InternalError(
            "characteristic_set_fiedler: expected exactly one sign-change edge, found " +
            std::to_string(cross.size()));
    const int u = std::min(cross.front()->u, cross.front()->v);
    const int v = std::max(cross.front()->u, cross.front()->v);
    res.tree_type = TreeType::TYPE_II;
    res.vertices = {u, v};
    res.gamma = f[u - 1] / (f[u - 1] - f[v - 1]);
    return res;
}

// Upper/lower bound report for the Perron value of a rooted tree's
// bottleneck matrix M, with the neckbottle matrix Q = N N^T supplying the
// sharper companion lower bounds:
//   - column-sum norm ||M||_1 = a_1(M, 1);
//   - combinatorial Perron value rho_c = c_2(Q, 1);
//   - pi = sqrt(c_2(Q,1) c_3(Q,1));
//   - the full a/b/c sequences on M and the c sequence on Q;
//   - the Perron value itself with its final Collatz-Wielandt bracket.
// The orderings rho_c <= pi <= c_k(Q,1) (k >= 3) and a_k(M,1) <= ||M||_1
// (k >= 2) are asserted within a relative slack: they hold strictly for
// every nondegenerate tree, but consecutive values merge at machine
// precision as the sequences converge (and coincide exactly on the
// single-vertex tree), so only a wrong-way violation beyond the slack is
// treated as an internal error.
struct BoundReport {
    double m_norm_1;
    double rho_c;
    double pi_bound;
    BoundSequence a_m, b_m, c_m, c_q;
    double rho_m;
    double rho_lower, rho_upper;
};

inline BoundReport bound_report(const RootedTree& t, int k_max) {
    if (k_max < 3) throw HypothesisError("bound_report: K must be >= 3");
    const Matrix m = bottleneck_of_rooted_tree(t);
    const Matrix q = neckbottle(t);
    const Vector ones(t.n, 1.0);

    BoundReport rep;
    auto [a_m, b_m] = ab_seq(m, ones, k_max);
    rep.a_m = std::move(a_m);
    rep.b_m = std::move(b_m);
    rep.c_m = c_seq(m, ones, k_max);
    rep.c_q = c_seq(q, ones, k_max);
    rep.m_norm_1 = rep.a_m.values.front();
    rep.rho_c = rep.c_q.values[1];
    rep.pi_bound = std::sqrt(rep.c_q.values[1] * rep.c_q.values[2]);

    const PerronPair pp = perron_root(m);
    rep.rho_m = pp.value;
    rep.rho_lower = pp.lower;
    rep.rho_upper = pp.upper;

    auto slack = [](double v) { return 1e-9 * std::max(1.0, std::abs(v)); };
    for (int k = 2; k <= k_max; ++k)
        if (rep.a_m.values[k - 1] > rep.m_norm_1 + slack(rep.m_norm_1))
            throw InternalError("bound_report: a_k(M,1) exceeded ||M||_1 at k=" +
                                std::to_string(k));
    if (rep.rho_c > rep.pi_bound + slack(rep.pi_bound))
        throw InternalError("bound_report: rho_c exceeded pi");
    for (int k = 3; k <= k_max; ++k)
        if (rep.pi_bound > rep.c_q.values[k - 1] + slack(rep.pi_bound))
            throw InternalError("bound_report: pi exceeded c_k(Q,1) at k=" + std::to_string(k));
    return rep;
}

} // namespace perron
