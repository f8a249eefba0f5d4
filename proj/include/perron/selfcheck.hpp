#pragma once

// Seeded randomized property suites behind the `selfcheck` subcommand.
// Each suite draws its own deterministic RNG stream from the caller's seed,
// runs a batch of randomized instances, and reports the first violation it
// finds.  The properties are the cross-module invariants the unit tests pin
// on fixed corpora, re-checked here on fresh random instances.

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "perron/bounds.hpp"
#include "perron/broom.hpp"
#include "perron/eig.hpp"
#include "perron/logindex.hpp"
#include "perron/matrix.hpp"
#include "perron/power_iteration.hpp"
#include "perron/rational.hpp"
#include "perron/tree.hpp"

namespace perron {

struct CheckOutcome {
    std::string suite;
    int trials;
    bool passed;
    std::string note;  // empty on success, first violation otherwise
};

namespace detail {

inline WeightedGraph selfcheck_random_tree(std::mt19937_64& rng, int n, bool weighted) {
    WeightedGraph g;
    g.n = n;
    if (n == 1) return g;
    std::uniform_real_distribution<double> wdist(0.5, 2.0);
    auto weight = [&]() { return weighted ? wdist(rng) : 1.0; };
    if (n == 2) {
        g.edges.push_back({1, 2, weight()});
        return g;
    }
    std::uniform_int_distribution<int> lab(1, n);
    std::vector<int> seq(n - 2);
    std::vector<int> deg(n + 1, 1);
    for (int& s : seq) {
        s = lab(rng);
        ++deg[s];
    }
    std::vector<int> leaves;
    for (int v = 1; v <= n; ++v)
        if (deg[v] == 1) leaves.push_back(v);
    std::make_heap(leaves.begin(), leaves.end(), std::greater<>());
    for (int v : seq) {
        std::pop_heap(leaves.begin(), leaves.end(), std::greater<>());
        const int u = leaves.back();
        leaves.pop_back();
        g.edges.push_back({u, v, weight()});
        if (--deg[v] == 1) {
            leaves.push_back(v);
            std::push_heap(leaves.begin(), leaves.end(), std::greater<>());
        }
    }
    std::sort(leaves.begin(), leaves.end());
    g.edges.push_back({leaves[0], leaves[1], weight()});
    return g;
}

inline Matrix selfcheck_random_positive(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> entry(0.05, 1.0);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = entry(rng);
    return a;
}

inline Matrix selfcheck_random_gram(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> entry(0, 3);
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = entry(rng);
    Matrix a = mat_mul(transpose(b), b);
    for (int i = 0; i < n; ++i) a(i, i) += 1.0;
    return a;
}

} // namespace detail

// Bound sandwich on random positive matrices: a_k non-increasing, b_k
// non-decreasing, and b_K <= rho <= a_K.
inline CheckOutcome check_bound_sandwich(std::mt19937_64 rng, int trials) {
    CheckOutcome out{"bound-sandwich", trials, true, ""};
    std::uniform_int_distribution<int> dim(2, 8);
    std::uniform_real_distribution<double> xe(0.1, 2.0);
    for (int t = 0; t < trials && out.passed; ++t) {
        const int n = dim(rng);
        const Matrix a = detail::selfcheck_random_positive(rng, n);
        Vector x(n);
        for (double& e : x) e = xe(rng);
        const auto [as, bs] = ab_seq(a, x, 25);
        const double rho = perron_root(a).value;
        for (std::size_t k = 1; k < as.values.size() && out.passed; ++k) {
            if (as.values[k] > as.values[k - 1] + 1e-10 ||
                bs.values[k] < bs.values[k - 1] - 1e-10) {
                out.passed = false;
                std::ostringstream msg;
                msg << "trial " << t << ": monotonicity broken at k=" << (k + 1);
                out.note = msg.str();
            }
        }
        if (out.passed &&
            (bs.values.back() > rho * (1 + 1e-9) || as.values.back() < rho * (1 - 1e-9))) {
            out.passed = false;
            std::ostringstream msg;
            msg << "trial " << t << ": sandwich violated (b=" << bs.values.back()
                << ", rho=" << rho << ", a=" << as.values.back() << ")";
            out.note = msg.str();
        }
    }
    return out;
}

// Moment-ratio growth on random symmetric positive definite matrices: c_k
// non-decreasing and below the Perron value.
inline CheckOutcome check_moment_growth(std::mt19937_64 rng, int trials) {
    CheckOutcome out{"moment-growth", trials, true, ""};
    std::uniform_int_distribution<int> dim(2, 7);
    std::uniform_int_distribution<int> xe(1, 4);
    int usable = 0;
    for (int t = 0; t < trials && out.passed; ++t) {
        const int n = dim(rng);
        const Matrix a = detail::selfcheck_random_gram(rng, n);
        Vector x(n);
        for (double& e : x) e = xe(rng);
        if (!is_irreducible(a)) continue;
        ++usable;
        const BoundSequence cs = c_seq(a, x, 30);
        const double rho = perron_root(a).value;
        for (std::size_t k = 1; k < cs.values.size() && out.passed; ++k) {
            if (cs.values[k] < cs.values[k - 1] - 1e-9 * std::max(1.0, cs.values[k - 1])) {
                out.passed = false;
                std::ostringstream msg;
                msg << "trial " << t << ": c-sequence decreased at k=" << (k + 1);
                out.note = msg.str();
            }
        }
        if (out.passed && cs.values.back() > rho * (1 + 1e-9)) {
            out.passed = false;
            std::ostringstream msg;
            msg << "trial " << t << ": c_K=" << cs.values.back() << " exceeds rho=" << rho;
            out.note = msg.str();
        }
    }
    if (out.passed && usable < trials / 2) {
        out.passed = false;
        out.note = "too few irreducible instances (" + std::to_string(usable) + ")";
    }
    return out;
}

// Log-shape indices on random integer Gram matrices: the reported index
// sets contain the exact ratio extremizers beyond the onset, and every
// generated sequence has its promised log-shape from the onset on.
inline CheckOutcome check_logindex(std::mt19937_64 rng, int trials) {
    CheckOutcome out{"logindex-trace", trials, true, ""};
    std::uniform_int_distribution<int> dim(2, 5);
    std::uniform_int_distribution<int> xe(1, 4);
    int usable = 0;
    for (int t = 0; t < trials && out.passed; ++t) {
        const int n = dim(rng);
        const Matrix a = detail::selfcheck_random_gram(rng, n);
        Vector x(n);
        for (double& e : x) e = xe(rng);
        if (!is_irreducible(a)) continue;
        ++usable;
        try {
            const LogIndexResult res = find_log_indices(a, x);
            const int probe = res.onset_k + 8;
            const auto [amax, amin] = ratio_argmax_sets(a, x, probe);
            for (int idx : res.concavity_indices)
                if (!std::binary_search(amax.begin(), amax.end(), idx)) {
                    out.passed = false;
                    out.note = "trial " + std::to_string(t) + ": concavity index " +
                               std::to_string(idx) + " not an exact argmax at k=" +
                               std::to_string(probe);
                }
            for (int idx : res.convexity_indices)
                if (!std::binary_search(amin.begin(), amin.end(), idx)) {
                    out.passed = false;
                    out.note = "trial " + std::to_string(t) + ": convexity index " +
                               std::to_string(idx) + " not an exact argmin at k=" +
                               std::to_string(probe);
                }
            if (out.passed && !res.concavity_indices.empty()) {
                const GeneratedSequence seq =
                    generate(a, x, res.concavity_indices.front(), res.onset_k + 10,
                             SequenceOrigin::CONCAVITY_INDEX);
                const std::vector<BigRational> tail(
                    seq.values.begin() + std::max(0, res.onset_k - 1), seq.values.end());
                if (!verify_log_shape(tail, LogShape::LOG_CONCAVE, false)) {
                    out.passed = false;
                    out.note = "trial " + std::to_string(t) + ": concave tail check failed";
                }
            }
        } catch (const std::exception& e) {
            out.passed = false;
            out.note = "trial " + std::to_string(t) + ": " + e.what();
        }
    }
    if (out.passed && usable < trials / 2) {
        out.passed = false;
        out.note = "too few irreducible instances (" + std::to_string(usable) + ")";
    }
    return out;
}

// Rooted-tree matrix identities on random trees: bottleneck matrix equals
// N^T N exactly and matches the pendant construction; the neckbottle matrix
// shares the Perron value.
inline CheckOutcome check_tree_duality(std::mt19937_64 rng, int trials) {
    CheckOutcome out{"tree-duality", trials, true, ""};
    std::uniform_int_distribution<int> size(2, 40);
    for (int t = 0; t < trials && out.passed; ++t) {
        const int n = size(rng);
        const WeightedGraph g = detail::selfcheck_random_tree(rng, n, false);
        std::uniform_int_distribution<int> pick(1, n);
        const int root = pick(rng);
        const RootedTree tree = to_rooted(g, root);
        const Matrix m = bottleneck_of_rooted_tree(tree);
        const Matrix nn = path_matrix(tree);
        if (!(mat_mul(transpose(nn), nn) == m)) {
            out.passed = false;
            out.note = "trial " + std::to_string(t) + ": bottleneck != N^T N";
            break;
        }
        WeightedGraph ext = g;
        ext.n = n + 1;
        ext.edges.push_back({root, n + 1, 1.0});
        const Matrix at = bottleneck_at(ext, n + 1);
        const std::vector<int> order = dfs_order(tree);
        for (int i = 0; i < n && out.passed; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(m(i, j) - at(order[i] - 1, order[j] - 1)) > 1e-9) {
                    out.passed = false;
                    out.note = "trial " + std::to_string(t) + ": pendant construction mismatch";
                    break;
                }
        if (!out.passed) break;
        const double rho_m = perron_root(m, 1e-12).value;
        const double rho_q = detail::lambda_max(neckbottle(tree));
        if (std::abs(rho_m - rho_q) > 1e-9 * rho_m) {
            out.passed = false;
            out.note = "trial " + std::to_string(t) + ": spectrum sharing violated";
        }
    }
    return out;
}

// Characteristic-set agreement between the Perron-branch and Fiedler-sign
// methods on random trees, including gamma for Type II.
inline CheckOutcome check_characteristic_agreement(std::mt19937_64 rng, int trials) {
    CheckOutcome out{"characteristic-agreement", trials, true, ""};
    std::uniform_int_distribution<int> size(4, 40);
    for (int t = 0; t < trials && out.passed; ++t) {
        const int n = size(rng);
        const bool weighted = (t % 2) == 1;
        const WeightedGraph g = detail::selfcheck_random_tree(rng, n, weighted);
        try {
            const auto p = characteristic_set_perron(g);
            const auto f = characteristic_set_fiedler(g);
            if (p.tree_type != f.tree_type || p.vertices != f.vertices) {
                out.passed = false;
                out.note = "trial " + std::to_string(t) + ": classification mismatch";
            } else if (std::abs(p.algebraic_connectivity - f.algebraic_connectivity) >
                       1e-7 * f.algebraic_connectivity) {
                out.passed = false;
                out.note = "trial " + std::to_string(t) + ": connectivity mismatch";
            } else if (p.tree_type == TreeType::TYPE_II &&
                       std::abs(*p.gamma - *f.gamma) > 1e-7) {
                out.passed = false;
                out.note = "trial " + std::to_string(t) + ": gamma mismatch";
            }
        } catch (const std::exception& e) {
            out.passed = false;
            out.note = "trial " + std::to_string(t) + ": " + e.what();
        }
    }
    return out;
}

// Broom bracketing: for a random rooted tree with root eccentricity d on
// n = d + r vertices, the B1/B2 broom bottleneck matrices bracket the
// tree's Perron value.
inline CheckOutcome check_broom_bracket(std::mt19937_64 rng, int trials) {
    CheckOutcome out{"broom-bracket", trials, true, ""};
    std::uniform_int_distribution<int> size(2, 35);
    for (int t = 0; t < trials && out.passed; ++t) {
        const int n = size(rng);
        const WeightedGraph g = detail::selfcheck_random_tree(rng, n, false);
        std::uniform_int_distribution<int> pick(1, n);
        const RootedTree tree = to_rooted(g, pick(rng));
        const int d = root_eccentricity(tree);
        const int r = n - d;
        const double rho = perron_root(bottleneck_of_rooted_tree(tree)).value;
        const double lo = perron_root(
            bottleneck_of_rooted_tree(build_broom(BroomVariant::B1, {d, r}))).value;
        const double hi = perron_root(
            bottleneck_of_rooted_tree(build_broom(BroomVariant::B2, {d, r}))).value;
        if (lo > rho * (1 + 1e-9) || rho > hi * (1 + 1e-9)) {
            out.passed = false;
            std::ostringstream msg;
            msg << "trial " << t << ": bracket violated (lo=" << lo << ", rho=" << rho
                << ", hi=" << hi << ", d=" << d << ", r=" << r << ")";
            out.note = msg.str();
        }
    }
    return out;
}

// Runs all suites with per-suite RNG streams derived from one seed.
inline std::vector<CheckOutcome> run_selfcheck(std::uint64_t seed) {
    auto stream = [seed](std::uint64_t salt) {
        return std::mt19937_64(seed ^ (salt * 0x9E3779B97F4A7C15ull));
    };
    std::vector<CheckOutcome> results;
    results.push_back(check_bound_sandwich(stream(1), 40));
    results.push_back(check_moment_growth(stream(2), 40));
    results.push_back(check_logindex(stream(3), 25));
    results.push_back(check_tree_duality(stream(4), 25));
    results.push_back(check_characteristic_agreement(stream(5), 30));
    results.push_back(check_broom_bracket(stream(6), 20));
    return results;
}

} // namespace perron
