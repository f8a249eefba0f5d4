#pragma once

// Text formats consumed and produced by the command-line front end.
//
//   Matrix file:  first line `n`, then n rows of n whitespace-separated
//                 decimal numbers.
//   Vector file:  first line `n`, then n whitespace-separated numbers.
//   Tree/graph:   first line `n` optionally followed by the word
//                 `weighted`; one edge per line `u v [w]` (weight required
//                 exactly when the header says weighted); rooted trees add
//                 a final line `root r`.
//
// Floats render with 12 significant digits everywhere, so identical inputs
// produce byte-identical reports.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "perron/errors.hpp"
#include "perron/matrix.hpp"
#include "perron/tree.hpp"

namespace perron {

struct TreeInput {
    WeightedGraph graph;
    std::optional<int> root;
};

namespace detail {

// Strips comments (everything from `#`) and returns the next line that
// still carries any content.
inline bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream probe(line);
        std::string token;
        if (probe >> token) return true;
    }
    return false;
}

} // namespace detail

inline Matrix read_matrix(std::istream& in, const std::string& origin) {
    std::string line;
    if (!detail::next_content_line(in, line))
        throw InputError(origin + ": empty input, expected a dimension line");
    std::istringstream head(line);
    int n = 0;
    if (!(head >> n) || n < 1)
        throw InputError(origin + ": first line must be a positive dimension");
    std::string extra;
    if (head >> extra) throw InputError(origin + ": unexpected token '" + extra +
                                        "' after the dimension");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!detail::next_content_line(in, line))
            throw InputError(origin + ": expected " + std::to_string(n) + " rows, got " +
                             std::to_string(i));
        std::istringstream row(line);
        for (int j = 0; j < n; ++j) {
            if (!(row >> m(i, j)))
                throw InputError(origin + ": row " + std::to_string(i + 1) + " needs " +
                                 std::to_string(n) + " entries");
        }
        if (row >> extra)
            throw InputError(origin + ": row " + std::to_string(i + 1) + " has more than " +
                             std::to_string(n) + " entries");
    }
    return m;
}

inline Vector read_vector(std::istream& in, const std::string& origin) {
    std::string line;
    if (!detail::next_content_line(in, line))
        throw InputError(origin + ": empty input, expected a length line");
    std::istringstream head(line);
    int n = 0;
    if (!(head >> n) || n < 1)
        throw InputError(origin + ": first line must be a positive length");
    Vector v(n);
    int got = 0;
    while (got < n) {
        if (!detail::next_content_line(in, line))
            throw InputError(origin + ": expected " + std::to_string(n) + " entries, got " +
                             std::to_string(got));
        std::istringstream row(line);
        double value = 0.0;
        while (got < n && row >> value) v[got++] = value;
        std::string extra;
        if (got == n && row >> extra)
            throw InputError(origin + ": more than " + std::to_string(n) + " entries");
    }
    return v;
}

inline TreeInput read_tree(std::istream& in, const std::string& origin) {
    std::string line;
    if (!detail::next_content_line(in, line))
        throw InputError(origin + ": empty input, expected a header line");
    std::istringstream head(line);
    int n = 0;
    if (!(head >> n) || n < 1)
        throw InputError(origin + ": header must start with a positive vertex count");
    bool weighted = false;
    std::string flag;
    if (head >> flag) {
        if (flag != "weighted")
            throw InputError(origin + ": unrecognized header flag '" + flag + "'");
        weighted = true;
        if (head >> flag) throw InputError(origin + ": trailing token after 'weighted'");
    }

    TreeInput t;
    t.graph.n = n;
    while (detail::next_content_line(in, line)) {
        std::istringstream row(line);
        std::string first;
        row >> first;
        if (first == "root") {
            int r = 0;
            if (!(row >> r)) throw InputError(origin + ": 'root' line needs a vertex label");
            if (row >> first) throw InputError(origin + ": trailing token after the root label");
            if (t.root) throw InputError(origin + ": multiple 'root' lines");
            if (r < 1 || r > n)
                throw InputError(origin + ": root label " + std::to_string(r) +
                                 " out of range 1.." + std::to_string(n));
            t.root = r;
            continue;
        }
        if (t.root) throw InputError(origin + ": edges after the 'root' line");
        int u = 0, v = 0;
        double w = 1.0;
        std::istringstream edge(line);
        if (!(edge >> u >> v))
            throw InputError(origin + ": edge line '" + line + "' needs two vertex labels");
        if (weighted) {
            if (!(edge >> w))
                throw InputError(origin + ": weighted graph, edge line '" + line +
                                 "' needs a weight");
        }
        std::string extra;
        if (edge >> extra)
            throw InputError(origin + ": trailing token '" + extra + "' on edge line");
        t.graph.edges.push_back({u, v, w});
    }
    return t;
}

inline Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open matrix file '" + path + "'");
    return read_matrix(in, path);
}

inline Vector read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open vector file '" + path + "'");
    return read_vector(in, path);
}

inline TreeInput read_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open tree file '" + path + "'");
    return read_tree(in, path);
}

// 12-significant-digit rendering used for every float the tools emit.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace perron
