// Command-line front end for the perron library.
//
// Subcommands:
//   bounds    <matrix> [--x vec]      ratio/moment bound sequences + Perron bracket
//   tree      <tree>                  characteristic set (both methods) + bound report
//   broom     --d D (--r R|--r-max R) exact broom bounds, gap, crossing polynomial
//   logindex  <matrix> [--x vec]      log-concavity/log-convexity indices + sequences
//   selfcheck                         randomized cross-validation suites
//
// Global flags: --k, --tol, --format {json,csv,text}, --seed, --out.
//
// Exit codes: 0 success; 1 unusable input (parse/file errors); 2 violated
// mathematical hypothesis or non-convergence; 3 internal invariant failure
// (including disagreement between the two characteristic-set methods and
// closed-form vs. recurrence mismatches, neither of which should ever occur).
//
// All JSON output carries "schema": 1.  Floating-point values are emitted
// with 12 significant digits; exact rationals appear as {"exact": "p/q",
// "value": <double>} pairs.  Output is byte-identical across runs with the
// same arguments.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "perron/bounds.hpp"
#include "perron/broom.hpp"
#include "perron/errors.hpp"
#include "perron/io.hpp"
#include "perron/logindex.hpp"
#include "perron/matrix.hpp"
#include "perron/power_iteration.hpp"
#include "perron/selfcheck.hpp"
#include "perron/tree.hpp"

using json = nlohmann::ordered_json;

namespace {

// Numbers are round-tripped through the 12-significant-digit text form so
// that JSON output is byte-identical across platforms and runs.
json fnum(double v) {
    if (!std::isfinite(v)) return json(v > 0 ? "inf" : (v < 0 ? "-inf" : "nan"));
    return json::parse(perron::format_double(v));
}

json rat(const perron::BigRational& q) {
    return json{{"exact", q.to_string()}, {"value", fnum(q.to_double())}};
}

json num_array(const std::vector<double>& values) {
    json arr = json::array();
    for (double v : values) arr.push_back(fnum(v));
    return arr;
}

const char* monotonicity_name(perron::Monotonicity m) {
    switch (m) {
        case perron::Monotonicity::STRICTLY_DECREASING: return "STRICTLY_DECREASING";
        case perron::Monotonicity::STRICTLY_INCREASING: return "STRICTLY_INCREASING";
        case perron::Monotonicity::CONSTANT_FROM: return "CONSTANT_FROM";
        case perron::Monotonicity::NON_STRICT: return "NON_STRICT";
    }
    return "?";
}

const char* bound_kind_name(perron::BoundKind k) {
    switch (k) {
        case perron::BoundKind::A_MAX_RATIO: return "max_ratio";
        case perron::BoundKind::B_MIN_RATIO: return "min_ratio";
        case perron::BoundKind::C_RAYLEIGH: return "rayleigh";
    }
    return "?";
}

json monotonicity_json(const perron::BoundSequence& seq) {
    if (seq.values.size() < 2) return json(nullptr);
    const perron::MonotonicityReport rep = perron::classify_monotonicity(seq);
    json j;
    j["classification"] = monotonicity_name(rep.classification);
    j["constant_from"] = rep.onset_index ? json(*rep.onset_index) : json(nullptr);
    j["strictness_tolerance"] = fnum(rep.strictness_tolerance);
    return j;
}

json sequence_json(const perron::BoundSequence& seq) {
    json j;
    j["kind"] = bound_kind_name(seq.kind);
    j["values"] = num_array(seq.values);
    j["monotonicity"] = monotonicity_json(seq);
    return j;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw perron::InputError("cannot open output file: " + out_path);
    f << content;
    if (!f) throw perron::InputError("failed writing output file: " + out_path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- bounds --

int cmd_bounds(const std::string& matrix_path, const std::string& x_path, int k, double tol,
               const std::string& format, const std::string& out_path) {
    const perron::Matrix a = perron::read_matrix_file(matrix_path);
    const perron::Vector x =
        x_path.empty() ? perron::Vector(a.n(), 1.0) : perron::read_vector_file(x_path);

    const auto [a_seq, b_seq] = perron::ab_seq(a, x, k);
    const perron::PerronPair pp = perron::perron_root(a, tol);

    std::optional<perron::BoundSequence> c_seq;
    std::string c_reason;
    try {
        c_seq = perron::c_seq(a, x, k);
    } catch (const perron::HypothesisError& e) {
        c_reason = e.what();
    }

    const std::optional<int> onset = perron::perron_onset(a, x, k, tol);

    json j;
    j["schema"] = 1;
    j["command"] = "bounds";
    j["n"] = a.n();
    j["k"] = k;
    j["tol"] = fnum(tol);
    j["perron"] = {{"value", fnum(pp.value)},     {"lower", fnum(pp.lower)},
                   {"upper", fnum(pp.upper)},     {"residual", fnum(pp.residual)},
                   {"iterations", pp.iterations}};
    j["a"] = sequence_json(a_seq);
    j["b"] = sequence_json(b_seq);
    if (c_seq) {
        j["c"] = sequence_json(*c_seq);
    } else {
        j["c"] = nullptr;
        j["c_unavailable"] = c_reason;
    }
    j["perron_vector_onset"] = onset ? json(*onset) : json(nullptr);

    if (format == "json") {
        emit(out_path, dump(j));
    } else if (format == "csv") {
        std::ostringstream os;
        os << "k,a,b,c\n";
        for (int i = 0; i < k; ++i) {
            os << (i + 1) << ',' << perron::format_double(a_seq.values[i]) << ','
               << perron::format_double(b_seq.values[i]) << ',';
            if (c_seq) os << perron::format_double(c_seq->values[i]);
            os << '\n';
        }
        emit(out_path, os.str());
    } else {
        std::ostringstream os;
        os << "matrix: " << a.n() << " x " << a.n() << ", K = " << k << "\n";
        os << "perron value: " << perron::format_double(pp.value) << "  bracket ["
           << perron::format_double(pp.lower) << ", " << perron::format_double(pp.upper)
           << "]  (" << pp.iterations << " iterations)\n";
        auto line = [&](const char* name, const perron::BoundSequence& s) {
            os << name << ": first " << perron::format_double(s.values.front()) << ", last "
               << perron::format_double(s.values.back());
            if (s.values.size() >= 2) {
                const auto rep = perron::classify_monotonicity(s);
                os << ", " << monotonicity_name(rep.classification);
                if (rep.onset_index) os << " (from k = " << *rep.onset_index << ")";
            }
            os << "\n";
        };
        line("a (upper)", a_seq);
        line("b (lower)", b_seq);
        if (c_seq)
            line("c (lower)", *c_seq);
        else
            os << "c (lower): unavailable - " << c_reason << "\n";
        if (onset)
            os << "iterate becomes a Perron vector at r = " << *onset << "\n";
        else
            os << "iterate is not a Perron vector within K steps\n";
        emit(out_path, os.str());
    }
    return 0;
}

// ------------------------------------------------------------------ tree --

json characteristic_json(const perron::CharacteristicSetResult& r) {
    json j;
    j["type"] = r.tree_type == perron::TreeType::TYPE_I ? "TYPE_I" : "TYPE_II";
    j["vertices"] = r.vertices;
    j["algebraic_connectivity"] = fnum(r.algebraic_connectivity);
    j["gamma"] = r.gamma ? fnum(*r.gamma) : json(nullptr);
    return j;
}

int cmd_tree(const std::string& tree_path, int k, const std::string& format,
             const std::string& out_path) {
    const perron::TreeInput input = perron::read_tree_file(tree_path);
    const perron::WeightedGraph& g = input.graph;

    const perron::CharacteristicSetResult cp = perron::characteristic_set_perron(g);
    const perron::CharacteristicSetResult cf = perron::characteristic_set_fiedler(g);

    bool agree = cp.tree_type == cf.tree_type && cp.vertices == cf.vertices;
    const double conn_scale = std::max(std::abs(cf.algebraic_connectivity), 1e-30);
    agree = agree &&
            std::abs(cp.algebraic_connectivity - cf.algebraic_connectivity) <= 1e-7 * conn_scale;
    if (cp.gamma.has_value() != cf.gamma.has_value()) agree = false;
    if (cp.gamma && cf.gamma) agree = agree && std::abs(*cp.gamma - *cf.gamma) <= 1e-7;

    bool weighted = false;
    for (const auto& e : g.edges) weighted = weighted || e.w != 1.0;

    std::optional<perron::BoundReport> report;
    int root = input.root.value_or(1);
    if (!weighted) report = perron::bound_report(perron::to_rooted(g, root), std::max(k, 3));

    json j;
    j["schema"] = 1;
    j["command"] = "tree";
    j["n"] = g.n;
    j["weighted"] = weighted;
    j["characteristic"] = {{"perron_branch", characteristic_json(cp)},
                           {"fiedler_sign", characteristic_json(cf)},
                           {"methods_agree", agree}};
    if (report) {
        json b;
        b["root"] = root;
        b["k"] = std::max(k, 3);
        b["m_norm_1"] = fnum(report->m_norm_1);
        b["rho_c"] = fnum(report->rho_c);
        b["pi"] = fnum(report->pi_bound);
        b["rho"] = fnum(report->rho_m);
        b["rho_lower"] = fnum(report->rho_lower);
        b["rho_upper"] = fnum(report->rho_upper);
        b["a"] = sequence_json(report->a_m);
        b["b"] = sequence_json(report->b_m);
        b["c_m"] = sequence_json(report->c_m);
        b["c_q"] = sequence_json(report->c_q);
        j["bounds"] = b;
    } else {
        j["bounds"] = nullptr;
        j["bounds_unavailable"] = "bottleneck bound report is defined for unweighted trees";
    }

    auto char_text = [&](const char* name, const perron::CharacteristicSetResult& r) {
        std::ostringstream os;
        os << name << ": " << (r.tree_type == perron::TreeType::TYPE_I ? "Type I" : "Type II")
           << ", vertices {";
        for (size_t i = 0; i < r.vertices.size(); ++i)
            os << (i ? ", " : "") << r.vertices[i];
        os << "}, a(G) = " << perron::format_double(r.algebraic_connectivity);
        if (r.gamma) os << ", gamma = " << perron::format_double(*r.gamma);
        return os.str();
    };

    if (format == "json") {
        emit(out_path, dump(j));
    } else if (format == "csv") {
        std::ostringstream os;
        os << "method,type,vertices,algebraic_connectivity,gamma\n";
        auto row = [&](const char* name, const perron::CharacteristicSetResult& r) {
            os << name << ',' << (r.tree_type == perron::TreeType::TYPE_I ? "TYPE_I" : "TYPE_II")
               << ',';
            for (size_t i = 0; i < r.vertices.size(); ++i) os << (i ? " " : "") << r.vertices[i];
            os << ',' << perron::format_double(r.algebraic_connectivity) << ',';
            if (r.gamma) os << perron::format_double(*r.gamma);
            os << '\n';
        };
        row("perron_branch", cp);
        row("fiedler_sign", cf);
        emit(out_path, os.str());
    } else {
        std::ostringstream os;
        os << "tree on " << g.n << " vertices" << (weighted ? " (weighted)" : "") << "\n";
        os << char_text("perron-branch method", cp) << "\n";
        os << char_text("fiedler-sign method ", cf) << "\n";
        os << "methods agree: " << (agree ? "yes" : "NO") << "\n";
        if (report) {
            os << "bound report (root " << root << ", K = " << std::max(k, 3) << "):\n";
            os << "  ||M||_1 = " << perron::format_double(report->m_norm_1)
               << ", rho_c = " << perron::format_double(report->rho_c)
               << ", pi = " << perron::format_double(report->pi_bound) << "\n";
            os << "  rho(M) = " << perron::format_double(report->rho_m) << " in ["
               << perron::format_double(report->rho_lower) << ", "
               << perron::format_double(report->rho_upper) << "]\n";
        } else {
            os << "bound report: unavailable (weighted tree)\n";
        }
        emit(out_path, os.str());
    }
    // A disagreement between the two methods means a library invariant broke;
    // the report above is still emitted so the discrepancy can be inspected.
    if (!agree) {
        std::cerr << "error: characteristic-set methods disagree\n";
        return 3;
    }
    return 0;
}

// ----------------------------------------------------------------- broom --

int cmd_broom_single(int d, int r, bool want_r0, double tol, const std::string& format,
                     const std::string& out_path) {
    const perron::BroomParams p{d, r};
    const perron::BigRational a3 = perron::a3_upper_B2(p);
    const perron::BroomLowerBounds lb = perron::c3_lower_B1(p);
    const perron::BigRational classical = perron::classical_upper_bound(p);
    const perron::BigRational gap = perron::upper_gap(p);
    const perron::BigRational cross = perron::F_crossing(p);

    // Closed forms are recomputed from the exact matrix recurrences; any
    // mismatch is an internal invariant failure, not a user error.
    const int n = d + r;
    {
        const auto m3 = perron::broom_iterate(perron::BroomMatrixKind::B2_BOTTLENECK, p, 3);
        const auto m2 = perron::broom_iterate(perron::BroomMatrixKind::B2_BOTTLENECK, p, 2);
        if (a3 * m2.values[n - 1] != m3.values[n - 1])
            throw perron::InternalError("broom: a3 closed form disagrees with recurrence");
        auto total = [&](const perron::BroomIterates& it) {
            perron::BigRational s(0);
            for (const auto& v : it.values) s = s + v;
            return s;
        };
        const auto q3 = perron::broom_iterate(perron::BroomMatrixKind::B1_NECKBOTTLE, p, 3);
        const auto q2 = perron::broom_iterate(perron::BroomMatrixKind::B1_NECKBOTTLE, p, 2);
        if (lb.via_q * total(q2) != total(q3))
            throw perron::InternalError("broom: c3-via-Q closed form disagrees with recurrence");
        const auto b3 = perron::broom_iterate(perron::BroomMatrixKind::B1_BOTTLENECK, p, 3);
        const auto b2 = perron::broom_iterate(perron::BroomMatrixKind::B1_BOTTLENECK, p, 2);
        if (lb.via_m * total(b2) != total(b3))
            throw perron::InternalError("broom: c3-via-M closed form disagrees with recurrence");
        if (gap != classical - a3)
            throw perron::InternalError("broom: gap closed form disagrees with its definition");
    }

    const perron::Matrix m1 =
        perron::bottleneck_of_rooted_tree(perron::build_broom(perron::BroomVariant::B1, p));
    const perron::Matrix m2 =
        perron::bottleneck_of_rooted_tree(perron::build_broom(perron::BroomVariant::B2, p));
    const double rho_b1 = perron::perron_root(m1, tol).value;
    const double rho_b2 = perron::perron_root(m2, tol).value;

    std::optional<double> r0;
    if (want_r0) r0 = perron::find_r0(d);

    json j;
    j["schema"] = 1;
    j["command"] = "broom";
    j["d"] = d;
    j["r"] = r;
    j["a3_upper"] = rat(a3);
    j["c3_lower_via_q"] = rat(lb.via_q);
    j["c3_lower_via_m"] = rat(lb.via_m);
    j["classical_upper"] = rat(classical);
    j["upper_gap"] = rat(gap);
    j["crossing_poly"] = rat(cross);
    j["rho_b1"] = fnum(rho_b1);
    j["rho_b2"] = fnum(rho_b2);
    j["recurrence_check"] = "ok";
    if (r0) j["r0"] = fnum(*r0);

    if (format == "json") {
        emit(out_path, dump(j));
    } else if (format == "csv") {
        std::ostringstream os;
        os << "quantity,exact,value\n";
        auto row = [&](const char* name, const perron::BigRational& q) {
            os << name << ',' << q.to_string() << ',' << perron::format_double(q.to_double())
               << '\n';
        };
        row("a3_upper", a3);
        row("c3_lower_via_q", lb.via_q);
        row("c3_lower_via_m", lb.via_m);
        row("classical_upper", classical);
        row("upper_gap", gap);
        row("crossing_poly", cross);
        os << "rho_b1,," << perron::format_double(rho_b1) << '\n';
        os << "rho_b2,," << perron::format_double(rho_b2) << '\n';
        if (r0) os << "r0,," << perron::format_double(*r0) << '\n';
        emit(out_path, os.str());
    } else {
        std::ostringstream os;
        os << "broom d = " << d << ", r = " << r << " (" << n << " vertices)\n";
        auto row = [&](const char* name, const perron::BigRational& q) {
            os << "  " << name << " = " << q.to_string() << " = "
               << perron::format_double(q.to_double()) << "\n";
        };
        row("a3 upper bound   ", a3);
        row("c3 lower (via Q) ", lb.via_q);
        row("c3 lower (via M) ", lb.via_m);
        row("classical upper  ", classical);
        row("upper-bound gap  ", gap);
        row("crossing poly F  ", cross);
        os << "  rho(B1 bottleneck) = " << perron::format_double(rho_b1) << "\n";
        os << "  rho(B2 bottleneck) = " << perron::format_double(rho_b2) << "\n";
        if (r0) os << "  crossing root r0(d) = " << perron::format_double(*r0) << "\n";
        os << "  closed forms match recurrences: yes\n";
        emit(out_path, os.str());
    }
    return 0;
}

int cmd_broom_sweep(int d, int r_max, const std::string& format, const std::string& out_path) {
    const std::vector<perron::SweepRow> rows = perron::figure4_sweep(d, r_max);
    const double r0 = perron::find_r0(d);

    json j;
    j["schema"] = 1;
    j["command"] = "broom-sweep";
    j["d"] = d;
    j["r_max"] = r_max;
    j["r0"] = fnum(r0);
    json jrows = json::array();
    for (const auto& row : rows)
        jrows.push_back({{"r", row.r},
                         {"c3_m", rat(row.c3_m)},
                         {"c3_q", rat(row.c3_q)},
                         {"rho_m", fnum(row.rho_m)}});
    j["rows"] = jrows;

    if (format == "json") {
        emit(out_path, dump(j));
        return 0;
    }
    if (format == "csv") {
        std::ostringstream os;
        os << "r,c3_M,c3_Q,rho_M\n";
        for (const auto& row : rows)
            os << row.r << ',' << perron::format_double(row.c3_m.to_double()) << ','
               << perron::format_double(row.c3_q.to_double()) << ','
               << perron::format_double(row.rho_m) << '\n';
        emit(out_path, os.str());
        // A CSV sweep written to a file gets a sibling JSON carrying the
        // exact rationals the CSV necessarily truncates.
        if (!out_path.empty()) {
            std::filesystem::path sibling(out_path);
            sibling.replace_extension(".json");
            if (sibling == std::filesystem::path(out_path)) sibling += ".exact.json";
            emit(sibling.string(), dump(j));
        }
        return 0;
    }
    std::ostringstream os;
    os << "broom sweep d = " << d << ", r = 1.." << r_max
       << "   (crossing root r0 = " << perron::format_double(r0) << ")\n";
    os << "    r        c3 via M        c3 via Q          rho(M)\n";
    for (const auto& row : rows) {
        os << std::setw(5) << row.r << std::setw(16)
           << perron::format_double(row.c3_m.to_double()) << std::setw(16)
           << perron::format_double(row.c3_q.to_double()) << std::setw(16)
           << perron::format_double(row.rho_m) << "\n";
    }
    emit(out_path, os.str());
    return 0;
}

// -------------------------------------------------------------- logindex --

const char* origin_name(perron::SequenceOrigin o) {
    switch (o) {
        case perron::SequenceOrigin::CONCAVITY_INDEX: return "concavity_index";
        case perron::SequenceOrigin::CONVEXITY_INDEX: return "convexity_index";
        case perron::SequenceOrigin::MOMENT: return "moment";
    }
    return "?";
}

json verdict_json(const perron::GeneratedSequence& seq, perron::LogShape shape, int from_k) {
    json j;
    j["shape"] = shape == perron::LogShape::LOG_CONCAVE ? "log_concave" : "log_convex";
    j["checked_from_k"] = from_k;
    bool positive = true;
    for (const auto& v : seq.values) positive = positive && v.sign() > 0;
    if (!positive) {
        j["verdict"] = "not_applicable";
        return j;
    }
    const std::vector<perron::BigRational> tail(seq.values.begin() + from_k, seq.values.end());
    const bool strict = perron::verify_log_shape(tail, shape, true);
    const bool loose = strict || perron::verify_log_shape(tail, shape, false);
    j["verdict"] = strict ? "strict" : (loose ? "non_strict" : "violated");
    return j;
}

int cmd_logindex(const std::string& matrix_path, const std::string& x_path, int window,
                 const std::string& format, const std::string& out_path) {
    const perron::Matrix a = perron::read_matrix_file(matrix_path);
    const perron::Vector x =
        x_path.empty() ? perron::Vector(a.n(), 1.0) : perron::read_vector_file(x_path);

    const perron::LogIndexResult res = perron::find_log_indices(a, x, window);
    const int k_max = std::max(11, res.onset_k + 11);

    struct Entry {
        std::optional<int> index;
        perron::GeneratedSequence seq;
        perron::LogShape shape;
        int from_k;
    };
    std::vector<Entry> entries;
    for (int i : res.concavity_indices)
        entries.push_back({i,
                           perron::generate(a, x, i, k_max,
                                            perron::SequenceOrigin::CONCAVITY_INDEX),
                           perron::LogShape::LOG_CONCAVE, res.onset_k});
    for (int i : res.convexity_indices)
        entries.push_back({i,
                           perron::generate(a, x, i, k_max,
                                            perron::SequenceOrigin::CONVEXITY_INDEX),
                           perron::LogShape::LOG_CONVEX, res.onset_k});
    entries.push_back(
        {std::nullopt, perron::generate_moments(a, x, k_max), perron::LogShape::LOG_CONVEX, 0});

    json j;
    j["schema"] = 1;
    j["command"] = "logindex";
    j["n"] = a.n();
    j["window"] = window;
    j["concavity_indices"] = res.concavity_indices;
    j["convexity_indices"] = res.convexity_indices;
    j["onset_k"] = res.onset_k;
    json trace = json::array();
    for (const auto& round : res.trace)
        trace.push_back({{"role", round.role == perron::LogRole::CONCAVITY ? "concavity"
                                                                           : "convexity"},
                         {"column", round.column},
                         {"eigenvalue", fnum(round.mu)},
                         {"chosen", round.chosen},
                         {"surviving", round.surviving}});
    j["trace"] = trace;
    json seqs = json::array();
    for (const auto& e : entries) {
        json s;
        s["origin"] = origin_name(e.seq.origin);
        s["index"] = e.index ? json(*e.index) : json(nullptr);
        json terms = json::array();
        const size_t shown = std::min<size_t>(12, e.seq.values.size());
        for (size_t t = 0; t < shown; ++t) terms.push_back(e.seq.values[t].to_string());
        s["first_terms"] = terms;
        s.update(verdict_json(e.seq, e.shape, e.from_k));
        seqs.push_back(s);
    }
    j["sequences"] = seqs;

    if (format == "json") {
        emit(out_path, dump(j));
    } else if (format == "csv") {
        std::ostringstream os;
        os << "origin,index,k,value\n";
        for (const auto& e : entries) {
            const size_t shown = std::min<size_t>(12, e.seq.values.size());
            for (size_t t = 0; t < shown; ++t) {
                os << origin_name(e.seq.origin) << ',';
                if (e.index) os << *e.index;
                os << ',' << t << ',' << e.seq.values[t].to_string() << '\n';
            }
        }
        emit(out_path, os.str());
    } else {
        std::ostringstream os;
        os << "matrix: " << a.n() << " x " << a.n() << ", window = " << window << "\n";
        auto set_text = [&](const char* name, const std::vector<int>& v) {
            os << name << ": {";
            for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
            os << "}\n";
        };
        set_text("log-concavity indices", res.concavity_indices);
        set_text("log-convexity indices", res.convexity_indices);
        os << "indices certified exactly for k >= " << res.onset_k << "\n";
        for (const auto& e : entries) {
            os << origin_name(e.seq.origin);
            if (e.index) os << " " << *e.index;
            os << ": ";
            const size_t shown = std::min<size_t>(8, e.seq.values.size());
            for (size_t t = 0; t < shown; ++t) os << (t ? ", " : "") << e.seq.values[t].to_string();
            const json v = verdict_json(e.seq, e.shape, e.from_k);
            os << ", ... [" << v["shape"].get<std::string>() << " "
               << v["verdict"].get<std::string>() << " from k = " << e.from_k << "]\n";
        }
        emit(out_path, os.str());
    }
    return 0;
}

// ------------------------------------------------------------- selfcheck --

int cmd_selfcheck(std::uint64_t seed, const std::string& format, const std::string& out_path) {
    const std::vector<perron::CheckOutcome> outcomes = perron::run_selfcheck(seed);
    bool all_passed = true;
    for (const auto& o : outcomes) all_passed = all_passed && o.passed;

    json j;
    j["schema"] = 1;
    j["command"] = "selfcheck";
    j["seed"] = seed;
    json suites = json::array();
    for (const auto& o : outcomes)
        suites.push_back({{"suite", o.suite},
                          {"trials", o.trials},
                          {"passed", o.passed},
                          {"note", o.note}});
    j["suites"] = suites;
    j["all_passed"] = all_passed;

    if (format == "json") {
        emit(out_path, dump(j));
    } else if (format == "csv") {
        std::ostringstream os;
        os << "suite,trials,passed,note\n";
        for (const auto& o : outcomes)
            os << o.suite << ',' << o.trials << ',' << (o.passed ? "true" : "false") << ','
               << o.note << '\n';
        emit(out_path, os.str());
    } else {
        std::ostringstream os;
        for (const auto& o : outcomes) {
            os << (o.passed ? "PASS" : "FAIL") << ' ' << o.suite << " (" << o.trials
               << " trials)";
            if (!o.note.empty()) os << " - " << o.note;
            os << '\n';
        }
        os << (all_passed ? "all suites passed" : "SELFCHECK FAILED") << '\n';
        emit(out_path, os.str());
    }
    return all_passed ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perron-value bounds, characteristic sets of trees, and exact broom bounds"};
    app.require_subcommand(1);

    int k = 50;
    double tol = 1e-9;
    std::string format = "json";
    std::uint64_t seed = 1;
    std::string out_path;
    app.add_option("--k", k, "sequence length K (default 50)")->check(CLI::PositiveNumber);
    app.add_option("--tol", tol, "convergence tolerance (default 1e-9)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "output format (default json)")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", seed, "seed for the selfcheck suites (default 1)");
    app.add_option("--out", out_path, "write output to this file instead of stdout");

    std::string matrix_path, x_path, tree_path;
    auto* bounds = app.add_subcommand("bounds", "bound sequences for a nonnegative matrix");
    bounds->fallthrough();
    bounds->add_option("matrix", matrix_path, "matrix file")->required();
    bounds->add_option("--x", x_path, "positive test vector file (default: all ones)");

    auto* tree = app.add_subcommand("tree", "characteristic set and bound report for a tree");
    tree->fallthrough();
    tree->add_option("tree", tree_path, "tree edge-list file")->required();

    int d = 0, r = 0, r_max = 0;
    bool want_r0 = false;
    auto* broom = app.add_subcommand("broom", "exact closed-form bounds for broom trees");
    broom->fallthrough();
    broom->add_option("--d", d, "path length d")->required()->check(CLI::PositiveNumber);
    auto* r_opt = broom->add_option("--r", r, "pendant count r")->check(CLI::PositiveNumber);
    auto* rmax_opt =
        broom->add_option("--r-max", r_max, "sweep r = 1..r-max")->check(CLI::PositiveNumber);
    broom->add_flag("--r0", want_r0, "also locate the crossing root r0(d)");
    r_opt->excludes(rmax_opt);

    auto* logindex =
        app.add_subcommand("logindex", "log-concavity/log-convexity index elimination");
    logindex->fallthrough();
    int window = 32;
    logindex->add_option("matrix", matrix_path, "symmetric matrix file")->required();
    logindex->add_option("--x", x_path, "positive test vector file (default: all ones)");
    logindex->add_option("--window", window, "certification window beyond the onset (default 32)")
        ->check(CLI::PositiveNumber);

    auto* selfcheck = app.add_subcommand("selfcheck", "randomized cross-validation suites");
    selfcheck->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(matrix_path, x_path, k, tol, format, out_path);
        if (tree->parsed()) return cmd_tree(tree_path, k, format, out_path);
        if (broom->parsed()) {
            if (rmax_opt->count() > 0) return cmd_broom_sweep(d, r_max, format, out_path);
            if (r_opt->count() == 0)
                throw perron::InputError("broom: pass either --r or --r-max");
            return cmd_broom_single(d, r, want_r0, tol, format, out_path);
        }
        if (logindex->parsed())
            return cmd_logindex(matrix_path, x_path, window, format, out_path);
        if (selfcheck->parsed()) return cmd_selfcheck(seed, format, out_path);
        throw perron::InternalError("no subcommand dispatched");
    } catch (const perron::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const perron::HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const perron::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const perron::InternalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
