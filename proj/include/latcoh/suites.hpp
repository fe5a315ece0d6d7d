#ifndef LATCOH_SUITES_HPP
#define LATCOH_SUITES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <latcoh/analysis.hpp>
#include <latcoh/corpus.hpp>
#include <latcoh/curve.hpp>
#include <latcoh/error.hpp>
#include <latcoh/parallel.hpp>
#include <latcoh/properties.hpp>

namespace latcoh
{

enum class Suite { axioms, euler, kerU, gorenstein, nonpositivity, mf_planar, good_direction, properties };

inline const std::vector<std::pair<Suite, std::string>> &suite_names()
{
    static const std::vector<std::pair<Suite, std::string>> names{
        {Suite::axioms, "axioms"},
        {Suite::euler, "euler"},
        {Suite::kerU, "kerU"},
        {Suite::gorenstein, "gorenstein"},
        {Suite::nonpositivity, "nonpositivity"},
        {Suite::mf_planar, "MF-planar"},
        {Suite::good_direction, "good-direction"},
        {Suite::properties, "properties"},
    };
    return names;
}

inline std::string to_string(Suite s)
{
    for (const auto &[k, v] : suite_names()) {
        if (k == s) {
            return v;
        }
    }
    return "?";
}

inline Suite parse_suite(const std::string &name)
{
    for (const auto &[k, v] : suite_names()) {
        if (v == name) {
            return k;
        }
    }
    throw InputError("unknown suite '" + name + "'");
}

// ---------------------------------------------------------------------------
// Corpus assembly
// ---------------------------------------------------------------------------

// Fills the semigroup of every plane entry from its parametrization.
inline void ingest_plane_entries(std::vector<CorpusEntry> &entries)
{
    for (auto &e : entries) {
        if (e.family == Family::plane && e.curve) {
            e.S = extract_semigroup(*e.curve).semigroup;
        }
    }
}

inline std::vector<CorpusEntry> full_corpus(int max_genus = 8)
{
    auto out = numerical_corpus(max_genus);
    auto wedges = wedge_corpus(out);
    auto plane = plane_curve_corpus();
    ingest_plane_entries(plane);
    out.insert(out.end(), std::make_move_iterator(wedges.begin()), std::make_move_iterator(wedges.end()));
    out.insert(out.end(), std::make_move_iterator(plane.begin()), std::make_move_iterator(plane.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Per-instance evaluation
// ---------------------------------------------------------------------------

struct MFRecord
{
    bool in_scope = false; // plane curve, or r = 1 Gorenstein with at most one element in (m, 2m)
    bool sparse_only = false; // r = 1 non-Gorenstein with at most one element in (m, 2m)
    bool holds = false;
};

struct Evaluation
{
    std::map<Suite, std::vector<Check>> checks;
    std::optional<MFRecord> mf;
    std::string error; // exception escaping the pipeline, if any
};

namespace detail
{

template <typename F>
Check guarded(const std::string &name, F &&f)
{
    try {
        return f();
    } catch (const std::exception &e) {
        return props::fail(name, e.what());
    }
}

} // namespace detail

inline Evaluation evaluate(const CorpusEntry &entry, const std::set<Suite> &suites)
{
    Evaluation ev;
    auto want = [&](Suite s) { return suites.count(s) != 0; };
    Instance I;
    try {
        I = build_instance(entry.S, {.higher_u_maps = false});
    } catch (const std::exception &e) {
        ev.error = e.what();
        return ev;
    }
    using detail::guarded;
    std::optional<bool> gorenstein;
    auto gor = [&]() {
        if (!gorenstein) {
            gorenstein = gorenstein_battery(I).verdict();
        }
        return *gorenstein;
    };

    if (want(Suite::axioms)) {
        auto &c = ev.checks[Suite::axioms];
        c.push_back(guarded("axioms", [&] {
            const auto rep = validate_good_semigroup(I.S);
            return rep.pass() ? props::pass("axioms")
                              : props::fail("axioms", "axiom " + rep.violations.front().axiom);
        }));
        c.push_back(guarded("above-conductor", [&] { return props::above_conductor(I.S); }));
        c.push_back(guarded("roundtrip", [&] { return props::roundtrip(I); }));
        c.push_back(guarded("w(m)", [&] { return props::weight_of_multiplicity(I); }));
    }
    if (want(Suite::euler)) {
        auto &c = ev.checks[Suite::euler];
        c.push_back(guarded("eu=delta", [&] { return props::eu_delta(I); }));
        c.push_back(guarded("root-delta", [&] { return props::root_delta(I); }));
        c.push_back(guarded("level-euler", [&] { return props::level_euler(I.LC); }));
    }
    if (want(Suite::kerU)) {
        auto &c = ev.checks[Suite::kerU];
        c.push_back(guarded("kerU", [&] { return props::ker_u_minima(I); }));
        c.push_back(guarded("minima-shape", [&] { return props::minima_shape(I); }));
        c.push_back(guarded("path-formula", [&] { return props::path_formula(I); }));
    }
    if (want(Suite::gorenstein)) {
        auto &c = ev.checks[Suite::gorenstein];
        c.push_back(guarded("battery", [&] {
            const auto v = gorenstein_battery(I);
            gorenstein = v.verdict();
            if (!v.refinement) {
                return props::fail("battery", "killed components at level 0 are not {0, c}");
            }
            if (v.verdict() && !I.m.smooth && I.m.total() >= 3 && I.LC.ker_u_rank(0) != 2) {
                return props::fail("battery", "rank ker U at level 0 is " + std::to_string(I.LC.ker_u_rank(0)));
            }
            return props::pass("battery");
        }));
        c.push_back(guarded("classification", [&] {
            (void)classify_multiplicity(I);
            return props::pass("classification");
        }));
        c.push_back(guarded("far-minima", [&] { return props::far_minima(I, gor()); }));
    }
    if (want(Suite::nonpositivity)) {
        auto &c = ev.checks[Suite::nonpositivity];
        c.push_back(guarded("nonpositivity", [&] {
            const auto v = verify_nonpositivity(I.LC);
            if (v.holds) {
                return props::pass("nonpositivity");
            }
            return props::fail("nonpositivity", "q=" + std::to_string(v.witnesses.front().first)
                                                    + " n=" + std::to_string(v.witnesses.front().second));
        }));
    }
    if (want(Suite::mf_planar)) {
        auto &c = ev.checks[Suite::mf_planar];
        c.push_back(guarded("MF", [&] {
            MFRecord rec;
            rec.holds = multiplicity_formula(I).holds;
            if (entry.family == Family::plane) {
                rec.in_scope = true;
            } else if (I.S.branches() == 1) {
                const bool sparse = I.m.smooth || elements_between_m_and_2m(I.S) <= 1;
                rec.in_scope = sparse && gor();
                rec.sparse_only = sparse && !gor();
            }
            ev.mf = rec;
            return rec.in_scope && !rec.holds ? props::fail("MF", "w(m) differs from M") : props::pass("MF");
        }));
    }
    if (want(Suite::good_direction)) {
        auto &c = ev.checks[Suite::good_direction];
        c.push_back(guarded("good-direction", [&] { return props::good_directions(I.w, I.S.conductor()); }));
        c.push_back(guarded("M-vertex", [&] { return props::m_vertex(I.w, I.S.conductor()); }));
    }
    if (want(Suite::properties)) {
        auto &c = ev.checks[Suite::properties];
        c.push_back(guarded("matroid", [&] { return props::matroid(I.h); }));
        c.push_back(guarded("increments", [&] { return props::increments(I.h, I.w); }));
        c.push_back(guarded("stability", [&] { return props::stability(I.w); }));
        c.push_back(guarded("window_inequality", [&] { return props::window_inequality(I.w, I.S); }));
        c.push_back(guarded("minima_reflection", [&] { return props::minima_reflection(I.w, I.generalized); }));
        c.push_back(guarded("zero-minima", [&] { return props::zero_minima(I); }));
        c.push_back(guarded("H>=r", [&] { return props::top_degree_vanishing(I.LC); }));
        c.push_back(guarded("Z2-symmetry", [&] { return props::gorenstein_cube_symmetry(I, gor()); }));
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

struct Failure
{
    std::size_t entry = 0; // index into the corpus
    std::string check;
    std::string witness;
};

struct SuiteReport
{
    Suite suite = Suite::axioms;
    std::size_t instances = 0;
    std::size_t failures = 0;          // instances with at least one failed check
    std::optional<Failure> first;       // lowest corpus index
    std::map<std::string, std::size_t> failed_checks;
    // MF bookkeeping (MF-planar only)
    std::size_t mf_in_scope = 0, mf_out_of_scope_failures = 0, mf_sparse_non_gorenstein_failures = 0;
};

struct CorpusRun
{
    std::vector<SuiteReport> reports;
    std::size_t instances = 0;
    std::optional<Failure> pipeline_error;

    const SuiteReport &report(Suite s) const
    {
        for (const auto &r : reports) {
            if (r.suite == s) {
                return r;
            }
        }
        throw InputError("suite " + to_string(s) + " was not run");
    }
    bool ok() const
    {
        if (pipeline_error) {
            return false;
        }
        for (const auto &r : reports) {
            if (r.failures) {
                return false;
            }
        }
        return true;
    }
};

/**
 * Evaluates the chosen suites on corpus[indices] in a worker pool and merges
 * the outcomes in index order.
 */
inline CorpusRun run_suites(const std::vector<CorpusEntry> &corpus, const std::vector<std::size_t> &indices,
                            const std::set<Suite> &suites)
{
    const auto evals = parallel_map<Evaluation>(indices.size(),
                                                [&](std::size_t k) { return evaluate(corpus[indices[k]], suites); });
    CorpusRun run;
    run.instances = indices.size();
    for (Suite s : suites) {
        SuiteReport rep;
        rep.suite = s;
        rep.instances = indices.size();
        run.reports.push_back(rep);
    }
    for (std::size_t k = 0; k < evals.size(); ++k) {
        const auto &ev = evals[k];
        const std::size_t idx = indices[k];
        if (!ev.error.empty()) {
            if (!run.pipeline_error) {
                run.pipeline_error = Failure{idx, "pipeline", ev.error};
            }
            for (auto &rep : run.reports) {
                ++rep.failures;
                if (!rep.first) {
                    rep.first = Failure{idx, "pipeline", ev.error};
                }
            }
            continue;
        }
        for (auto &rep : run.reports) {
            auto it = ev.checks.find(rep.suite);
            if (it == ev.checks.end()) {
                continue;
            }
            bool failed = false;
            for (const auto &c : it->second) {
                if (!c.ok) {
                    failed = true;
                    ++rep.failed_checks[c.name];
                    if (!rep.first) {
                        rep.first = Failure{idx, c.name, c.witness};
                    }
                }
            }
            rep.failures += failed ? 1 : 0;
            if (rep.suite == Suite::mf_planar && ev.mf) {
                rep.mf_in_scope += ev.mf->in_scope ? 1 : 0;
                if (!ev.mf->in_scope && !ev.mf->holds) {
                    ++rep.mf_out_of_scope_failures;
                    rep.mf_sparse_non_gorenstein_failures += ev.mf->sparse_only ? 1 : 0;
                }
            }
        }
    }
    return run;
}

inline CorpusRun run_suites(const std::vector<CorpusEntry> &corpus, const std::set<Suite> &suites)
{
    return run_suites(corpus, sample_indices(corpus.size(), corpus.size(), 0), suites);
}

// ---------------------------------------------------------------------------
// Graded-root twins
// ---------------------------------------------------------------------------

/**
 * Canonical form of a graded root as an infinite tree: the stem is walked
 * down while it has a single child, then the subtree is encoded with sorted
 * child codes. Equal strings mean isomorphic graded roots.
 */
inline std::string root_signature(const GradedRoot &G)
{
    std::vector<std::vector<std::size_t>> children(G.vertices.size());
    std::optional<std::size_t> top;
    for (const auto &[lo, up] : G.edges) {
        children[up].push_back(lo);
    }
    for (std::size_t v = 0; v < G.vertices.size(); ++v) {
        if (G.vertices[v].level == G.n_max) {
            if (top) {
                throw ConsistencyError("graded root has two vertices at the top level");
            }
            top = v;
        }
    }
    if (!top) {
        return "empty";
    }
    while (children[*top].size() == 1) {
        top = children[*top].front();
    }
    std::function<std::string(std::size_t)> encode = [&](std::size_t v) {
        std::vector<std::string> parts;
        for (std::size_t u : children[v]) {
            parts.push_back(encode(u));
        }
        std::sort(parts.begin(), parts.end());
        std::string out = "[";
        for (const auto &p : parts) {
            out += p;
        }
        return out + "]";
    };
    return std::to_string(G.vertices[*top].level) + encode(*top);
}

struct RootTwinGroup
{
    std::string signature;
    std::vector<std::size_t> entries; // corpus indices, ascending
    std::vector<bool> mf;             // MF verdict per entry
    bool mixed() const
    {
        return std::any_of(mf.begin(), mf.end(), [](bool b) { return b; })
               && std::any_of(mf.begin(), mf.end(), [](bool b) { return !b; });
    }
};

/**
 * Groups the Gorenstein instances among corpus[indices] by graded root and
 * keeps groups of size >= 2. A mixed group is a pair of Gorenstein
 * semigroups that the graded root cannot tell apart although exactly one
 * side satisfies MF.
 */
inline std::vector<RootTwinGroup> root_twins(const std::vector<CorpusEntry> &corpus,
                                             const std::vector<std::size_t> &indices)
{
    struct Row
    {
        bool gorenstein = false, mf = false;
        std::string signature;
    };
    const auto rows = parallel_map<Row>(indices.size(), [&](std::size_t k) {
        const auto I = build_instance(corpus[indices[k]].S, {.higher_u_maps = false});
        Row row;
        row.gorenstein = gorenstein_battery(I).verdict();
        if (row.gorenstein) {
            row.mf = multiplicity_formula(I).holds;
            row.signature = root_signature(graded_root(I.LC));
        }
        return row;
    });
    std::map<std::string, RootTwinGroup> by_sig;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!rows[k].gorenstein) {
            continue;
        }
        auto &g = by_sig[rows[k].signature];
        g.signature = rows[k].signature;
        g.entries.push_back(indices[k]);
        g.mf.push_back(rows[k].mf);
    }
    std::vector<RootTwinGroup> out;
    for (auto &[sig, g] : by_sig) {
        if (g.entries.size() >= 2) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

} // namespace latcoh

#endif
