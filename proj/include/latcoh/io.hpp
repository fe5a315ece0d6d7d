#ifndef LATCOH_IO_HPP
#define LATCOH_IO_HPP

#include <algorithm>
#include <climits>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <latcoh/analysis.hpp>
#include <latcoh/curve.hpp>
#include <latcoh/error.hpp>
#include <latcoh/lattice_cohomology.hpp>
#include <latcoh/semigroup.hpp>
#include <latcoh/value_grid.hpp>

namespace latcoh::io
{

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

inline std::string read_text(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw InputError("cannot write " + path);
    }
}

// Parses JSON text; syntax errors report the line and column.
inline json parse(const std::string &text, const std::string &source = "input")
{
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        const std::size_t upto = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        const auto nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
        const std::size_t col = nl == std::string::npos ? upto + 1 : upto - nl;
        throw InputError(source + ": malformed JSON at line " + std::to_string(line) + ", column "
                         + std::to_string(col));
    }
}

namespace detail
{

inline const json &field(const json &j, const char *name, const std::string &where)
{
    if (!j.is_object()) {
        throw InputError(where + ": expected an object");
    }
    auto it = j.find(name);
    if (it == j.end()) {
        throw InputError(where + ": missing field \"" + name + "\"");
    }
    return *it;
}

inline long integer(const json &j, const std::string &where)
{
    if (!j.is_number_integer()) {
        throw InputError(where + ": expected an integer");
    }
    return j.get<long>();
}

inline std::vector<int> int_array(const json &j, const std::string &where)
{
    if (!j.is_array()) {
        throw InputError(where + ": expected an array of integers");
    }
    std::vector<int> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const long v = integer(j[k], where + "[" + std::to_string(k) + "]");
        if (v < INT_MIN || v > INT_MAX) {
            throw InputError(where + "[" + std::to_string(k) + "]: out of range");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// Integer given as a JSON integer or as a decimal string (for big values).
inline boost::multiprecision::cpp_int big_integer(const json &j, const std::string &where)
{
    if (j.is_number_integer()) {
        return boost::multiprecision::cpp_int(j.get<long long>());
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const bool ok = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                                  [](char ch) { return ch >= '0' && ch <= '9'; })
                        && s != "-";
        if (ok) {
            return boost::multiprecision::cpp_int(s);
        }
    }
    throw InputError(where + ": expected an integer");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Semigroups
// ---------------------------------------------------------------------------

inline json to_json(const LatticePoint &p) { return json(std::vector<int>(p.begin(), p.end())); }

inline json semigroup_to_json(const GoodSemigroup &S)
{
    json j;
    j["branches"] = S.branches();
    j["conductor"] = to_json(S.conductor());
    json small = json::array();
    for (const auto &p : S.small_elements()) {
        small.push_back(to_json(p));
    }
    j["small_elements"] = std::move(small);
    return j;
}

// Canonical text: one lattice point per line.
inline std::string serialize(const GoodSemigroup &S)
{
    std::string out = "{\n  \"branches\": " + std::to_string(S.branches()) + ",\n  \"conductor\": "
                      + to_json(S.conductor()).dump() + ",\n  \"small_elements\": [";
    const auto &small = S.small_elements();
    for (std::size_t k = 0; k < small.size(); ++k) {
        out += (k ? ",\n    " : "\n    ") + to_json(small[k]).dump();
    }
    return out + (small.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

inline GoodSemigroup semigroup_from_json(const json &j)
{
    using namespace detail;
    const long r = integer(field(j, "branches", "semigroup"), "branches");
    if (r < 1) {
        throw InputError("branches: must be positive");
    }
    const auto c = int_array(field(j, "conductor", "semigroup"), "conductor");
    const auto &sm = field(j, "small_elements", "semigroup");
    if (!sm.is_array()) {
        throw InputError("small_elements: expected an array of integer arrays");
    }
    std::vector<LatticePoint> small;
    for (std::size_t k = 0; k < sm.size(); ++k) {
        small.emplace_back(int_array(sm[k], "small_elements[" + std::to_string(k) + "]"));
    }
    return GoodSemigroup::from_elements(static_cast<std::size_t>(r), LatticePoint(c), std::move(small));
}

inline GoodSemigroup parse_semigroup(const std::string &text, const std::string &source = "semigroup")
{
    return semigroup_from_json(parse(text, source));
}

inline GoodSemigroup read_semigroup(const std::string &path) { return parse_semigroup(read_text(path), path); }

// ---------------------------------------------------------------------------
// Parametrizations
// ---------------------------------------------------------------------------

inline ParamCurve curve_from_json(const json &j)
{
    using namespace detail;
    ParamCurve curve;
    const long N = integer(field(j, "ambient_dim", "curve"), "ambient_dim");
    if (N < 1) {
        throw InputError("ambient_dim: must be positive");
    }
    curve.ambient_dim = static_cast<std::size_t>(N);
    const auto &bs = field(j, "branches", "curve");
    if (!bs.is_array()) {
        throw InputError("branches: expected an array");
    }
    for (std::size_t b = 0; b < bs.size(); ++b) {
        const std::string where = "branches[" + std::to_string(b) + "]";
        Branch branch;
        if (bs[b].is_object() && bs[b].contains("truncation")) {
            const long T = integer(bs[b]["truncation"], where + ".truncation");
            if (T < 1) {
                throw InputError(where + ".truncation: must be positive");
            }
            branch.truncation = static_cast<int>(T);
        }
        const auto &coords = field(bs[b], "coords", where);
        if (!coords.is_array()) {
            throw InputError(where + ".coords: expected an array");
        }
        for (std::size_t k = 0; k < coords.size(); ++k) {
            const std::string cw = where + ".coords[" + std::to_string(k) + "]";
            if (!coords[k].is_array()) {
                throw InputError(cw + ": expected an array of [num, den, exp] terms");
            }
            UniPoly p;
            for (std::size_t t = 0; t < coords[k].size(); ++t) {
                const std::string tw = cw + "[" + std::to_string(t) + "]";
                const auto &term = coords[k][t];
                if (!term.is_array() || term.size() != 3) {
                    throw InputError(tw + ": expected [num, den, exp]");
                }
                const auto num = big_integer(term[0], tw + "[0]");
                const auto den = big_integer(term[1], tw + "[1]");
                if (den == 0) {
                    throw InputError(tw + ": zero denominator");
                }
                const long e = integer(term[2], tw + "[2]");
                if (e < 0 || e > INT_MAX) {
                    throw InputError(tw + ": exponent out of range");
                }
                p.push_back({Rational(num, den), static_cast<int>(e)});
            }
            branch.coords.push_back(std::move(p));
        }
        curve.branches.push_back(std::move(branch));
    }
    curve.apply_default_truncation();
    curve.validate();
    return curve;
}

inline json curve_to_json(const ParamCurve &curve)
{
    json j;
    j["ambient_dim"] = curve.ambient_dim;
    json bs = json::array();
    for (const auto &b : curve.branches) {
        json jb;
        jb["truncation"] = b.truncation;
        json coords = json::array();
        for (const auto &p : b.coords) {
            json terms = json::array();
            for (const auto &t : p) {
                auto num = boost::multiprecision::numerator(t.coef);
                auto den = boost::multiprecision::denominator(t.coef);
                auto as_json = [](const boost::multiprecision::cpp_int &v) {
                    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
                        return json(static_cast<long long>(v));
                    }
                    return json(v.str());
                };
                terms.push_back(json::array({as_json(num), as_json(den), t.exp}));
            }
            coords.push_back(std::move(terms));
        }
        jb["coords"] = std::move(coords);
        bs.push_back(std::move(jb));
    }
    j["branches"] = std::move(bs);
    return j;
}

inline ParamCurve read_curve(const std::string &path) { return curve_from_json(parse(read_text(path), path)); }

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json validation_to_json(const ValidationReport &rep)
{
    json j;
    j["pass"] = rep.pass();
    json axioms;
    for (const char *a : {"1", "2", "3", "4", "5", "semigroup"}) {
        axioms[a] = !rep.violates(a);
    }
    j["axioms"] = std::move(axioms);
    json vs = json::array();
    for (const auto &v : rep.violations) {
        json jv;
        jv["axiom"] = v.axiom;
        json w = json::array();
        for (const auto &p : v.witnesses) {
            w.push_back(to_json(p));
        }
        jv["witnesses"] = std::move(w);
        jv["detail"] = v.detail;
        vs.push_back(std::move(jv));
    }
    j["violations"] = std::move(vs);
    return j;
}

// Module summary; max_q limits the cohomological degrees listed.
inline json summary_to_json(const ModuleSummary &s, std::size_t max_q = SIZE_MAX)
{
    json j;
    j["n_min"] = s.n_min;
    j["eu"] = s.eu;
    json red = json::object();
    for (const auto &[q, levels] : s.reduced) {
        if (q > max_q) {
            continue;
        }
        json jq = json::object();
        for (const auto &[n, k] : levels) {
            jq[std::to_string(n)] = k;
        }
        red[std::to_string(q)] = std::move(jq);
    }
    j["reduced"] = std::move(red);
    json tor = json::object();
    for (const auto &[q, levels] : s.torsion) {
        if (q > max_q) {
            continue;
        }
        json jq = json::object();
        for (const auto &[n, f] : levels) {
            json fs = json::array();
            for (const auto &v : f) {
                fs.push_back(v.str());
            }
            jq[std::to_string(n)] = std::move(fs);
        }
        tor[std::to_string(q)] = std::move(jq);
    }
    j["torsion"] = std::move(tor);
    json ku = json::object();
    for (const auto &[n, k] : s.ker_u) {
        ku[std::to_string(n)] = k;
    }
    j["kerU"] = std::move(ku);
    return j;
}

inline json report_to_json(const AnalysisReport &a, std::size_t max_q = SIZE_MAX)
{
    json j;
    j["branches"] = a.branches;
    j["multiplicity"] = a.multiplicity;
    j["multiplicity_vector"] = to_json(a.multiplicity_vector);
    j["smooth"] = a.smooth;
    j["delta"] = a.delta;
    j["eu"] = a.eu;
    j["conductor"] = to_json(a.conductor);
    {
        const auto &g = a.gorenstein;
        json jg;
        jg["verdict"] = g.verdict();
        jg["weight_at_conductor"] = g.weight_at_conductor;
        jg["symmetric_weight"] = g.symmetric_weight;
        jg["symmetric_semigroup"] = g.symmetric_semigroup;
        jg["lattice"] = g.lattice;
        jg["delta_is_h_of_c"] = g.delta_is_h_of_c;
        jg["refinement"] = g.refinement;
        j["gorenstein"] = std::move(jg);
    }
    {
        json jm;
        jm["M"] = a.mf.M;
        jm["w_m"] = a.mf.w_m;
        jm["holds"] = a.mf.holds;
        jm["predicted_multiplicity"] = a.mf.predicted_multiplicity();
        j["mf"] = std::move(jm);
    }
    {
        json jn;
        jn["holds"] = a.nonpositivity.holds;
        json w = json::array();
        for (const auto &[q, n] : a.nonpositivity.witnesses) {
            w.push_back(json::array({q, n}));
        }
        jn["witnesses"] = std::move(w);
        j["nonpositivity"] = std::move(jn);
    }
    j["classification"] = to_string(a.classification);
    {
        const auto &z = a.zero_minima;
        json jz;
        jz["holds"] = z.holds();
        jz["symmetric"] = z.symmetric;
        jz["in_semigroup"] = z.in_semigroup;
        jz["only_0_and_c"] = z.applicable_b ? json(z.only_0_and_c) : json(nullptr);
        j["zero_minima"] = std::move(jz);
    }
    json mins = json::array();
    for (const auto &m : a.local_minima) {
        json jm;
        jm["point"] = to_json(m.point);
        jm["weight"] = m.weight;
        mins.push_back(std::move(jm));
    }
    j["local_minima"] = std::move(mins);
    j["summary"] = summary_to_json(a.summary, max_q);
    return j;
}

// ---------------------------------------------------------------------------
// Graded roots
// ---------------------------------------------------------------------------

inline json root_to_json(const GradedRoot &G)
{
    json j;
    j["n_min"] = G.n_min;
    j["n_max"] = G.n_max;
    json vs = json::array();
    for (std::size_t v = 0; v < G.vertices.size(); ++v) {
        json jv;
        jv["id"] = v;
        jv["level"] = G.vertices[v].level;
        jv["label"] = to_json(G.vertices[v].label);
        vs.push_back(std::move(jv));
    }
    j["vertices"] = std::move(vs);
    json es = json::array();
    for (const auto &[a, b] : G.edges) {
        es.push_back(json::array({a, b}));
    }
    j["edges"] = std::move(es);
    j["stem"] = G.vertices.empty() ? json(nullptr) : json(G.vertices.size() - 1);
    return j;
}

/**
 * DOT digraph, one rank per weight level, edges pointing up. The vertex at
 * n_max gets a dashed edge to a stem marker standing for the infinite stem.
 */
inline std::string root_to_dot(const GradedRoot &G)
{
    std::ostringstream out;
    out << "digraph graded_root {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
    for (int n = G.n_min; n <= G.n_max; ++n) {
        out << "  { rank=same; level" << (n < 0 ? "m" : "") << std::abs(n) << " [shape=plaintext, label=\"" << n
            << "\"];";
        for (std::size_t v = 0; v < G.vertices.size(); ++v) {
            if (G.vertices[v].level == n) {
                out << " v" << v << ";";
            }
        }
        out << " }\n";
    }
    for (std::size_t v = 0; v < G.vertices.size(); ++v) {
        out << "  v" << v << " [label=\"" << G.vertices[v].label.str() << "\"];\n";
    }
    for (const auto &[a, b] : G.edges) {
        out << "  v" << a << " -> v" << b << ";\n";
    }
    if (!G.vertices.empty()) {
        out << "  stem [shape=plaintext, label=\"stem\"];\n";
        out << "  v" << G.vertices.size() - 1 << " -> stem [style=dashed];\n";
    }
    out << "}\n";
    return out.str();
}

// One line per level, top down; each vertex shows its label and its parent.
inline std::string root_to_ascii(const GradedRoot &G)
{
    std::ostringstream out;
    std::vector<std::size_t> parent(G.vertices.size(), SIZE_MAX);
    for (const auto &[a, b] : G.edges) {
        parent[a] = b;
    }
    std::vector<std::size_t> id_in_level(G.vertices.size(), 0);
    std::vector<std::size_t> count(static_cast<std::size_t>(std::max(0, G.n_max - G.n_min + 1)), 0);
    for (std::size_t v = 0; v < G.vertices.size(); ++v) {
        id_in_level[v] = count[static_cast<std::size_t>(G.vertices[v].level - G.n_min)]++;
    }
    out << "  stem  |\n";
    for (int n = G.n_max; n >= G.n_min; --n) {
        std::ostringstream lvl;
        lvl << (n >= 0 ? " " : "") << n;
        std::string head = lvl.str();
        head.insert(0, head.size() < 5 ? 5 - head.size() : 0, ' ');
        out << head << " :";
        for (std::size_t v = 0; v < G.vertices.size(); ++v) {
            if (G.vertices[v].level != n) {
                continue;
            }
            const auto &label = G.vertices[v].label;
            out << "  o" << id_in_level[v] << (label.size() == 1 ? "(" + label.str() + ")" : label.str());
            if (parent[v] != SIZE_MAX) {
                out << "->o" << id_in_level[parent[v]];
            } else {
                out << "->stem";
            }
        }
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

// Plain text for r <= 2 (one line for r = 1, rows = first coordinate for
// r = 2), JSON array otherwise.
inline std::string grid_dump(const ValueGrid &g)
{
    const Box &box = g.box();
    std::ostringstream out;
    if (box.rank() == 1) {
        for (std::size_t idx = 0; idx < box.volume(); ++idx) {
            out << (idx ? " " : "") << g[idx];
        }
        out << "\n";
        return out.str();
    }
    if (box.rank() == 2) {
        const int rows = box.hi()[0];
        const int cols = box.hi()[1];
        for (int a = 0; a <= rows; ++a) {
            for (int b = 0; b <= cols; ++b) {
                out << (b ? " " : "") << g.at(LatticePoint{a, b});
            }
            out << "\n";
        }
        return out.str();
    }
    json j = json::array();
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        j.push_back(json::array({to_json(box.point(idx)), g[idx]}));
    }
    return j.dump() + "\n";
}

} // namespace latcoh::io

#endif
