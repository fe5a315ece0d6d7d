#ifndef LATCOH_CORPUS_HPP
#define LATCOH_CORPUS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <latcoh/curve.hpp>
#include <latcoh/semigroup.hpp>

namespace latcoh
{

enum class Family { numerical, wedge, plane };

inline const char *to_string(Family f)
{
    switch (f) {
    case Family::numerical:
        return "numerical";
    case Family::wedge:
        return "wedge";
    case Family::plane:
        return "plane";
    }
    return "?";
}

struct CorpusEntry
{
    std::string name;
    Family family = Family::numerical;
    GoodSemigroup S;                 // filled for numerical and wedge entries, and after ingestion
    std::optional<ParamCurve> curve; // plane entries only
};

inline std::string generator_name(const GoodSemigroup &S)
{
    std::string s = "<";
    const auto g = minimal_generators(S);
    for (std::size_t k = 0; k < g.size(); ++k) {
        s += (k ? "," : "") + std::to_string(g[k]);
    }
    return s + ">";
}

inline std::vector<CorpusEntry> numerical_corpus(int max_genus = 8)
{
    std::vector<CorpusEntry> out;
    for (auto &S : numerical_semigroups_up_to_genus(max_genus)) {
        out.push_back({generator_name(S), Family::numerical, std::move(S), std::nullopt});
    }
    return out;
}

// Wedges of all unordered pairs {A, B} (A = B allowed) of the given entries.
inline std::vector<CorpusEntry> wedge_corpus(const std::vector<CorpusEntry> &factors)
{
    std::vector<CorpusEntry> out;
    out.reserve(factors.size() * (factors.size() + 1) / 2);
    for (std::size_t a = 0; a < factors.size(); ++a) {
        for (std::size_t b = a; b < factors.size(); ++b) {
            out.push_back({factors[a].name + " v " + factors[b].name, Family::wedge,
                           wedge(factors[a].S, factors[b].S), std::nullopt});
        }
    }
    return out;
}

/**
 * Plane curve germs given by parametrizations, irreducible and reducible.
 * Semigroups are left empty; ingest with extract_semigroup.
 */
inline std::vector<CorpusEntry> plane_curve_corpus()
{
    using B = std::vector<std::vector<std::pair<long, int>>>;
    auto br = [](const B &coords) { return make_branch(coords); };
    // The default truncation is sized by each branch alone; a line tangent to
    // a cusp needs more room than 4 jets, so every branch gets at least 64.
    auto entry = [](std::string name, std::vector<Branch> branches) {
        for (auto &b : branches) {
            const int o = b.max_coordinate_order();
            b.truncation = std::max(64, 4 * o * o);
        }
        return CorpusEntry{std::move(name), Family::plane, {}, make_curve(2, std::move(branches))};
    };
    std::vector<CorpusEntry> out;
    // monomial branches (t^a, t^b)
    const std::vector<std::pair<int, int>> monomial{{2, 3}, {2, 5}, {2, 7}, {2, 9}, {3, 4}, {3, 5}, {3, 7},
                                                    {3, 8}, {4, 5}, {4, 7}, {5, 6}, {5, 7}};
    for (const auto &[a, b] : monomial) {
        out.push_back(entry("(t^" + std::to_string(a) + ", t^" + std::to_string(b) + ")",
                            {br({{{1, a}}, {{1, b}}})}));
    }
    // branches with two characteristic exponents
    out.push_back(entry("(t^4, t^6 + t^7)", {br({{{1, 4}}, {{1, 6}, {1, 7}}})}));
    out.push_back(entry("(t^4, t^6 + t^9)", {br({{{1, 4}}, {{1, 6}, {1, 9}}})}));
    out.push_back(entry("(t^6, t^9 + t^10)", {br({{{1, 6}}, {{1, 9}, {1, 10}}})}));
    // reducible germs
    out.push_back(entry("A1: xy", {br({{{1, 1}}, {}}), br({{}, {{1, 1}}})}));
    out.push_back(entry("A3: tacnode", {br({{{1, 1}}, {{1, 2}}}), br({{{1, 1}}, {{-1, 2}}})}));
    out.push_back(entry("A5", {br({{{1, 1}}, {{1, 3}}}), br({{{1, 1}}, {{-1, 3}}})}));
    out.push_back(entry("D4: three lines", {br({{{1, 1}}, {}}), br({{}, {{1, 1}}}), br({{{1, 1}}, {{1, 1}}})}));
    out.push_back(entry("D5: cusp and tangent line", {br({{{1, 2}}, {{1, 3}}}), br({{{1, 1}}, {}})}));
    out.push_back(entry("E7: cusp and transverse line", {br({{{1, 2}}, {{1, 3}}}), br({{}, {{1, 1}}})}));
    out.push_back(entry("two transverse cusps", {br({{{1, 2}}, {{1, 3}}}), br({{{1, 3}}, {{1, 2}}})}));
    out.push_back(entry("(x^2-y^7)(x^5-y^4)", {br({{{1, 7}}, {{1, 2}}}), br({{{1, 4}}, {{1, 5}}})}));
    out.push_back(entry("(x^3+y^4)(y^3+x^4)", {br({{{-1, 4}}, {{1, 3}}}), br({{{1, 3}}, {{-1, 4}}})}));
    out.push_back(entry("four lines",
                        {br({{{1, 1}}, {}}), br({{}, {{1, 1}}}), br({{{1, 1}}, {{1, 1}}}), br({{{1, 1}}, {{2, 1}}})}));
    out.push_back(entry("cusp, line, line",
                        {br({{{1, 2}}, {{1, 3}}}), br({{}, {{1, 1}}}), br({{{1, 1}}, {{1, 1}}})}));
    return out;
}

// Deterministic sample of `count` indices out of n (all of them if count >= n).
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count, std::uint64_t seed)
{
    std::vector<std::size_t> idx(n);
    for (std::size_t k = 0; k < n; ++k) {
        idx[k] = k;
    }
    if (count >= n) {
        return idx;
    }
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace latcoh

#endif
