// latcoh: command-line front end.
//
// Exit codes: 0 success, 1 input/IO/usage error, 2 validation or property
// failure, 3 truncation too small, 4 internal consistency failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include <latcoh/latcoh.hpp>

namespace
{

using namespace latcoh;

constexpr int exit_ok = 0, exit_input = 1, exit_failed = 2, exit_truncation = 3, exit_consistency = 4;

int cmd_validate(const std::string &path, bool as_json)
{
    const auto S = io::read_semigroup(path);
    const auto rep = validate_good_semigroup(S);
    if (as_json) {
        std::cout << io::validation_to_json(rep).dump(2) << "\n";
    } else {
        for (const char *a : {"1", "2", "3", "4", "5", "semigroup"}) {
            std::cout << "axiom " << a << ": " << (rep.violates(a) ? "FAIL" : "ok") << "\n";
        }
        for (const auto &v : rep.violations) {
            std::cout << "  axiom " << v.axiom << " witness";
            for (const auto &p : v.witnesses) {
                std::cout << " " << p;
            }
            if (!v.detail.empty()) {
                std::cout << " (" << v.detail << ")";
            }
            std::cout << "\n";
        }
    }
    return rep.pass() ? exit_ok : exit_failed;
}

// Reads and validates; a failing semigroup is reported and yields exit 2.
std::optional<GoodSemigroup> load_valid(const std::string &path)
{
    auto S = io::read_semigroup(path);
    const auto rep = validate_good_semigroup(S);
    if (!rep.pass()) {
        const auto &v = rep.violations.front();
        std::cerr << path << ": not a good semigroup (axiom " << v.axiom;
        if (!v.witnesses.empty()) {
            std::cerr << ", witness " << v.witnesses.front();
        }
        std::cerr << ")\n";
        return std::nullopt;
    }
    return S;
}

int cmd_analyze(const std::string &path, const std::string &report, int max_q, const std::string &dump)
{
    auto S = load_valid(path);
    if (!S) {
        return exit_failed;
    }
    const auto I = build_instance(std::move(*S));
    const auto a = analyze(I);
    const std::size_t q_limit = max_q < 0 ? SIZE_MAX : static_cast<std::size_t>(max_q);
    std::cout << "branches:        " << a.branches << "\n"
              << "conductor:       " << a.conductor << "\n"
              << "multiplicity:    " << a.multiplicity << " " << a.multiplicity_vector << "\n"
              << "delta:           " << a.delta << "\n"
              << "eu:              " << a.eu << "\n"
              << "classification:  " << to_string(a.classification) << "\n"
              << "gorenstein:      " << (a.gorenstein.verdict() ? "yes" : "no") << "\n"
              << "MF:              " << (a.mf.holds ? "holds" : "fails") << " (w(m) = " << a.mf.w_m
              << ", M = " << a.mf.M << ")\n"
              << "nonpositivity:   " << (a.nonpositivity.holds ? "holds" : "fails") << "\n"
              << "local minima:   ";
    for (const auto &m : a.local_minima) {
        std::cout << " " << m.point << ":" << m.weight;
    }
    std::cout << "\n";
    for (const auto &[q, levels] : a.summary.reduced) {
        if (q > q_limit) {
            continue;
        }
        std::cout << "H^" << q << "_red:        ";
        for (const auto &[n, k] : levels) {
            std::cout << " n=" << n << ":" << k;
        }
        std::cout << "\n";
    }
    if (!report.empty()) {
        io::write_text(report, io::report_to_json(a, q_limit).dump(2) + "\n");
    }
    if (dump == "h") {
        std::cout << io::grid_dump(I.h);
    } else if (dump == "w") {
        std::cout << io::grid_dump(I.w);
    }
    return exit_ok;
}

int cmd_root(const std::string &path, const std::string &format)
{
    auto S = load_valid(path);
    if (!S) {
        return exit_failed;
    }
    const auto w = weight_grid(hilbert_grid(*S));
    const auto G = graded_root(w, S->conductor());
    if (format == "dot") {
        std::cout << io::root_to_dot(G);
    } else if (format == "ascii") {
        std::cout << io::root_to_ascii(G);
    } else {
        std::cout << io::root_to_json(G).dump(2) << "\n";
    }
    return exit_ok;
}

int cmd_ingest(const std::string &path, const std::string &out, int truncation, bool allow_uncertified)
{
    auto curve = io::read_curve(path);
    if (truncation > 0) {
        for (auto &b : curve.branches) {
            b.truncation = truncation;
        }
    }
    try {
        const auto res = extract_semigroup(curve, {.allow_uncertified = allow_uncertified});
        std::cout << "branches:     " << res.semigroup.branches() << "\n"
                  << "multiplicity: " << res.multiplicity << "\n"
                  << "conductor:    " << res.semigroup.conductor() << "\n"
                  << "delta:        " << res.delta << "\n"
                  << "certificate:  " << to_string(res.certificate) << "\n";
        if (res.semigroup.branches() == 1 && !res.semigroup.is_smooth()) {
            std::cout << "semigroup:    " << generator_name(res.semigroup) << "\n";
        }
        if (!out.empty()) {
            io::write_text(out, io::serialize(res.semigroup));
        }
    } catch (const TruncationError &e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "suggested truncation for branch " << e.branch() << ": " << e.suggested_truncation() << "\n";
        return exit_truncation;
    }
    return exit_ok;
}

int cmd_corpus(const std::string &suite, std::uint64_t seed, long count, int max_genus)
{
    const Suite s = parse_suite(suite);
    std::cout << "seed " << seed << "\n";
    const auto corpus = full_corpus(max_genus);
    const std::size_t n = count < 0 ? corpus.size() : static_cast<std::size_t>(count);
    const auto idx = sample_indices(corpus.size(), n, seed);
    const auto run = run_suites(corpus, idx, {s});
    const auto &rep = run.report(s);
    std::cout << "suite " << suite << ": " << rep.instances << " instances, " << rep.failures << " failures\n";
    for (const auto &[check, k] : rep.failed_checks) {
        std::cout << "  " << check << ": " << k << "\n";
    }
    if (s == Suite::mf_planar) {
        std::cout << "  in scope: " << rep.mf_in_scope << "\n"
                  << "  failures outside scope (reported only): " << rep.mf_out_of_scope_failures << "\n"
                  << "    of which r = 1, at most one element in (m, 2m), not Gorenstein: " << rep.mf_sparse_non_gorenstein_failures << "\n";
    }
    if (rep.first) {
        const auto &e = corpus[rep.first->entry];
        std::cout << "first failure: " << e.name << " [" << to_string(e.family) << "] " << rep.first->check << ": "
                  << rep.first->witness << "\n"
                  << io::serialize(e.S);
        return exit_failed;
    }
    return exit_ok;
}

// Gorenstein numerical semigroups with isomorphic graded roots, flagging
// groups whose MF verdicts differ.
int cmd_root_twins(int max_genus)
{
    const auto corpus = numerical_corpus(max_genus);
    const auto groups = root_twins(corpus, sample_indices(corpus.size(), corpus.size(), 0));
    std::size_t mixed = 0;
    for (const auto &g : groups) {
        mixed += g.mixed() ? 1 : 0;
        std::cout << (g.mixed() ? "mixed " : "      ") << g.signature << ":";
        for (std::size_t k = 0; k < g.entries.size(); ++k) {
            std::cout << " " << corpus[g.entries[k]].name << (g.mf[k] ? " (MF holds)" : " (MF fails)");
        }
        std::cout << "\n";
    }
    std::cout << "root twins up to genus " << max_genus << ": " << corpus.size() << " semigroups, " << groups.size()
              << " groups, " << mixed << " with differing MF verdicts\n";
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Lattice cohomology of reduced curve singularities"};
    app.require_subcommand(1);

    std::string input, report, out, format = "ascii", suite, dump;
    bool as_json = false, allow_uncertified = false;
    int max_q = -1, truncation = 0, max_genus = 8;
    std::uint64_t seed = 1;
    long count = -1;

    auto *validate = app.add_subcommand("validate", "check the good semigroup axioms");
    validate->add_option("file", input, "semigroup JSON")->required();
    validate->add_flag("--json", as_json, "print the report as JSON");

    auto *analyze_cmd = app.add_subcommand("analyze", "full pipeline and verdicts");
    analyze_cmd->add_option("file", input, "semigroup JSON")->required();
    analyze_cmd->add_option("--report", report, "write the JSON report here");
    analyze_cmd->add_option("--max-q", max_q, "highest cohomological degree to list")->check(CLI::NonNegativeNumber);
    analyze_cmd->add_option("--dump-grid", dump, "print the h or w grid")->check(CLI::IsMember({"h", "w"}));

    auto *root = app.add_subcommand("root", "render the graded root");
    root->add_option("file", input, "semigroup JSON")->required();
    root->add_option("--format", format, "dot, ascii or json")->check(CLI::IsMember({"dot", "ascii", "json"}));

    auto *ingest = app.add_subcommand("ingest", "semigroup of a parametrized curve");
    ingest->add_option("file", input, "parametrization JSON")->required();
    ingest->add_option("--out", out, "write the semigroup JSON here");
    ingest->add_option("--truncation", truncation, "truncation order for every branch")->check(CLI::PositiveNumber);
    ingest->add_flag("--allow-uncertified", allow_uncertified,
                     "report an uncertified conductor instead of failing at the truncation limit");

    std::vector<std::string> suites;
    for (const auto &[k, v] : suite_names()) {
        suites.push_back(v);
    }
    auto *corpus = app.add_subcommand("corpus", "run a property suite over the corpus");
    bool twins = false;
    auto *suite_opt = corpus->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suites));
    auto *twins_opt = corpus->add_flag("--root-twins", twins,
                                       "search Gorenstein numerical semigroups with identical graded roots");
    suite_opt->excludes(twins_opt);
    corpus->add_option("--seed", seed, "sampling seed");
    corpus->add_option("--count", count, "sample size (default: whole corpus)")->check(CLI::NonNegativeNumber);
    corpus->add_option("--max-genus", max_genus, "genus bound for numerical semigroups")->check(CLI::Range(0, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*validate) {
            return cmd_validate(input, as_json);
        }
        if (*analyze_cmd) {
            return cmd_analyze(input, report, max_q, dump);
        }
        if (*root) {
            return cmd_root(input, format);
        }
        if (*ingest) {
            return cmd_ingest(input, out, truncation, allow_uncertified);
        }
        if (*corpus) {
            if (twins) {
                return cmd_root_twins(max_genus);
            }
            if (suite.empty()) {
                std::cerr << "corpus: give --suite or --root-twins\n";
                return exit_input;
            }
            return cmd_corpus(suite, seed, count, max_genus);
        }
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const TruncationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_truncation;
    } catch (const ConsistencyError &e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return exit_consistency;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
