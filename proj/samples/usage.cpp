// Minimal library walk-through: build a semigroup, compute its lattice
// cohomology, and read off the verdicts.

#include <iostream>

#include <latcoh/latcoh.hpp>

int main()
{
    using namespace latcoh;

    // <4,5>: the value semigroup of x^4 = y^5
    const auto S = from_numerical_generators({4, 5});
    const auto I = build_instance(S);
    const auto a = analyze(I);
    std::cout << "conductor " << a.conductor << ", delta " << a.delta << ", eu " << a.eu << "\n";
    std::cout << io::root_to_ascii(graded_root(I.LC));

    // the same semigroup from a parametrization
    const auto curve = make_curve(2, {make_branch({{{1, 4}}, {{1, 5}}})});
    const auto ingested = extract_semigroup(curve);
    std::cout << "ingested " << generator_name(ingested.semigroup) << " (" << to_string(ingested.certificate)
              << ")\n";

    const bool ok = ingested.semigroup == S && a.eu == a.delta && a.gorenstein.verdict() && a.mf.holds;
    return ok ? 0 : 1;
}
