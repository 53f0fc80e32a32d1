#include "sst/abelian.hpp"

#include <algorithm>

namespace sst {

Diagnostics validate_fga(const FgaGroup& g) {
    Diagnostics out;
    if (g.free_rank < 0) out.push_back({"bad-rank", "negative free rank"});
    for (Int t : g.torsion)
        if (t < 2)
            out.push_back({"bad-torsion", "torsion order " + std::to_string(t) + " below 2"});
    if (Int(g.labels.size()) != g.generator_count())
        out.push_back({"label-count", "expected " + std::to_string(g.generator_count()) +
                                          " labels, got " + std::to_string(g.labels.size())});
    return out;
}

CanonicalAbelian canonical_form(const FgaGroup& g) {
    CanonicalAbelian c;
    c.free_rank = g.free_rank;
    for (Int t : g.torsion) {
        // Split into prime powers by trial division; chart torsion stays small.
        Int rest = t;
        for (Int p = 2; p * p <= rest; ++p) {
            if (rest % p != 0) continue;
            Int q = 1;
            while (rest % p == 0) {
                q = checked_mul(q, p);
                rest /= p;
            }
            c.prime_power_torsion.push_back(q);
        }
        if (rest > 1) c.prime_power_torsion.push_back(rest);
    }
    std::sort(c.prime_power_torsion.begin(), c.prime_power_torsion.end());
    return c;
}

std::string canonical_string(const FgaGroup& g) {
    CanonicalAbelian c = canonical_form(g);
    if (c.free_rank == 0 && c.prime_power_torsion.empty()) return "0";
    std::string out;
    if (c.free_rank == 1) out = "Z";
    if (c.free_rank > 1) out = "Z^" + std::to_string(c.free_rank);
    for (Int t : c.prime_power_torsion) {
        if (!out.empty()) out += "+";
        out += "Z/" + std::to_string(t);
    }
    return out;
}

} // namespace sst
