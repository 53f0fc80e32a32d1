#pragma once

#include <string>
#include <vector>

#include "sst/diagnostics.hpp"
#include "sst/zmat.hpp"

namespace sst {

/// Finitely generated abelian group with named generators: free generators
/// first, then one generator per torsion order.  Torsion orders are taken as
/// given (not prime-power normalized); canonical_form does the normalizing.
struct FgaGroup {
    Int free_rank = 0;
    std::vector<Int> torsion;        // each >= 2, arbitrary order
    std::vector<std::string> labels; // size = free_rank + torsion.size()

    Int generator_count() const { return free_rank + Int(torsion.size()); }
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }

    /// Order of generator i: 0 for free, else the torsion order.
    Int order_of(Int i) const {
        return i < free_rank ? 0 : torsion[size_t(i - free_rank)];
    }

    bool operator==(const FgaGroup&) const = default;
};

Diagnostics validate_fga(const FgaGroup& g);

/// Isomorphism-invariant form: free rank plus the prime-power decomposition
/// of the torsion, sorted.  Two FgaGroups are isomorphic exactly when their
/// canonical forms are equal.
struct CanonicalAbelian {
    Int free_rank = 0;
    std::vector<Int> prime_power_torsion; // sorted ascending

    bool operator==(const CanonicalAbelian&) const = default;
};

CanonicalAbelian canonical_form(const FgaGroup& g);

/// Short display form, e.g. "Z^2+Z/2+Z/4" or "0".
std::string canonical_string(const FgaGroup& g);

} // namespace sst
