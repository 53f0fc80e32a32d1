#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sst/diagnostics.hpp"
#include "sst/zmat.hpp"

namespace sst {

/// One conjugacy class of subgroups.  Individual conjugates are never
/// materialized; everything downstream consumes orders, subconjugacy and
/// normality only.
struct SubgroupClass {
    std::string id;
    Int order = 1;
    Int class_size = 1;
    bool normal = true;

    bool operator==(const SubgroupClass&) const = default;
};

/// A finite group presented abstractly as its subgroup-class lattice.
/// Immutable after construction; safe for concurrent reads.
class GroupDescriptor {
public:
    /// subconj_pairs lists (lower, upper) generating pairs; the stored
    /// relation is their reflexive-transitive closure.
    GroupDescriptor(std::string name, Int order, std::vector<SubgroupClass> classes,
                    const std::vector<std::pair<std::string, std::string>>& subconj_pairs);

    const std::string& name() const { return name_; }
    Int order() const { return order_; }
    const std::vector<SubgroupClass>& classes() const { return classes_; }

    bool has_class(const std::string& id) const;
    const SubgroupClass& class_by_id(const std::string& id) const;
    int class_index(const std::string& id) const;

    /// True when some conjugate of `lower` is contained in `upper`.
    bool is_subconjugate(const std::string& lower, const std::string& upper) const;

    const SubgroupClass* trivial_class() const; // order 1, or nullptr
    const SubgroupClass* total_class() const;   // order |G|, or nullptr

    /// Generating pairs as supplied (before closure), for serialization.
    const std::vector<std::pair<std::string, std::string>>& generating_pairs() const {
        return pairs_;
    }

private:
    std::string name_;
    Int order_;
    std::vector<SubgroupClass> classes_;
    std::vector<std::pair<std::string, std::string>> pairs_;
    std::vector<char> rel_; // closed relation, classes x classes
};

using GroupPtr = std::shared_ptr<const GroupDescriptor>;

bool is_prime(Int p);

/// C_{p^n} with its chain of subgroups C_{p^k}, 0 <= k <= n.
GroupPtr builtin_cyclic(Int p, Int n);

/// Q_8 with classes <1>, <-1>, <i>, <j>, <k>, Q8 (all normal).
GroupPtr builtin_quaternion8();

/// Resolve a built-in group name (C2, C4, C8, C3, C9, Q8); nullptr otherwise.
GroupPtr builtin_group(const std::string& name);

/// Empty iff every GroupDescriptor invariant holds; one diagnostic each
/// otherwise.
Diagnostics validate_group(const GroupDescriptor& g);

/// Classes of exactly order h (possibly empty).
std::vector<SubgroupClass> subgroup_classes_of_order(const GroupDescriptor& g, Int h);

/// True when the subgroup classes form a chain of p-power orders, i.e. the
/// lattice shape of a cyclic p-group.  Used for tower annotations.
bool is_cyclic_p_group_shape(const GroupDescriptor& g, Int* p_out = nullptr, Int* n_out = nullptr);

} // namespace sst
