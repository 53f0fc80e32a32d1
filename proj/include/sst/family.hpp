#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sst/group.hpp"
#include "sst/rep.hpp"

namespace sst {

/// A subconjugacy-closed set of subgroup classes.  The associated universal
/// space is represented purely through this support data: localizing at the
/// family kills exactly the levels inside it.
class Family {
public:
    Family(GroupPtr group, std::set<std::string> members);

    const GroupPtr& group() const { return group_; }
    const std::set<std::string>& members() const { return members_; }
    bool contains(const std::string& class_id) const { return members_.count(class_id) != 0; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }

    /// Member classes, resolved against the group.
    std::vector<SubgroupClass> classes() const;

    bool operator==(const Family& rhs) const { return members_ == rhs.members_; }
    bool is_subfamily_of(const Family& rhs) const;

private:
    GroupPtr group_;
    std::set<std::string> members_;
};

/// All subgroup classes of order <= h.  Requires 0 <= h <= |G|.
Family order_family(const GroupPtr& g, Int h);

/// All classes K such that no conjugate of H is contained in K.  For the
/// linearly ordered cyclic case this coincides with "does not contain H".
Family non_containing_family(const GroupPtr& g, const SubgroupClass& h);
Family non_containing_family(const GroupPtr& g, const std::string& class_id);

/// Build a family from an explicit member list, verifying subconjugacy
/// closure.  A violation throws with a witness pair in the message.
Family family_from_members(const GroupPtr& g, const std::set<std::string>& ids);

Diagnostics validate_family(const Family& f);

/// F2 \ F for nested families F inside F2 (checked), sorted by (order, id).
std::vector<SubgroupClass> family_difference(const Family& f, const Family& f2);

/// Same set as family_difference, read as the geometric-fixed-point support
/// of the fiber of the localization map between the two families.
std::vector<SubgroupClass> fiber_support(const Family& f, const Family& f2);

/// max over H in S of |V^H| * |H| - |V|; the V-dependent intercept of the
/// stratification lines.  S must be nonempty.
Int stratification_intercept(const VirtualRep& v, const std::vector<SubgroupClass>& s);

/// (smallest order, largest order) over a nonempty class set.
std::pair<Int, Int> extremal_orders(const std::vector<SubgroupClass>& s);

/// The distinct order families with their jump orders: one entry per order h
/// of a subgroup of G (h = |G| included last).
std::vector<std::pair<Int, Family>> order_family_chain(const GroupPtr& g);

} // namespace sst
