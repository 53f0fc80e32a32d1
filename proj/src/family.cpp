#include "sst/family.hpp"

#include <algorithm>

namespace sst {

Family::Family(GroupPtr group, std::set<std::string> members)
    : group_(std::move(group)), members_(std::move(members)) {
    if (!group_) throw error("bad-argument", "family requires a group");
    for (const auto& id : members_)
        if (!group_->has_class(id))
            throw error("unknown-class", "family member " + id + " not a class of " + group_->name());
}

std::vector<SubgroupClass> Family::classes() const {
    std::vector<SubgroupClass> out;
    for (const auto& id : members_) out.push_back(group_->class_by_id(id));
    std::sort(out.begin(), out.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
        return a.order != b.order ? a.order < b.order : a.id < b.id;
    });
    return out;
}

bool Family::is_subfamily_of(const Family& rhs) const {
    return std::includes(rhs.members_.begin(), rhs.members_.end(), members_.begin(),
                         members_.end());
}

Family order_family(const GroupPtr& g, Int h) {
    if (h < 0 || h > g->order())
        throw error("bad-argument", "order family bound must lie in [0, |G|]");
    std::set<std::string> members;
    for (const auto& c : g->classes())
        if (c.order <= h) members.insert(c.id);
    return Family(g, std::move(members));
}

Family non_containing_family(const GroupPtr& g, const std::string& class_id) {
    if (!g->has_class(class_id)) throw error("unknown-class", "no class " + class_id);
    std::set<std::string> members;
    for (const auto& c : g->classes())
        if (!g->is_subconjugate(class_id, c.id)) members.insert(c.id);
    return Family(g, std::move(members));
}

Family non_containing_family(const GroupPtr& g, const SubgroupClass& h) {
    return non_containing_family(g, h.id);
}

Family family_from_members(const GroupPtr& g, const std::set<std::string>& ids) {
    Family f(g, ids);
    auto problems = validate_family(f);
    if (!problems.empty()) throw error("closure-violation", problems.front().message);
    return f;
}

Diagnostics validate_family(const Family& f) {
    Diagnostics out;
    const auto& g = *f.group();
    for (const auto& id : f.members())
        for (const auto& c : g.classes())
            if (g.is_subconjugate(c.id, id) && !f.contains(c.id))
                out.push_back({"closure-violation",
                               "family contains " + id + " but not its subconjugate " + c.id});
    return out;
}

std::vector<SubgroupClass> family_difference(const Family& f, const Family& f2) {
    if (f.group()->name() != f2.group()->name())
        throw error("group-mismatch", "families over different groups");
    if (!f.is_subfamily_of(f2))
        throw error("non-nested", "first family is not contained in the second");
    std::vector<SubgroupClass> out;
    for (const auto& c : f2.classes())
        if (!f.contains(c.id)) out.push_back(c);
    return out;
}

std::vector<SubgroupClass> fiber_support(const Family& f, const Family& f2) {
    return family_difference(f, f2);
}

Int stratification_intercept(const VirtualRep& v, const std::vector<SubgroupClass>& s) {
    if (s.empty()) throw error("empty-set", "intercept undefined over the empty class set");
    Int best = 0;
    bool first = true;
    for (const auto& h : s) {
        Int value = checked_sub(checked_mul(fixed_dim(v, h), h.order), total_dim(v));
        if (first || value > best) best = value;
        first = false;
    }
    return best;
}

std::pair<Int, Int> extremal_orders(const std::vector<SubgroupClass>& s) {
    if (s.empty()) throw error("empty-set", "extremal orders undefined over the empty class set");
    Int lo = s.front().order, hi = s.front().order;
    for (const auto& c : s) {
        lo = std::min(lo, c.order);
        hi = std::max(hi, c.order);
    }
    return {lo, hi};
}

std::vector<std::pair<Int, Family>> order_family_chain(const GroupPtr& g) {
    std::set<Int> orders;
    for (const auto& c : g->classes()) orders.insert(c.order);
    std::vector<std::pair<Int, Family>> out;
    for (Int h : orders) out.emplace_back(h, order_family(g, h));
    return out;
}

} // namespace sst
