#include "sst/group.hpp"

#include <algorithm>
#include <map>

namespace sst {

GroupDescriptor::GroupDescriptor(std::string name, Int order, std::vector<SubgroupClass> classes,
                                 const std::vector<std::pair<std::string, std::string>>& pairs)
    : name_(std::move(name)), order_(order), classes_(std::move(classes)), pairs_(pairs) {
    const size_t n = classes_.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (classes_[i].id == classes_[j].id)
                throw error("duplicate-class", "subgroup class id repeated: " + classes_[i].id);

    rel_.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i) rel_[i * n + i] = 1;
    for (const auto& [lo, hi] : pairs_) {
        if (!has_class(lo) || !has_class(hi))
            throw error("unknown-class", "subconjugacy pair references unknown class");
        rel_[size_t(class_index(lo)) * n + size_t(class_index(hi))] = 1;
    }
    // Floyd-Warshall closure; class counts are tiny.
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            if (rel_[i * n + k])
                for (size_t j = 0; j < n; ++j)
                    if (rel_[k * n + j]) rel_[i * n + j] = 1;
}

bool GroupDescriptor::has_class(const std::string& id) const {
    for (const auto& c : classes_)
        if (c.id == id) return true;
    return false;
}

int GroupDescriptor::class_index(const std::string& id) const {
    for (size_t i = 0; i < classes_.size(); ++i)
        if (classes_[i].id == id) return int(i);
    throw error("unknown-class", "no subgroup class with id " + id);
}

const SubgroupClass& GroupDescriptor::class_by_id(const std::string& id) const {
    return classes_[size_t(class_index(id))];
}

bool GroupDescriptor::is_subconjugate(const std::string& lower, const std::string& upper) const {
    return rel_[size_t(class_index(lower)) * classes_.size() + size_t(class_index(upper))] != 0;
}

const SubgroupClass* GroupDescriptor::trivial_class() const {
    const SubgroupClass* found = nullptr;
    for (const auto& c : classes_)
        if (c.order == 1) {
            if (found) return nullptr; // ambiguous; validate_group reports it
            found = &c;
        }
    return found;
}

const SubgroupClass* GroupDescriptor::total_class() const {
    const SubgroupClass* found = nullptr;
    for (const auto& c : classes_)
        if (c.order == order_) {
            if (found) return nullptr;
            found = &c;
        }
    return found;
}

bool is_prime(Int p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

GroupPtr builtin_cyclic(Int p, Int n) {
    if (!is_prime(p)) throw error("non-prime", "cyclic group base must be prime");
    if (n < 0) throw error("bad-argument", "cyclic group exponent must be nonnegative");
    std::vector<SubgroupClass> classes;
    std::vector<std::pair<std::string, std::string>> pairs;
    Int pk = 1;
    for (Int k = 0; k <= n; ++k) {
        classes.push_back({"C" + std::to_string(pk), pk, 1, true});
        if (k > 0) pairs.emplace_back(classes[size_t(k - 1)].id, classes[size_t(k)].id);
        if (k < n) pk = checked_mul(pk, p);
    }
    return std::make_shared<GroupDescriptor>("C" + std::to_string(pk), pk, std::move(classes),
                                             pairs);
}

GroupPtr builtin_quaternion8() {
    std::vector<SubgroupClass> classes = {
        {"1", 1, 1, true},  {"-1", 2, 1, true}, {"i", 4, 1, true},
        {"j", 4, 1, true},  {"k", 4, 1, true},  {"Q8", 8, 1, true},
    };
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"1", "-1"}, {"-1", "i"}, {"-1", "j"}, {"-1", "k"}, {"i", "Q8"}, {"j", "Q8"}, {"k", "Q8"},
    };
    return std::make_shared<GroupDescriptor>("Q8", 8, std::move(classes), pairs);
}

GroupPtr builtin_group(const std::string& name) {
    if (name == "C2") return builtin_cyclic(2, 1);
    if (name == "C4") return builtin_cyclic(2, 2);
    if (name == "C8") return builtin_cyclic(2, 3);
    if (name == "C3") return builtin_cyclic(3, 1);
    if (name == "C9") return builtin_cyclic(3, 2);
    if (name == "Q8") return builtin_quaternion8();
    return nullptr;
}

Diagnostics validate_group(const GroupDescriptor& g) {
    Diagnostics out;
    const auto& cs = g.classes();

    int trivial_count = 0, total_count = 0;
    for (const auto& c : cs) {
        if (c.order == 1) ++trivial_count;
        if (c.order == g.order()) ++total_count;
        if (c.order < 1 || g.order() % c.order != 0)
            out.push_back({"lagrange-violation",
                           "class " + c.id + " has order " + std::to_string(c.order) +
                               " which does not divide |G| = " + std::to_string(g.order())});
        if (c.class_size < 1 || g.order() % c.class_size != 0)
            out.push_back({"class-size-violation",
                           "class " + c.id + " has class_size " + std::to_string(c.class_size) +
                               " which does not divide |G|"});
        if (c.normal != (c.class_size == 1))
            out.push_back({"normality-mismatch",
                           "class " + c.id + ": normal flag must hold exactly when class_size = 1"});
    }
    if (trivial_count == 0) out.push_back({"missing-trivial", "no subgroup class of order 1"});
    if (trivial_count > 1) out.push_back({"duplicate-trivial", "multiple classes of order 1"});
    if (total_count == 0)
        out.push_back({"missing-total", "no subgroup class of order |G|"});
    if (total_count > 1) out.push_back({"duplicate-total", "multiple classes of order |G|"});

    for (const auto& a : cs)
        for (const auto& b : cs) {
            if (g.is_subconjugate(a.id, b.id)) {
                if (b.order % a.order != 0)
                    out.push_back({"subconjugacy-order",
                                   a.id + " below " + b.id + " but |" + a.id +
                                       "| does not divide |" + b.id + "|"});
                if (a.id != b.id && g.is_subconjugate(b.id, a.id))
                    out.push_back({"subconjugacy-antisymmetry",
                                   a.id + " and " + b.id + " are mutually subconjugate"});
            }
        }

    if (trivial_count == 1) {
        const SubgroupClass* t = g.trivial_class();
        for (const auto& c : cs)
            if (!g.is_subconjugate(t->id, c.id))
                out.push_back({"trivial-not-minimal",
                               "trivial class not below class " + c.id});
    }
    if (total_count == 1) {
        const SubgroupClass* t = g.total_class();
        for (const auto& c : cs)
            if (!g.is_subconjugate(c.id, t->id))
                out.push_back({"total-not-maximal", "class " + c.id + " not below the full group"});
    }
    return out;
}

std::vector<SubgroupClass> subgroup_classes_of_order(const GroupDescriptor& g, Int h) {
    if (h < 0) throw error("bad-argument", "order must be nonnegative");
    std::vector<SubgroupClass> out;
    for (const auto& c : g.classes())
        if (c.order == h) out.push_back(c);
    return out;
}

bool is_cyclic_p_group_shape(const GroupDescriptor& g, Int* p_out, Int* n_out) {
    auto cs = g.classes();
    std::sort(cs.begin(), cs.end(),
              [](const SubgroupClass& a, const SubgroupClass& b) { return a.order < b.order; });
    if (cs.empty() || cs.front().order != 1) return false;
    if (cs.size() == 1) {
        if (p_out) *p_out = 2;
        if (n_out) *n_out = 0;
        return g.order() == 1;
    }
    Int p = cs[1].order;
    if (!is_prime(p)) return false;
    Int expected = 1;
    for (size_t k = 0; k < cs.size(); ++k) {
        if (cs[k].order != expected || !cs[k].normal) return false;
        if (k + 1 < cs.size()) expected = checked_mul(expected, p);
    }
    if (expected != g.order()) return false;
    // Chain requirement.
    for (size_t k = 0; k + 1 < cs.size(); ++k)
        if (!g.is_subconjugate(cs[k].id, cs[k + 1].id)) return false;
    if (p_out) *p_out = p;
    if (n_out) *n_out = Int(cs.size()) - 1;
    return true;
}

} // namespace sst
