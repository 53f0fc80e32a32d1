#include "sst/rep.hpp"

#include <algorithm>
#include <sstream>

namespace sst {

IrreducibleTable::IrreducibleTable(GroupPtr group, std::vector<Irreducible> irreducibles,
                                   std::map<std::string, Alias> aliases)
    : group_(std::move(group)), irreducibles_(std::move(irreducibles)),
      aliases_(std::move(aliases)) {
    if (!group_) throw error("bad-argument", "table requires a group");
    for (size_t i = 0; i < irreducibles_.size(); ++i)
        for (size_t j = i + 1; j < irreducibles_.size(); ++j)
            if (irreducibles_[i].id == irreducibles_[j].id)
                throw error("duplicate-irreducible", "irreducible id repeated: " + irreducibles_[i].id);
    for (const auto& [alias, expansion] : aliases_) {
        if (has_irreducible(alias))
            throw error("duplicate-irreducible", "alias shadows irreducible: " + alias);
        for (const auto& [id, m] : expansion) {
            (void)m;
            if (!has_irreducible(id))
                throw error("unknown-irreducible", "alias " + alias + " references " + id);
        }
    }
}

bool IrreducibleTable::has_irreducible(const std::string& id) const {
    for (const auto& w : irreducibles_)
        if (w.id == id) return true;
    return false;
}

const Irreducible& IrreducibleTable::irreducible_by_id(const std::string& id) const {
    for (const auto& w : irreducibles_)
        if (w.id == id) return w;
    throw error("unknown-irreducible", "no irreducible with id " + id);
}

Diagnostics validate_table(const IrreducibleTable& t) {
    Diagnostics out;
    const auto& g = *t.group();
    Int regular_dim = 0;
    for (const auto& w : t.irreducibles()) {
        if (w.dim < 1)
            out.push_back({"bad-dimension", "irreducible " + w.id + " has nonpositive dimension"});
        if (w.mult_in_regular < 1)
            out.push_back({"bad-regular-multiplicity",
                           "irreducible " + w.id + " has mult_in_regular < 1"});
        regular_dim = checked_add(regular_dim, checked_mul(w.dim, w.mult_in_regular));

        for (const auto& c : g.classes()) {
            auto it = w.fixed_dim.find(c.id);
            if (it == w.fixed_dim.end()) {
                out.push_back({"missing-fixed-dim",
                               "irreducible " + w.id + " lacks fixed_dim for class " + c.id});
                continue;
            }
            if (it->second < 0 || it->second > w.dim)
                out.push_back({"fixed-dim-range",
                               "irreducible " + w.id + " fixed_dim[" + c.id + "] outside [0, dim]"});
            if (c.order == 1 && it->second != w.dim)
                out.push_back({"fixed-dim-trivial",
                               "irreducible " + w.id + " must be wholly fixed by the trivial class"});
        }
        for (const auto& [id, d] : w.fixed_dim)
            if (!g.has_class(id))
                out.push_back({"unknown-class", "irreducible " + w.id + " fixed_dim references " +
                                                    id + ", d=" + std::to_string(d)});

        // Fixed points can only shrink when the subgroup grows.
        for (const auto& lo : g.classes())
            for (const auto& hi : g.classes())
                if (g.is_subconjugate(lo.id, hi.id) && w.fixed_dim.count(lo.id) &&
                    w.fixed_dim.count(hi.id) &&
                    w.fixed_dim.at(hi.id) > w.fixed_dim.at(lo.id))
                    out.push_back({"fixed-dim-monotonicity",
                                   "irreducible " + w.id + ": fixed_dim increases from " + lo.id +
                                       " to " + hi.id});
    }
    if (regular_dim != g.order())
        out.push_back({"regular-dimension",
                       "regular representation has dimension " + std::to_string(regular_dim) +
                           ", expected |G| = " + std::to_string(g.order())});
    return out;
}

VirtualRep::VirtualRep(TablePtr table, std::map<std::string, Int> mult)
    : table_(std::move(table)) {
    for (auto& [id, m] : mult) {
        if (!table_->has_irreducible(id))
            throw error("unknown-irreducible", "virtual representation references " + id);
        if (m != 0) mult_[id] = m;
    }
}

VirtualRep VirtualRep::single(TablePtr table, const std::string& irr_id, Int m) {
    return VirtualRep(std::move(table), {{irr_id, m}});
}

Int VirtualRep::mult_of(const std::string& irr_id) const {
    auto it = mult_.find(irr_id);
    return it == mult_.end() ? 0 : it->second;
}

VirtualRep VirtualRep::operator+(const VirtualRep& rhs) const {
    std::map<std::string, Int> m = mult_;
    for (const auto& [id, k] : rhs.mult_) m[id] = checked_add(m.count(id) ? m[id] : 0, k);
    return VirtualRep(table_, std::move(m));
}

VirtualRep VirtualRep::operator-(const VirtualRep& rhs) const { return *this + rhs * -1; }

VirtualRep VirtualRep::operator*(Int k) const {
    std::map<std::string, Int> m;
    for (const auto& [id, v] : mult_) m[id] = checked_mul(v, k);
    return VirtualRep(table_, std::move(m));
}

bool VirtualRep::operator==(const VirtualRep& rhs) const { return mult_ == rhs.mult_; }

Int total_dim(const VirtualRep& v) {
    Int sum = 0;
    for (const auto& [id, m] : v.mult())
        sum = checked_add(sum, checked_mul(m, v.table()->irreducible_by_id(id).dim));
    return sum;
}

Int fixed_dim(const VirtualRep& v, const std::string& class_id) {
    if (!v.table()->group()->has_class(class_id))
        throw error("unknown-class", "fixed_dim: no class " + class_id);
    Int sum = 0;
    for (const auto& [id, m] : v.mult()) {
        const auto& w = v.table()->irreducible_by_id(id);
        auto it = w.fixed_dim.find(class_id);
        if (it == w.fixed_dim.end())
            throw error("missing-fixed-dim", "irreducible " + id + " lacks class " + class_id);
        sum = checked_add(sum, checked_mul(m, it->second));
    }
    return sum;
}

Int fixed_dim(const VirtualRep& v, const SubgroupClass& h) { return fixed_dim(v, h.id); }

VirtualRep regular_rep(const TablePtr& table) {
    std::map<std::string, Int> m;
    for (const auto& w : table->irreducibles()) m[w.id] = w.mult_in_regular;
    return VirtualRep(table, std::move(m));
}

Int rho_padding(const VirtualRep& v) {
    Int k = 0;
    for (const auto& [id, m] : v.mult()) {
        if (m >= 0) continue;
        Int r = v.table()->irreducible_by_id(id).mult_in_regular;
        k = std::max(k, ceil_div(-m, r));
    }
    return k;
}

TablePtr builtin_cyclic_table(Int p, Int n) {
    GroupPtr g = builtin_cyclic(p, n);
    const Int big_n = g->order();

    std::vector<Irreducible> irrs;
    {
        Irreducible triv{"1", 1, {}, 1};
        for (const auto& c : g->classes()) triv.fixed_dim[c.id] = 1;
        irrs.push_back(std::move(triv));
    }
    if (p == 2 && n >= 1) {
        // Sign representation: the generator acts by -1, so only the full
        // group fails to fix it.
        Irreducible sigma{"sigma", 1, {}, 1};
        for (const auto& c : g->classes()) sigma.fixed_dim[c.id] = (c.order == big_n) ? 0 : 1;
        irrs.push_back(std::move(sigma));
    }
    const Int m_max = (p == 2) ? big_n / 2 - 1 : (big_n - 1) / 2;
    for (Int m = 1; m <= m_max; ++m) {
        // Rotation by 2*pi*m / N; C_{p^k} fixes it exactly when p^k | m.
        Irreducible lam{"lambda(" + std::to_string(m) + ")", 2, {}, 1};
        for (const auto& c : g->classes()) lam.fixed_dim[c.id] = (m % c.order == 0) ? 2 : 0;
        irrs.push_back(std::move(lam));
    }

    std::map<std::string, IrreducibleTable::Alias> aliases;
    Int power = big_n; // p^(n - i), loop below divides as i grows
    for (Int i = 0; i <= n - 1; ++i) {
        power /= p; // now p^(n - i - 1)
        std::string alias = "lambda" + std::to_string(i);
        if (p == 2 && power == big_n / 2) {
            aliases[alias] = {{"sigma", 2}}; // rotation by pi splits as two signs
        } else {
            aliases[alias] = {{"lambda(" + std::to_string(power) + ")", 1}};
        }
    }
    return std::make_shared<IrreducibleTable>(g, std::move(irrs), std::move(aliases));
}

TablePtr builtin_quaternion8_table() {
    GroupPtr g = builtin_quaternion8();
    auto character = [&](const std::string& kernel_gen) {
        Irreducible chi{"chi_" + kernel_gen, 1, {}, 1};
        for (const auto& c : g->classes()) {
            bool fixed = c.order == 1 || c.id == "-1" || c.id == kernel_gen;
            chi.fixed_dim[c.id] = fixed ? 1 : 0;
        }
        return chi;
    };
    std::vector<Irreducible> irrs;
    {
        Irreducible triv{"1", 1, {}, 1};
        for (const auto& c : g->classes()) triv.fixed_dim[c.id] = 1;
        irrs.push_back(std::move(triv));
    }
    irrs.push_back(character("i"));
    irrs.push_back(character("j"));
    irrs.push_back(character("k"));
    {
        // Left multiplication on the quaternions; -1 acts freely, so every
        // nontrivial subgroup kills all fixed vectors.
        Irreducible h{"H", 4, {}, 1};
        for (const auto& c : g->classes()) h.fixed_dim[c.id] = (c.order == 1) ? 4 : 0;
        irrs.push_back(std::move(h));
    }
    return std::make_shared<IrreducibleTable>(g, std::move(irrs));
}

TablePtr builtin_table(const std::string& name) {
    if (name == "C2") return builtin_cyclic_table(2, 1);
    if (name == "C4") return builtin_cyclic_table(2, 2);
    if (name == "C8") return builtin_cyclic_table(2, 3);
    if (name == "C3") return builtin_cyclic_table(3, 1);
    if (name == "C9") return builtin_cyclic_table(3, 2);
    if (name == "Q8") return builtin_quaternion8_table();
    return nullptr;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

} // namespace

VirtualRep parse_virtual_rep(const TablePtr& table, const std::string& expr) {
    std::string body = trim(expr);
    if (body.empty() || body == "0") return VirtualRep::zero(table);

    std::map<std::string, Int> mult;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        size_t colon = item.rfind(':');
        std::string id = trim(colon == std::string::npos ? item : item.substr(0, colon));
        Int m = 1;
        if (colon != std::string::npos) {
            std::string num = trim(item.substr(colon + 1));
            try {
                size_t used = 0;
                m = std::stoll(num, &used);
                if (used != num.size()) throw std::invalid_argument(num);
            } catch (const std::exception&) {
                throw error("parse-error", "bad multiplicity in '" + item + "'");
            }
        }
        if (table->has_irreducible(id)) {
            mult[id] = checked_add(mult.count(id) ? mult[id] : 0, m);
        } else if (auto it = table->aliases().find(id); it != table->aliases().end()) {
            for (const auto& [irr, k] : it->second)
                mult[irr] = checked_add(mult.count(irr) ? mult[irr] : 0, checked_mul(k, m));
        } else {
            throw error("unknown-irreducible", "no irreducible or alias named " + id);
        }
    }
    return VirtualRep(table, std::move(mult));
}

std::string format_virtual_rep(const VirtualRep& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [id, m] : v.mult()) {
        if (!out.empty()) out += ",";
        out += id + ":" + std::to_string(m);
    }
    return out;
}

} // namespace sst
