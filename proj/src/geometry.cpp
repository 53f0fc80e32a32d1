#include "sst/geometry.hpp"

#include <algorithm>

namespace sst {

bool Constraint::satisfied(Int x, Int y) const {
    Int ly = line.y_at(x);
    switch (sense) {
        case Sense::on_or_above: return y >= ly;
        case Sense::above: return y > ly;
        case Sense::on_or_below: return y <= ly;
        case Sense::below: return y < ly;
    }
    return false;
}

bool contains(const Region& r, Int x, Int y) {
    for (const auto& piece : r.pieces) {
        if (!piece.x_range.contains(x)) continue;
        bool ok = true;
        for (const auto& c : piece.constraints)
            if (!c.satisfied(x, y)) {
                ok = false;
                break;
            }
        return ok;
    }
    return false;
}

Line isomorphism_line(const SubgroupClass& h, const VirtualRep& v) {
    return {h.order - 1, checked_sub(checked_mul(fixed_dim(v, h), h.order), total_dim(v))};
}

Line stratum_line(const GroupPtr& g, Int h, const VirtualRep& v) {
    if (h < 1) throw error("bad-argument", "stratum line requires h >= 1");
    return {h - 1, stratification_intercept(v, order_family(g, h).classes())};
}

Region comparison_region(const Family& f, const Family& f2, const VirtualRep& v) {
    auto diff = family_difference(f, f2);
    if (diff.empty()) throw error("empty-difference", "families must differ");
    Int tau = stratification_intercept(v, diff);
    auto [lo, hi] = extremal_orders(diff);
    Region r;
    r.pieces.push_back({XRange{0, std::nullopt}, {{Line{hi - 1, tau}, Sense::on_or_above}}});
    r.pieces.push_back({XRange{std::nullopt, -1}, {{Line{lo - 1, tau}, Sense::on_or_above}}});
    return r;
}

Region recovery_region(const GroupPtr& g, Int h, const VirtualRep& v) {
    if (h < 1) throw error("bad-argument", "recovery region requires h >= 1");
    Line slanted = stratum_line(g, h, v);
    Region r;
    r.pieces.push_back({XRange{0, std::nullopt}, {{slanted, Sense::on_or_above}}});
    r.pieces.push_back(
        {XRange{std::nullopt, -1}, {{Line{0, slanted.intercept}, Sense::on_or_above}}});
    return r;
}

namespace {

Int max_fixed_dim(const GroupPtr& g, const VirtualRep& v) {
    Int best = 0;
    bool first = true;
    for (const auto& c : g->classes()) {
        Int f = fixed_dim(v, c);
        if (first || f > best) best = f;
        first = false;
    }
    return best;
}

} // namespace

Region positive_cone(const GroupPtr& g, const VirtualRep& v) {
    Int dim = total_dim(v);
    Int floor_y = checked_sub(-dim, checked_mul(rho_padding(v), g->order()));
    Int top_intercept = checked_add(-dim, checked_mul(g->order(), max_fixed_dim(g, v)));
    Region r;
    r.pieces.push_back({XRange{},
                        {{Line{0, floor_y}, Sense::on_or_above},
                         {Line{g->order() - 1, top_intercept}, Sense::on_or_below}}});
    return r;
}

E2Verdict e2_comparison(const SubgroupClass& h, const VirtualRep& v, Int t, Int s) {
    Int threshold = checked_sub(checked_add(fixed_dim(v, h), t),
                                ceil_div(checked_add(total_dim(v), t), h.order));
    if (s > threshold) return E2Verdict::iso;
    if (s == threshold) return E2Verdict::surjection;
    return E2Verdict::no_claim;
}

std::vector<std::pair<Int, Line>> strata(const GroupPtr& g, const VirtualRep& v) {
    std::vector<std::pair<Int, Line>> out;
    for (const auto& [h, fam] : order_family_chain(g)) {
        (void)fam;
        out.emplace_back(h, stratum_line(g, h, v));
    }
    return out;
}

ColumnBounds vanishing_bounds(const GroupPtr& g, const VirtualRep& v, Int x) {
    Int dim = total_dim(v);
    ColumnBounds b;
    b.y_min = checked_sub(-dim, checked_mul(rho_padding(v), g->order()));
    b.y_max = checked_add(checked_mul(g->order() - 1, x),
                          checked_add(-dim, checked_mul(g->order(), max_fixed_dim(g, v))));
    return b;
}

} // namespace sst
