#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sst/family.hpp"
#include "sst/group.hpp"
#include "sst/rep.hpp"

namespace sst {

/// Chart coordinates throughout are (x, y) = (t - s, s).

/// y = slope * x + intercept.  Everything this module produces has
/// nonnegative slope.
struct Line {
    Int slope = 0;
    Int intercept = 0;

    Int y_at(Int x) const { return checked_add(checked_mul(slope, x), intercept); }
    bool operator==(const Line&) const = default;
};

enum class Sense { on_or_above, above, on_or_below, below };

struct Constraint {
    Line line;
    Sense sense = Sense::on_or_above;

    bool satisfied(Int x, Int y) const;
    bool operator==(const Constraint&) const = default;
};

/// Closed-open-unbounded integer x interval.
struct XRange {
    std::optional<Int> min; // inclusive
    std::optional<Int> max; // inclusive

    bool contains(Int x) const {
        return (!min || x >= *min) && (!max || x <= *max);
    }
    bool operator==(const XRange&) const = default;
};

struct RegionPiece {
    XRange x_range;
    std::vector<Constraint> constraints;

    bool operator==(const RegionPiece&) const = default;
};

/// Exact piecewise-conical subset of the plane.  Pieces carry disjoint x
/// ranges; a point belongs to the region when some piece covers its column
/// and every constraint of that piece holds.
struct Region {
    std::vector<RegionPiece> pieces;

    bool operator==(const Region&) const = default;
};

bool contains(const Region& r, Int x, Int y);

struct Bidegree {
    Int x = 0; // t - s
    Int y = 0; // s

    auto operator<=>(const Bidegree&) const = default;
};

/// The line of slope |H| - 1 above which localizing away from (conjugates of)
/// H changes nothing: y = (|H| - 1) x + |V^H| |H| - |V|.
Line isomorphism_line(const SubgroupClass& h, const VirtualRep& v);

/// The stratification line of slope h - 1 with the order-family intercept.
/// Requires h >= 1.
Line stratum_line(const GroupPtr& g, Int h, const VirtualRep& v);

/// Isomorphism region between the localizations at two nested families,
/// split at x = 0 (the tie at x = 0 belongs to the right-hand piece).
/// Requires F strictly inside F2.
Region comparison_region(const Family& f, const Family& f2, const VirtualRep& v);

/// Region where the full chart is recovered from the localization at the
/// order family of h: the stratum line for x >= 0, the horizontal intercept
/// line for x < 0.  Requires h >= 1.
Region recovery_region(const GroupPtr& g, Int h, const VirtualRep& v);

/// Conical region containing every class of a connective chart.
Region positive_cone(const GroupPtr& g, const VirtualRep& v);

enum class E2Verdict { iso, surjection, no_claim };

/// Exact per-class comparison verdict at (t, s), sharper than the coarse
/// line test because the ceiling keeps the sub-|H| correction.
E2Verdict e2_comparison(const SubgroupClass& h, const VirtualRep& v, Int t, Int s);

/// One stratification line per jump order of the group.
std::vector<std::pair<Int, Line>> strata(const GroupPtr& g, const VirtualRep& v);

struct ColumnBounds {
    Int y_min = 0;
    Int y_max = 0;
    bool empty() const { return y_min > y_max; }
};

/// Vertical extent of possibly-nonzero classes in column x of a connective
/// chart.  May be empty for x < 0; callers flag rather than suppress that.
ColumnBounds vanishing_bounds(const GroupPtr& g, const VirtualRep& v, Int x);

} // namespace sst
