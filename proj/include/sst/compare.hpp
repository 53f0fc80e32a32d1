#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sst/chart.hpp"
#include "sst/geometry.hpp"

namespace sst {

/// Map of charts over the same group and V: one integer matrix per cell from
/// the source page-2 group to the target page-2 group.  Missing entries are
/// zero maps.
struct ChartMap {
    std::shared_ptr<const Chart> source;
    std::shared_ptr<const Chart> target;
    std::map<CellKey, Mat> matrices;

    Mat matrix_at(const CellKey& k) const; // zero-filled to the cell shapes
};

Diagnostics validate_chart_map(const ChartMap& m);

/// Composite of two maps (b after a); a.target and b.source must agree.
ChartMap compose_chart_maps(const ChartMap& a, const ChartMap& b);

/// A piecewise line: the boundary against which "above / on / below" is
/// measured, split along x ranges.  A single Line is the common case; the
/// tower checks use a slanted piece for x >= 0 and a horizontal piece for
/// x < 0.
struct PiecewiseBoundary {
    enum class Pos { above, on, below, outside };

    std::vector<std::pair<XRange, Line>> pieces;

    static PiecewiseBoundary single(const Line& line);
    static PiecewiseBoundary split(const Line& nonneg_x, const Line& neg_x);

    /// Position of (x, y) relative to the boundary lifted by `shift`.
    Pos classify(Int x, Int y, Int shift = 0) const;
    std::string describe() const;
};

struct Witness {
    Int page = 2;
    CellKey cell;
    std::string detail;
};

struct ConditionReport {
    bool pass = true;
    std::vector<Witness> witnesses;
};

/// Verdict of the three-part isomorphism-of-spectral-sequences check.
struct IsomReport {
    PiecewiseBoundary boundary;
    Int r_max = 2;
    ConditionReport condition1; // page-2 iso above / surjection on the boundary
    ConditionReport condition2; // source differentials stay nonzero in the target
    ConditionReport condition3; // target differentials are hit from the source
    Diagnostics diagnostics;

    bool pass() const { return condition1.pass && condition2.pass && condition3.pass; }
};

IsomReport check_isom_on_line(const ChartMap& m, const Line& line, Int r_max);
IsomReport check_isom_on_boundary(const ChartMap& m, const PiecewiseBoundary& boundary, Int r_max);

struct CandidateDifferential {
    Int r = 2;
    CellKey source;
    CellKey target;
    std::string reason;
};

struct PropagationResult {
    bool condition1_ok = false;
    IsomReport condition1_report;
    Chart chart;                                  // source with transported differentials
    std::vector<CandidateDifferential> candidates; // ambiguity-band differentials, not installed
    Int installed = 0;
};

/// Transport the target chart's differentials into the source chart along the
/// map, page by page.  A differential is installed when its source cell sits
/// strictly above the r-fold vertical shift of the line, where the page maps
/// are certified bijections; between the line and its shift only surjectivity
/// is available, so those are reported as candidates instead of installed.
PropagationResult propagate_differentials(const ChartMap& m, const Line& line, Int r_max);

struct StratumReport {
    Int h = 1;
    Line line;
    std::vector<std::string> family_members;
    std::string chart_name;
    std::string governs;        // which band this localization recovers
    std::string fixed_point_label;    // cyclic p-groups: the geometric fixed points computed
    std::string residual_action;      // residual quotient action, when applicable
    std::string euler_localization;   // inverted Euler class, when applicable
    IsomReport isom;
};

struct TowerReport {
    std::vector<StratumReport> strata; // ordered by increasing h
    Diagnostics diagnostics;

    bool pass() const;
};

/// Verify a stratification tower: localized charts keyed by the jump orders
/// of the group, with the chain of maps base -> chart(h_1) -> chart(h_2) ...
/// (the maps must hold exactly these chart objects).  Each stratum is checked
/// against its slanted line for x >= 0 and the horizontal intercept line for
/// x < 0.
TowerReport tower_assemble(const GroupPtr& g, const VirtualRep& v,
                           const std::shared_ptr<const Chart>& base,
                           const std::vector<std::pair<Int, std::shared_ptr<const Chart>>>& localized,
                           const std::vector<ChartMap>& chain, Int r_max);

/// On cells lying exactly on the line, compare the kernel of the map with
/// the image of the transfer from the H-level (composed along adjacent
/// transfers); on levels not above H the kernel must vanish.  H must be
/// normal.
Diagnostics transfer_kernel_check(const ChartMap& m, const SubgroupClass& h, const Line& line);

} // namespace sst
