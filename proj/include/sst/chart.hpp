#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sst/abelian.hpp"
#include "sst/group.hpp"
#include "sst/rep.hpp"
#include "sst/zmat.hpp"

namespace sst {

/// Position of one cell: chart coordinates plus the Mackey level (a subgroup
/// class id of the chart's group).
struct CellKey {
    Int x = 0;
    Int y = 0;
    std::string level;

    auto operator<=>(const CellKey&) const = default;
    std::string to_string() const;
};

struct Window {
    Int x_min = 0, x_max = 0, y_min = 0, y_max = 0;

    bool contains(Int x, Int y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
    bool contains(const CellKey& k) const { return contains(k.x, k.y); }
    Int height() const { return y_max - y_min + 1; }
    bool operator==(const Window&) const = default;
};

/// One d_r: (x, y) -> (x - 1, y + r), level to (possibly different) level.
/// The matrix maps source generators to target generators, one column per
/// source generator.  On page 2 the generators are the declared cell
/// generators; on page r >= 3 they are the canonical surviving generators the
/// page turner produces for page r (free ones first, then torsion).
struct Differential {
    Int r = 2;
    CellKey source;
    CellKey target;
    Mat matrix;

    bool operator==(const Differential&) const = default;
};

enum class LevelMapKind { restriction, transfer };

/// Restriction/transfer data between two levels of one bidegree.  Transfers
/// run up the subgroup lattice, restrictions down.
struct LevelMap {
    Int x = 0, y = 0;
    LevelMapKind kind = LevelMapKind::transfer;
    std::string from_level;
    std::string to_level;
    Mat matrix;

    bool operator==(const LevelMap&) const = default;
};

/// Spectral sequence page data over a fixed V and an integer window.
/// Immutable by convention once validated; the engine copies rather than
/// mutates.
struct Chart {
    std::string name; // optional identifier used in reports
    GroupPtr group;
    VirtualRep v;
    Window window;
    std::map<CellKey, FgaGroup> cells;
    std::vector<Differential> differentials;
    std::vector<LevelMap> level_maps;

    Chart(GroupPtr g, VirtualRep v_, Window w)
        : group(std::move(g)), v(std::move(v_)), window(w) {}

    const FgaGroup* cell(const CellKey& k) const;
    const Differential* differential(Int r, const CellKey& source, const CellKey& target) const;
    std::vector<const Differential*> differentials_on_page(Int r) const;

    /// Derived target position of a differential record.
    static CellKey derived_target(const Differential& d) {
        return {d.source.x - 1, d.source.y + d.r, d.target.level};
    }
};

/// A safe page horizon: nothing longer than the window height can act.
Int default_r_max(const Chart& c);

Diagnostics validate_chart(const Chart& c);

/// Warnings (not errors) about classes or differentials escaping the
/// positive cone; partial charts trip these legitimately.
Diagnostics cone_containment_warnings(const Chart& c);

/// Internal presentation of one cell on one page, relative to the declared
/// page-2 generator lattice Z^n of that cell.  The page-r group is
/// lattice(l_basis) / lattice(m_gens); full_basis is adapted to that quotient
/// with full_orders[i] the order of its i-th column (1 = trivial, 0 = free).
/// live lists the non-trivial columns, free generators first.
struct PageCellState {
    Mat l_basis;
    Mat m_gens;
    Mat full_basis;
    std::vector<Int> full_orders;
    std::vector<int> live;
    std::vector<Int> live_orders;
    Mat gen_vecs; // n x live count, the live columns of full_basis
    FgaGroup fga;
    bool indeterminate = false;

    Int e2_rank() const { return l_basis.rows(); }
    Mat live_relations() const; // columns d * e_i for torsion live generators
};

/// What turn_page publishes: surviving subquotients with their presentation
/// matrices over the page-2 basis.
struct PageCell {
    FgaGroup group;
    Mat generator_vectors; // n x (free_rank + torsion count)
    bool indeterminate = false;
};

struct PageView {
    Int r = 2;
    std::map<CellKey, PageCell> cells;

    const PageCell* cell(const CellKey& k) const;
};

/// Page-turning engine.  Holds its own copy of the chart so callers may
/// install differentials (transport does) while turning.
class PageTurner {
public:
    explicit PageTurner(Chart chart);

    Int page() const { return page_; }
    const Chart& chart() const { return chart_; }

    /// Apply the d_page differentials and move to page + 1.
    void advance();
    void run_to(Int r_max);

    const PageView& view(Int r) const; // r in [2, page]
    const std::vector<PageView>& views() const { return views_; }

    /// Current-page state of a cell; absent cells yield the zero state.
    const PageCellState& state(const CellKey& k) const;

    /// Install a differential acting on the current page or later.
    void add_differential(Differential d);

    /// (page, source cell) of every differential whose target fell outside
    /// the window.
    const std::vector<std::pair<Int, CellKey>>& truncations() const { return truncations_; }

private:
    Chart chart_;
    Int page_ = 2;
    std::map<CellKey, PageCellState> states_;
    std::vector<PageView> views_;
    std::vector<std::pair<Int, CellKey>> truncations_;
    PageCellState zero_state_;

    void publish_view();
};

/// PageView at r + 1 (the result of applying the d_r differentials).
PageView turn_page(const Chart& c, Int r);

/// PageViews 2..r_max.
std::vector<PageView> run_to_page(const Chart& c, Int r_max);

/// Alternating free-rank bookkeeping across pages up to r_max (default:
/// window height + 2).  Per level when differentials preserve levels,
/// aggregate otherwise; transitions disturbed by window truncation are
/// skipped with a note.
Diagnostics euler_check(const Chart& c, std::optional<Int> r_max = std::nullopt);

/// Helpers shared with the comparison engine: maps between page groups are
/// matrices over the live generators of the two states.
bool column_is_zero_class(const std::vector<Int>& column, const PageCellState& tgt);
bool map_is_zero_class(const Mat& m, const PageCellState& tgt);
Mat reduce_mod_orders(Mat m, const PageCellState& tgt);
bool map_is_surjective(const Mat& m, const PageCellState& tgt);
bool map_is_injective(const Mat& m, const PageCellState& src, const PageCellState& tgt);

/// Matrix of the map the E2-level matrix induces on page-r groups, or
/// nullopt when it does not descend (the E2 map fails to carry survivors to
/// survivors or boundaries to boundaries).
std::optional<Mat> induced_page_map(const PageCellState& src, const PageCellState& tgt,
                                    const Mat& e2_matrix);

/// Matrix of an inverse of an isomorphism m : src -> tgt.
std::optional<Mat> invert_iso(const Mat& m, const PageCellState& src, const PageCellState& tgt);

} // namespace sst
