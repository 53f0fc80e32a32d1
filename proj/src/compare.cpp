#include "sst/compare.hpp"

#include <algorithm>
#include <set>

#include "sst/family.hpp"

namespace sst {

Mat ChartMap::matrix_at(const CellKey& k) const {
    auto it = matrices.find(k);
    if (it != matrices.end()) return it->second;
    const FgaGroup* s = source->cell(k);
    const FgaGroup* t = target->cell(k);
    return Mat(t ? int(t->generator_count()) : 0, s ? int(s->generator_count()) : 0);
}

Diagnostics validate_chart_map(const ChartMap& m) {
    Diagnostics out;
    if (!m.source || !m.target) {
        out.push_back({"missing-chart", "chart map needs both charts"});
        return out;
    }
    if (m.source->group->name() != m.target->group->name())
        out.push_back({"group-mismatch", "source and target charts have different groups"});
    if (!(m.source->v == m.target->v))
        out.push_back({"v-mismatch", "source and target charts have different V"});

    static const FgaGroup zero_group{};
    for (const auto& [key, matrix] : m.matrices) {
        const FgaGroup* s = m.source->cell(key);
        const FgaGroup* t = m.target->cell(key);
        const FgaGroup& src = s ? *s : zero_group;
        const FgaGroup& tgt = t ? *t : zero_group;
        if (matrix.cols() != src.generator_count() || matrix.rows() != tgt.generator_count()) {
            out.push_back({"matrix-shape", "map at " + key.to_string() + " is " +
                                               std::to_string(matrix.rows()) + "x" +
                                               std::to_string(matrix.cols()) + ", cells need " +
                                               std::to_string(tgt.generator_count()) + "x" +
                                               std::to_string(src.generator_count())});
            continue;
        }
        for (Int j = 0; j < src.generator_count(); ++j) {
            Int d = src.order_of(j);
            if (d == 0) continue;
            bool ok = true;
            for (Int i = 0; i < tgt.generator_count(); ++i) {
                Int e = tgt.order_of(i);
                Int v = checked_mul(d, matrix.at(int(i), int(j)));
                if (e == 0 ? v != 0 : v % e != 0) ok = false;
            }
            if (!ok) {
                out.push_back({"torsion-incompatible",
                               "map at " + key.to_string() + " does not respect torsion"});
                break;
            }
        }
    }
    return out;
}

ChartMap compose_chart_maps(const ChartMap& a, const ChartMap& b) {
    if (a.target->group->name() != b.source->group->name())
        throw error("mismatched-charts", "cannot compose maps over different groups");
    ChartMap out;
    out.source = a.source;
    out.target = b.target;
    std::set<CellKey> keys;
    for (const auto& [k, v] : a.matrices) {
        (void)v;
        keys.insert(k);
    }
    for (const auto& [k, v] : b.matrices) {
        (void)v;
        keys.insert(k);
    }
    for (const auto& k : keys) {
        Mat ba = b.matrix_at(k) * a.matrix_at(k);
        if (!ba.is_zero()) out.matrices[k] = std::move(ba);
    }
    return out;
}

PiecewiseBoundary PiecewiseBoundary::single(const Line& line) {
    PiecewiseBoundary b;
    b.pieces.push_back({XRange{}, line});
    return b;
}

PiecewiseBoundary PiecewiseBoundary::split(const Line& nonneg_x, const Line& neg_x) {
    PiecewiseBoundary b;
    b.pieces.push_back({XRange{0, std::nullopt}, nonneg_x});
    b.pieces.push_back({XRange{std::nullopt, -1}, neg_x});
    return b;
}

PiecewiseBoundary::Pos PiecewiseBoundary::classify(Int x, Int y, Int shift) const {
    for (const auto& [range, line] : pieces) {
        if (!range.contains(x)) continue;
        Int boundary_y = checked_add(line.y_at(x), shift);
        if (y > boundary_y) return Pos::above;
        if (y == boundary_y) return Pos::on;
        return Pos::below;
    }
    return Pos::outside;
}

std::string PiecewiseBoundary::describe() const {
    std::string out;
    for (const auto& [range, line] : pieces) {
        if (!out.empty()) out += "; ";
        out += "y = " + std::to_string(line.slope) + "x" +
               (line.intercept >= 0 ? "+" : "") + std::to_string(line.intercept);
        if (range.min || range.max) {
            out += " on ";
            out += range.min ? std::to_string(*range.min) : std::string("-inf");
            out += " <= x <= ";
            out += range.max ? std::to_string(*range.max) : std::string("inf");
        }
    }
    return out;
}

namespace {

Window intersect(const Window& a, const Window& b) {
    return {std::max(a.x_min, b.x_min), std::min(a.x_max, b.x_max), std::max(a.y_min, b.y_min),
            std::min(a.y_max, b.y_max)};
}

void require_comparable(const ChartMap& m) {
    if (!m.source || !m.target) throw error("mismatched-charts", "chart map needs both charts");
    if (m.source->group->name() != m.target->group->name() || !(m.source->v == m.target->v))
        throw error("mismatched-charts", "charts disagree on group or V");
    auto problems = validate_chart_map(m);
    if (!problems.empty())
        throw error("mismatched-charts", "invalid chart map: " + problems.front().message);
}

/// Kernel of a page-group map, as a lattice in the source's live coordinates
/// (always containing the source relation lattice).
Mat kernel_lattice(const Mat& matrix, const PageCellState& tgt) {
    return preimage_lattice(matrix, tgt.live_relations());
}

/// Does every class supported by `outer` (i.e. outside its kernel) admit a
/// preimage under `cover`?  Checked as: cover image + ker(outer) + relations
/// spans everything.
bool support_is_covered(const Mat& outer, const PageCellState& outer_target,
                        const PageCellState& cell, const Mat& cover) {
    Mat gens = Mat::hcat(Mat::hcat(cover, kernel_lattice(outer, outer_target)),
                         cell.live_relations());
    return solve_columns(gens, Mat::identity(int(cell.live.size()))).has_value();
}

struct SyncedTurners {
    PageTurner source;
    PageTurner target;

    SyncedTurners(const Chart& s, const Chart& t) : source(s), target(t) {}
};

} // namespace

IsomReport check_isom_on_line(const ChartMap& m, const Line& line, Int r_max) {
    return check_isom_on_boundary(m, PiecewiseBoundary::single(line), r_max);
}

IsomReport check_isom_on_boundary(const ChartMap& m, const PiecewiseBoundary& boundary,
                                  Int r_max) {
    require_comparable(m);
    if (r_max < 2) throw error("bad-argument", "r_max must be at least 2");

    IsomReport report;
    report.boundary = boundary;
    report.r_max = r_max;

    const Window window = intersect(m.source->window, m.target->window);
    using Pos = PiecewiseBoundary::Pos;

    // Condition 1: iso above the boundary, surjection on it, on the page-2
    // groups.
    SyncedTurners turners(*m.source, *m.target);
    {
        std::set<CellKey> keys;
        for (const auto& [k, g] : m.source->cells) {
            (void)g;
            keys.insert(k);
        }
        for (const auto& [k, g] : m.target->cells) {
            (void)g;
            keys.insert(k);
        }
        for (const auto& key : keys) {
            if (!window.contains(key)) continue;
            Pos pos = boundary.classify(key.x, key.y);
            if (pos != Pos::above && pos != Pos::on) continue;
            const PageCellState& src = turners.source.state(key);
            const PageCellState& tgt = turners.target.state(key);
            Mat matrix = m.matrix_at(key);
            bool surjective = map_is_surjective(matrix, tgt);
            if (!surjective) {
                report.condition1.pass = false;
                report.condition1.witnesses.push_back({2, key, "not surjective"});
                continue;
            }
            if (pos == Pos::above && !map_is_injective(matrix, src, tgt)) {
                report.condition1.pass = false;
                report.condition1.witnesses.push_back({2, key, "surjective but not injective"});
            }
        }
    }

    // Conditions 2 and 3, page by page, through induced page maps.
    for (Int r = 2; r <= r_max; ++r) {
        struct Arrow {
            CellKey source, target;
            const Differential* in_src = nullptr;
            const Differential* in_tgt = nullptr;
        };
        std::vector<Arrow> arrows;
        auto note = [&](const Differential* d, bool from_source) {
            Pos pos = boundary.classify(d->source.x, d->source.y);
            if (pos != Pos::above && pos != Pos::on) return;
            if (!window.contains(d->source) || !window.contains(d->target)) return;
            for (auto& a : arrows)
                if (a.source == d->source && a.target == d->target) {
                    (from_source ? a.in_src : a.in_tgt) = d;
                    return;
                }
            Arrow a;
            a.source = d->source;
            a.target = d->target;
            (from_source ? a.in_src : a.in_tgt) = d;
            arrows.push_back(std::move(a));
        };
        for (const Differential* d : turners.source.chart().differentials_on_page(r))
            note(d, true);
        for (const Differential* d : turners.target.chart().differentials_on_page(r))
            note(d, false);

        for (const auto& arrow : arrows) {
            const PageCellState& s_at = turners.source.state(arrow.source);
            const PageCellState& s_to = turners.source.state(arrow.target);
            const PageCellState& t_at = turners.target.state(arrow.source);
            const PageCellState& t_to = turners.target.state(arrow.target);

            auto phi_at = induced_page_map(s_at, t_at, m.matrix_at(arrow.source));
            auto phi_to = induced_page_map(s_to, t_to, m.matrix_at(arrow.target));
            if (!phi_at || !phi_to) {
                report.diagnostics.push_back(
                    {"induced-map-undefined",
                     "page " + std::to_string(r) + ": map does not descend at " +
                         (phi_at ? arrow.target : arrow.source).to_string()});
                report.condition2.pass = false;
                report.condition2.witnesses.push_back(
                    {r, arrow.source, "induced page map undefined"});
                continue;
            }

            Mat d_src = arrow.in_src ? arrow.in_src->matrix
                                     : Mat(int(s_to.live.size()), int(s_at.live.size()));
            Mat d_tgt = arrow.in_tgt ? arrow.in_tgt->matrix
                                     : Mat(int(t_to.live.size()), int(t_at.live.size()));

            Mat via_source = reduce_mod_orders(*phi_to * d_src, t_to);
            Mat via_target = reduce_mod_orders(d_tgt * *phi_at, t_to);
            if (!map_is_zero_class(via_source - via_target, t_to)) {
                bool src_nonzero = arrow.in_src && !map_is_zero_class(d_src, s_to);
                bool tgt_nonzero = arrow.in_tgt && !map_is_zero_class(d_tgt, t_to);
                if (src_nonzero && !tgt_nonzero) {
                    report.condition2.pass = false;
                    report.condition2.witnesses.push_back(
                        {r, arrow.source,
                         "nonzero d_" + std::to_string(r) + " has no counterpart in the target"});
                } else if (tgt_nonzero && !src_nonzero) {
                    report.condition3.pass = false;
                    report.condition3.witnesses.push_back(
                        {r, arrow.source,
                         "nonzero d_" + std::to_string(r) + " has no counterpart in the source"});
                } else {
                    report.diagnostics.push_back(
                        {"naturality-failure", "page " + std::to_string(r) +
                                                   ": map does not commute with d_" +
                                                   std::to_string(r) + " from " +
                                                   arrow.source.to_string()});
                    report.condition2.pass = false;
                    report.condition2.witnesses.push_back({r, arrow.source, "naturality failure"});
                }
                continue;
            }

            // Condition 2: classes supporting a nonzero source differential
            // must keep supporting one after mapping.
            if (arrow.in_src && !map_is_zero_class(d_src, s_to)) {
                Mat ker_d = kernel_lattice(d_src, s_to);
                Mat ker_phi_d = kernel_lattice(via_source, t_to);
                if (!lattice_subset(ker_phi_d, ker_d)) {
                    report.condition2.pass = false;
                    report.condition2.witnesses.push_back(
                        {r, arrow.source, "a nonzero d_" + std::to_string(r) +
                                              " is sent to zero by the map"});
                }
            }

            // Condition 3: classes supporting a nonzero target differential
            // must come from the source.
            if (arrow.in_tgt && !map_is_zero_class(d_tgt, t_to)) {
                if (!support_is_covered(d_tgt, t_to, t_at, *phi_at)) {
                    report.condition3.pass = false;
                    report.condition3.witnesses.push_back(
                        {r, arrow.source, "a nonzero d_" + std::to_string(r) +
                                              " in the target has no preimage differential"});
                }
            }
        }

        if (r < r_max) {
            turners.source.advance();
            turners.target.advance();
        }
    }
    return report;
}

PropagationResult propagate_differentials(const ChartMap& m, const Line& line, Int r_max) {
    require_comparable(m);
    if (r_max < 2) throw error("bad-argument", "r_max must be at least 2");

    PropagationResult result{false, IsomReport{}, *m.source, {}, 0};
    using Pos = PiecewiseBoundary::Pos;
    PiecewiseBoundary boundary = PiecewiseBoundary::single(line);

    // Gate on condition 1 before touching anything.
    {
        IsomReport page2 = check_isom_on_boundary(m, boundary, 2);
        // Only condition 1 matters for the gate; later pages are rebuilt below.
        result.condition1_report = page2;
        if (!page2.condition1.pass) return result;
    }
    result.condition1_ok = true;

    const Window window = intersect(m.source->window, m.target->window);
    PageTurner source_turner(*m.source);
    PageTurner target_turner(*m.target);

    for (Int r = 2; r <= r_max; ++r) {
        for (const Differential* d : target_turner.chart().differentials_on_page(r)) {
            Pos pos = boundary.classify(d->source.x, d->source.y);
            if (pos != Pos::above && pos != Pos::on) continue;
            if (!window.contains(d->source) || !window.contains(d->target)) continue;

            const PageCellState& t_at = target_turner.state(d->source);
            const PageCellState& t_to = target_turner.state(d->target);
            if (map_is_zero_class(d->matrix, t_to)) continue; // nothing to recover

            if (boundary.classify(d->source.x, d->source.y, r) != Pos::above) {
                // Between the line and its r-fold shift only surjectivity is
                // certified; a surjection cannot pin a unique preimage.
                result.candidates.push_back(
                    {r, d->source, d->target,
                     "source cell lies in the ambiguity band between the line and its " +
                         std::to_string(r) + "-fold shift"});
                continue;
            }

            if (source_turner.chart().differential(r, d->source, d->target))
                continue; // already present; transport is idempotent

            const PageCellState& s_at = source_turner.state(d->source);
            const PageCellState& s_to = source_turner.state(d->target);

            auto phi_at = induced_page_map(s_at, t_at, m.matrix_at(d->source));
            auto phi_to = induced_page_map(s_to, t_to, m.matrix_at(d->target));
            if (!phi_at || !phi_to)
                throw error("non-invertible-page-map",
                            "page " + std::to_string(r) + ": map does not descend at " +
                                d->source.to_string());
            if (!map_is_surjective(*phi_at, t_at) || !map_is_injective(*phi_at, s_at, t_at) ||
                !map_is_surjective(*phi_to, t_to) || !map_is_injective(*phi_to, s_to, t_to))
                throw error("non-invertible-page-map",
                            "page " + std::to_string(r) + ": page map is not a bijection at " +
                                d->source.to_string() + " despite the shifted-line certificate");

            auto inverse = invert_iso(*phi_to, s_to, t_to);
            if (!inverse)
                throw error("non-invertible-page-map",
                            "page " + std::to_string(r) + ": failed to invert the page map at " +
                                d->target.to_string());

            Mat pulled = reduce_mod_orders(*inverse * (d->matrix * *phi_at), s_to);
            source_turner.add_differential({r, d->source, d->target, std::move(pulled)});
            ++result.installed;
        }

        if (r < r_max) {
            source_turner.advance();
            target_turner.advance();
        }
    }

    result.chart = source_turner.chart();
    return result;
}

bool TowerReport::pass() const {
    if (!diagnostics.empty()) return false;
    for (const auto& s : strata)
        if (!s.isom.pass()) return false;
    return true;
}

TowerReport tower_assemble(const GroupPtr& g, const VirtualRep& v,
                           const std::shared_ptr<const Chart>& base,
                           const std::vector<std::pair<Int, std::shared_ptr<const Chart>>>& localized,
                           const std::vector<ChartMap>& chain, Int r_max) {
    TowerReport report;

    auto expected = order_family_chain(g);
    if (localized.size() != expected.size() || chain.size() != expected.size())
        throw error("chain-mismatch",
                    "expected " + std::to_string(expected.size()) + " localized charts for " +
                        g->name() + ", got " + std::to_string(localized.size()) + " charts and " +
                        std::to_string(chain.size()) + " maps");
    for (size_t i = 0; i < expected.size(); ++i)
        if (localized[i].first != expected[i].first)
            throw error("chain-mismatch", "stratum order " + std::to_string(localized[i].first) +
                                              " does not match the group's jump order " +
                                              std::to_string(expected[i].first));
    for (size_t i = 0; i < chain.size(); ++i) {
        const Chart* want_source = i == 0 ? base.get() : localized[i - 1].second.get();
        if (chain[i].source.get() != want_source || chain[i].target.get() != localized[i].second.get())
            throw error("chain-mismatch", "map " + std::to_string(i) +
                                              " does not link consecutive charts of the tower");
    }

    Int p = 0, n = 0;
    bool cyclic = is_cyclic_p_group_shape(*g, &p, &n);

    ChartMap composite;
    for (size_t i = 0; i < chain.size(); ++i) {
        composite = i == 0 ? chain[0] : compose_chart_maps(composite, chain[i]);

        const Int h = localized[i].first;
        StratumReport stratum;
        stratum.h = h;
        stratum.line = stratum_line(g, h, v);
        Family fam = order_family(g, h);
        for (const auto& id : fam.members()) stratum.family_members.push_back(id);
        stratum.chart_name = localized[i].second->name;

        Int tau = stratum.line.intercept;
        PiecewiseBoundary boundary = PiecewiseBoundary::split(stratum.line, Line{0, tau});
        stratum.isom = check_isom_on_boundary(composite, boundary, r_max);

        if (i + 1 < expected.size()) {
            stratum.governs = "differentials originating on or above its line, up to the slope-" +
                              std::to_string(expected[i + 1].first - 1) + " stratum";
        } else {
            stratum.governs = "the top stratum (localization at the full family is trivial)";
        }

        if (cyclic && n > 0) {
            if (h < g->order()) {
                // F_{<= p^i} localizes at the subgroup of order p^(i+1):
                // the chart computes its geometric fixed points with the
                // residual quotient action.
                Int subgroup_order = checked_mul(h, p);
                std::string sub = "C" + std::to_string(subgroup_order);
                stratum.fixed_point_label = "pi_star Phi^" + sub + "(X)";
                stratum.residual_action = g->name() + "/" + sub;
                // lambda index n - k for the subgroup C_{p^k}.
                Int lambda_index = n;
                for (Int q = subgroup_order; q > 1; q /= p) --lambda_index;
                if (p == 2 && subgroup_order == g->order())
                    stratum.euler_localization = "a_sigma^-1";
                else
                    stratum.euler_localization =
                        "a_lambda" + std::to_string(lambda_index) + "^-1";
            } else {
                stratum.fixed_point_label = "*";
            }
        }
        report.strata.push_back(std::move(stratum));
    }
    return report;
}

Diagnostics transfer_kernel_check(const ChartMap& m, const SubgroupClass& h, const Line& line) {
    require_comparable(m);
    if (!h.normal)
        throw error("non-normal", "transfer kernel statement requires a normal subgroup");
    const GroupPtr& g = m.source->group;
    if (!g->has_class(h.id)) throw error("unknown-class", "no class " + h.id);

    Diagnostics out;
    const Window window = intersect(m.source->window, m.target->window);

    // Transfers available per bidegree, as an adjacency list up the lattice.
    struct Edge {
        std::string to;
        const Mat* matrix;
    };
    auto transfers_at = [&](Int x, Int y) {
        std::map<std::string, std::vector<Edge>> edges;
        for (const auto& lm : m.source->level_maps)
            if (lm.kind == LevelMapKind::transfer && lm.x == x && lm.y == y)
                edges[lm.from_level].push_back({lm.to_level, &lm.matrix});
        return edges;
    };

    // Compose transfers along any chain of available adjacent transfers.
    auto composed_transfer = [&](Int x, Int y, const std::string& to_level) -> std::optional<Mat> {
        const FgaGroup* start = m.source->cell({x, y, h.id});
        Mat acc = Mat::identity(start ? int(start->generator_count()) : 0);
        if (h.id == to_level) return acc;
        auto edges = transfers_at(x, y);
        struct Item {
            std::string level;
            Mat matrix;
        };
        std::vector<Item> frontier{{h.id, acc}};
        std::set<std::string> seen{h.id};
        while (!frontier.empty()) {
            Item item = std::move(frontier.back());
            frontier.pop_back();
            for (const auto& edge : edges[item.level]) {
                if (seen.count(edge.to)) continue;
                Mat next = *edge.matrix * item.matrix;
                if (edge.to == to_level) return next;
                seen.insert(edge.to);
                frontier.push_back({edge.to, std::move(next)});
            }
        }
        return std::nullopt;
    };

    std::set<std::pair<Int, Int>> bidegrees;
    for (const auto& [key, cell] : m.source->cells) {
        (void)cell;
        if (!window.contains(key)) continue;
        PiecewiseBoundary boundary = PiecewiseBoundary::single(line);
        if (boundary.classify(key.x, key.y) == PiecewiseBoundary::Pos::on)
            bidegrees.insert({key.x, key.y});
    }

    PageTurner source_turner(*m.source);
    PageTurner target_turner(*m.target);

    for (const auto& [x, y] : bidegrees) {
        for (const auto& level : g->classes()) {
            CellKey key{x, y, level.id};
            const FgaGroup* cell = m.source->cell(key);
            if (!cell || cell->is_zero()) continue;

            const PageCellState& src = source_turner.state(key);
            const PageCellState& tgt = target_turner.state(key);
            Mat kernel = kernel_lattice(m.matrix_at(key), tgt);

            if (!g->is_subconjugate(h.id, level.id)) {
                // Away from the support of the localization the map is an
                // isomorphism on this level; its kernel must vanish.
                if (!lattice_subset(kernel, src.live_relations()))
                    out.push_back({"kernel-not-zero",
                                   "cell " + key.to_string() + ": kernel is nonzero although " +
                                       h.id + " is not subconjugate to " + level.id});
                continue;
            }

            auto transfer = composed_transfer(x, y, level.id);
            if (!transfer) {
                out.push_back({"missing-level-maps",
                               "cell " + key.to_string() + ": no chain of transfers from level " +
                                   h.id});
                continue;
            }
            Mat image = Mat::hcat(*transfer, src.live_relations());
            if (!lattice_equal(kernel, image))
                out.push_back({"transfer-kernel-mismatch",
                               "cell " + key.to_string() +
                                   ": kernel of the map differs from the transfer image from level " +
                                   h.id});
        }
    }
    return out;
}

} // namespace sst
