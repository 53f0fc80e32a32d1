#include "sst/chart.hpp"

#include <algorithm>

#include "sst/geometry.hpp"

namespace sst {

std::string CellKey::to_string() const {
    return "(" + std::to_string(x) + ", " + std::to_string(y) + ", " + level + ")";
}

const FgaGroup* Chart::cell(const CellKey& k) const {
    auto it = cells.find(k);
    return it == cells.end() ? nullptr : &it->second;
}

const Differential* Chart::differential(Int r, const CellKey& source, const CellKey& target) const {
    for (const auto& d : differentials)
        if (d.r == r && d.source == source && d.target == target) return &d;
    return nullptr;
}

std::vector<const Differential*> Chart::differentials_on_page(Int r) const {
    std::vector<const Differential*> out;
    for (const auto& d : differentials)
        if (d.r == r) out.push_back(&d);
    return out;
}

Int default_r_max(const Chart& c) { return c.window.height() + 2; }

namespace {

bool column_zero_in_fga(const std::vector<Int>& col, const FgaGroup& g) {
    for (Int i = 0; i < Int(col.size()); ++i) {
        Int order = g.order_of(i);
        if (order == 0 ? col[size_t(i)] != 0 : col[size_t(i)] % order != 0) return false;
    }
    return true;
}

// Does the matrix define a homomorphism between the two presented groups?
bool torsion_compatible(const Mat& m, const FgaGroup& src, const FgaGroup& tgt) {
    for (Int j = 0; j < src.generator_count(); ++j) {
        Int d = src.order_of(j);
        if (d == 0) continue;
        std::vector<Int> scaled(size_t(m.rows()));
        for (int i = 0; i < m.rows(); ++i) scaled[size_t(i)] = checked_mul(d, m.at(i, int(j)));
        if (!column_zero_in_fga(scaled, tgt)) return false;
    }
    return true;
}

} // namespace

Diagnostics validate_chart(const Chart& c) {
    Diagnostics out;
    if (!c.group) {
        out.push_back({"missing-group", "chart has no group"});
        return out;
    }
    if (c.v.table()->group()->name() != c.group->name())
        out.push_back({"group-mismatch", "chart group and V's table group differ"});
    if (c.window.x_min > c.window.x_max || c.window.y_min > c.window.y_max)
        out.push_back({"bad-window", "empty window"});

    for (const auto& [key, fga] : c.cells) {
        if (!c.group->has_class(key.level))
            out.push_back({"unknown-level", "cell " + key.to_string() + " has unknown level"});
        if (!c.window.contains(key))
            out.push_back({"cell-outside-window", "cell " + key.to_string() + " outside window"});
        for (auto& d : validate_fga(fga))
            out.push_back({d.code, "cell " + key.to_string() + ": " + d.message});
    }

    static const FgaGroup zero_group{};
    auto group_at = [&](const CellKey& k) -> const FgaGroup& {
        const FgaGroup* g = c.cell(k);
        return g ? *g : zero_group;
    };

    for (size_t a = 0; a < c.differentials.size(); ++a) {
        const auto& d = c.differentials[a];
        std::string tag = "d_" + std::to_string(d.r) + " from " + d.source.to_string();
        if (d.r < 2) out.push_back({"bad-page", tag + ": page below 2"});
        if (d.target != Chart::derived_target(d))
            out.push_back({"bad-bidegree",
                           tag + ": target " + d.target.to_string() + " is not (x-1, y+r)"});
        if (!c.group->has_class(d.target.level))
            out.push_back({"unknown-level", tag + ": unknown target level"});
        if (!c.window.contains(d.source))
            out.push_back({"cell-outside-window", tag + ": source outside window"});
        for (size_t b = a + 1; b < c.differentials.size(); ++b)
            if (c.differentials[b].r == d.r && c.differentials[b].source == d.source &&
                c.differentials[b].target == d.target)
                out.push_back({"duplicate-differential", tag + ": repeated record"});

        if (d.r == 2 && c.window.contains(d.target)) {
            const FgaGroup& src = group_at(d.source);
            const FgaGroup& tgt = group_at(d.target);
            if (d.matrix.cols() != src.generator_count() || d.matrix.rows() != tgt.generator_count())
                out.push_back({"matrix-shape", tag + ": matrix is " + std::to_string(d.matrix.rows()) +
                                                   "x" + std::to_string(d.matrix.cols()) +
                                                   ", cells need " +
                                                   std::to_string(tgt.generator_count()) + "x" +
                                                   std::to_string(src.generator_count())});
            else if (!torsion_compatible(d.matrix, src, tgt))
                out.push_back({"torsion-incompatible",
                               tag + ": matrix does not respect torsion orders"});
        }
    }

    // d_2 o d_2 = 0 wherever both stages are visible.
    for (const auto& d1 : c.differentials) {
        if (d1.r != 2 || !c.window.contains(d1.target)) continue;
        for (const auto& d2 : c.differentials) {
            if (d2.r != 2 || d2.source != d1.target || !c.window.contains(d2.target)) continue;
            const FgaGroup& a = group_at(d1.source);
            const FgaGroup& mid = group_at(d1.target);
            const FgaGroup& b = group_at(d2.target);
            if (d1.matrix.cols() != a.generator_count() || d1.matrix.rows() != mid.generator_count() ||
                d2.matrix.cols() != mid.generator_count() || d2.matrix.rows() != b.generator_count())
                continue; // shape problems already reported
            Mat comp = d2.matrix * d1.matrix;
            for (int j = 0; j < comp.cols(); ++j)
                if (!column_zero_in_fga(comp.col(j), b)) {
                    out.push_back({"d-squared", "d_2 o d_2 nonzero from " + d1.source.to_string() +
                                                    " through " + d1.target.to_string()});
                    break;
                }
        }
    }

    for (const auto& lm : c.level_maps) {
        std::string tag = std::string(lm.kind == LevelMapKind::transfer ? "transfer" : "restriction") +
                          " at (" + std::to_string(lm.x) + ", " + std::to_string(lm.y) + ") " +
                          lm.from_level + " -> " + lm.to_level;
        if (!c.group->has_class(lm.from_level) || !c.group->has_class(lm.to_level)) {
            out.push_back({"unknown-level", tag + ": unknown level"});
            continue;
        }
        const std::string& lower = lm.kind == LevelMapKind::transfer ? lm.from_level : lm.to_level;
        const std::string& upper = lm.kind == LevelMapKind::transfer ? lm.to_level : lm.from_level;
        if (lower == upper || !c.group->is_subconjugate(lower, upper))
            out.push_back({"level-map-direction",
                           tag + ": transfer must go up the lattice, restriction down"});
        else {
            bool covered = false;
            for (const auto& mid : c.group->classes())
                if (mid.id != lower && mid.id != upper && c.group->is_subconjugate(lower, mid.id) &&
                    c.group->is_subconjugate(mid.id, upper))
                    covered = true;
            if (covered)
                out.push_back({"level-map-not-adjacent", tag + ": levels are not adjacent"});
        }
        const FgaGroup& src = group_at({lm.x, lm.y, lm.from_level});
        const FgaGroup& tgt = group_at({lm.x, lm.y, lm.to_level});
        if (lm.matrix.cols() != src.generator_count() || lm.matrix.rows() != tgt.generator_count())
            out.push_back({"matrix-shape", tag + ": matrix shape mismatch"});
        else if (!torsion_compatible(lm.matrix, src, tgt))
            out.push_back({"torsion-incompatible", tag + ": matrix does not respect torsion"});
    }
    return out;
}

Diagnostics cone_containment_warnings(const Chart& c) {
    Diagnostics out;
    Region cone = positive_cone(c.group, c.v);
    for (const auto& [key, fga] : c.cells)
        if (!fga.is_zero() && !contains(cone, key.x, key.y))
            out.push_back({"outside-positive-cone", "cell " + key.to_string() + " lies outside the positive cone"});
    for (const auto& d : c.differentials)
        if (contains(cone, d.source.x, d.source.y) && !contains(cone, d.target.x, d.target.y))
            out.push_back({"differential-exits-cone",
                           "d_" + std::to_string(d.r) + " from " + d.source.to_string() +
                               " leaves the positive cone"});
    return out;
}

Mat PageCellState::live_relations() const {
    int torsion_count = 0;
    for (Int d : live_orders)
        if (d >= 2) ++torsion_count;
    Mat rel(int(live.size()), torsion_count);
    int col = 0;
    for (size_t i = 0; i < live.size(); ++i)
        if (live_orders[i] >= 2) rel.at(int(i), col++) = live_orders[i];
    return rel;
}

const PageCell* PageView::cell(const CellKey& k) const {
    auto it = cells.find(k);
    return it == cells.end() ? nullptr : &it->second;
}

namespace {

PageCellState initial_state(const FgaGroup& fga) {
    PageCellState st;
    const int n = int(fga.generator_count());
    st.l_basis = Mat::identity(n);
    st.m_gens = Mat(n, int(fga.torsion.size()));
    for (size_t t = 0; t < fga.torsion.size(); ++t)
        st.m_gens.at(int(fga.free_rank + Int(t)), int(t)) = fga.torsion[t];
    st.full_basis = Mat::identity(n);
    st.full_orders.assign(size_t(n), 0);
    for (size_t t = 0; t < fga.torsion.size(); ++t)
        st.full_orders[size_t(fga.free_rank) + t] = fga.torsion[t];
    st.live.resize(size_t(n));
    for (int i = 0; i < n; ++i) st.live[size_t(i)] = i;
    st.live_orders = st.full_orders;
    st.gen_vecs = Mat::identity(n);
    st.fga = fga;
    return st;
}

} // namespace

PageTurner::PageTurner(Chart chart) : chart_(std::move(chart)) {
    for (const auto& [key, fga] : chart_.cells) states_[key] = initial_state(fga);
    publish_view();
}

void PageTurner::publish_view() {
    PageView view;
    view.r = page_;
    for (const auto& [key, st] : states_)
        view.cells[key] = PageCell{st.fga, st.gen_vecs, st.indeterminate};
    views_.push_back(std::move(view));
}

const PageView& PageTurner::view(Int r) const {
    if (r < 2 || r > page_) throw error("page-not-computed", "page " + std::to_string(r));
    return views_[size_t(r - 2)];
}

const PageCellState& PageTurner::state(const CellKey& k) const {
    auto it = states_.find(k);
    return it == states_.end() ? zero_state_ : it->second;
}

void PageTurner::add_differential(Differential d) {
    if (d.r < page_)
        throw error("past-page", "cannot install a d_" + std::to_string(d.r) +
                                     " while on page " + std::to_string(page_));
    if (d.target != Chart::derived_target(d))
        throw error("bad-bidegree", "installed differential target must be (x-1, y+r)");
    chart_.differentials.push_back(std::move(d));
}

void PageTurner::advance() {
    const Int r = page_;

    struct Lifted {
        const Differential* d;
        Mat image;     // n_tgt x live_src: images of live source generators
        Mat full_lift; // n_tgt x l_src: extended by zero columns at dead slots
        bool acts = false;
    };
    std::vector<Lifted> lifted;

    for (const Differential* d : chart_.differentials_on_page(r)) {
        const PageCellState& src = state(d->source);
        if (!chart_.window.contains(d->target)) {
            // Target fell off the window: survivors at the source can no
            // longer be certified.
            auto it = states_.find(d->source);
            if (it != states_.end() && !src.fga.is_zero()) {
                it->second.indeterminate = true;
                truncations_.emplace_back(r, d->source);
            }
            continue;
        }
        const PageCellState& tgt = state(d->target);
        if (d->matrix.cols() != int(src.live.size()) || d->matrix.rows() != int(tgt.live.size()))
            throw error("dead-class",
                        "d_" + std::to_string(r) + " from " + d->source.to_string() + ": matrix is " +
                            std::to_string(d->matrix.rows()) + "x" + std::to_string(d->matrix.cols()) +
                            " but page-" + std::to_string(r) + " groups have " +
                            std::to_string(tgt.live.size()) + "x" + std::to_string(src.live.size()) +
                            " generators");

        Lifted lf;
        lf.d = d;
        lf.image = tgt.gen_vecs * d->matrix;
        for (size_t j = 0; j < src.live.size(); ++j) {
            Int order = src.live_orders[j];
            if (order == 0) continue;
            std::vector<Int> scaled = lf.image.col(int(j));
            for (auto& x : scaled) x = checked_mul(x, order);
            if (!lattice_contains(tgt.m_gens, scaled))
                throw error("torsion-incompatible",
                            "d_" + std::to_string(r) + " from " + d->source.to_string() +
                                " is not defined on the torsion class " + std::to_string(j));
        }
        lf.full_lift = Mat(lf.image.rows(), src.full_basis.cols());
        for (size_t j = 0; j < src.live.size(); ++j)
            for (int i = 0; i < lf.image.rows(); ++i)
                lf.full_lift.at(i, src.live[j]) = lf.image.at(i, int(j));
        lf.acts = true;
        lifted.push_back(std::move(lf));
    }

    // d_r o d_r must vanish wherever both stages are visible.
    for (const auto& first : lifted)
        for (const auto& second : lifted) {
            if (!first.acts || !second.acts) continue;
            if (second.d->source != first.d->target) continue;
            const PageCellState& final_tgt = state(second.d->target);
            Mat comp = reduce_mod_orders(second.d->matrix * first.d->matrix, final_tgt);
            if (!map_is_zero_class(comp, final_tgt))
                throw error("d-squared", "d_" + std::to_string(r) + " composes nonzero through " +
                                             first.d->target.to_string());
        }

    std::map<CellKey, PageCellState> next;
    for (auto& [key, st] : states_) {
        // Kernel of all outgoing differentials, in full-basis coordinates.
        Mat f_stack(0, st.full_basis.cols());
        Mat m_stack(0, 0);
        for (const auto& lf : lifted) {
            if (!lf.acts || lf.d->source != key) continue;
            const PageCellState& tgt = state(lf.d->target);
            Mat grown_m(f_stack.rows() + lf.full_lift.rows(), m_stack.cols() + tgt.m_gens.cols());
            for (int i = 0; i < m_stack.rows(); ++i)
                for (int j = 0; j < m_stack.cols(); ++j) grown_m.at(i, j) = m_stack.at(i, j);
            for (int i = 0; i < tgt.m_gens.rows(); ++i)
                for (int j = 0; j < tgt.m_gens.cols(); ++j)
                    grown_m.at(f_stack.rows() + i, m_stack.cols() + j) = tgt.m_gens.at(i, j);
            m_stack = std::move(grown_m);
            f_stack = Mat::vcat(f_stack, lf.full_lift);
        }

        Mat l_new;
        if (f_stack.rows() == 0) {
            l_new = st.full_basis;
        } else {
            Mat kernel_coords = preimage_lattice(f_stack, m_stack);
            l_new = st.full_basis * kernel_coords;
        }

        Mat m_new = st.m_gens;
        for (const auto& lf : lifted)
            if (lf.acts && lf.d->target == key) m_new = Mat::hcat(m_new, lf.image);

        QuotientPresentation q = quotient_presentation(l_new, m_new);

        PageCellState ns;
        ns.l_basis = l_new;
        ns.m_gens = std::move(m_new);
        ns.full_basis = q.basis;
        ns.full_orders = q.orders;
        ns.indeterminate = st.indeterminate;

        for (size_t i = 0; i < q.orders.size(); ++i)
            if (q.orders[i] == 0) ns.live.push_back(int(i));
        for (size_t i = 0; i < q.orders.size(); ++i)
            if (q.orders[i] >= 2) ns.live.push_back(int(i));
        ns.gen_vecs = Mat(q.basis.rows(), int(ns.live.size()));
        for (size_t j = 0; j < ns.live.size(); ++j) {
            ns.live_orders.push_back(q.orders[size_t(ns.live[j])]);
            for (int i = 0; i < q.basis.rows(); ++i)
                ns.gen_vecs.at(i, int(j)) = q.basis.at(i, ns.live[j]);
        }

        const FgaGroup& e2 = chart_.cells.at(key);
        ns.fga.free_rank = Int(std::count(ns.live_orders.begin(), ns.live_orders.end(), 0));
        for (Int d : ns.live_orders)
            if (d >= 2) ns.fga.torsion.push_back(d);
        for (size_t j = 0; j < ns.live.size(); ++j) {
            // Reuse the declared label when the survivor is (up to sign) a
            // declared generator.
            std::vector<Int> colv = ns.gen_vecs.col(int(j));
            int unit = -1;
            bool is_unit = true;
            for (size_t i = 0; i < colv.size(); ++i) {
                if (colv[i] == 0) continue;
                if ((colv[i] != 1 && colv[i] != -1) || unit >= 0) {
                    is_unit = false;
                    break;
                }
                unit = int(i);
            }
            if (is_unit && unit >= 0)
                ns.fga.labels.push_back(e2.labels[size_t(unit)]);
            else
                ns.fga.labels.push_back("s" + std::to_string(r + 1) + "g" + std::to_string(j));
        }
        next[key] = std::move(ns);
    }

    states_ = std::move(next);
    ++page_;
    publish_view();
}

void PageTurner::run_to(Int r_max) {
    if (r_max < 2) throw error("bad-argument", "pages start at 2");
    while (page_ < r_max) advance();
}

PageView turn_page(const Chart& c, Int r) {
    if (r < 2) throw error("bad-argument", "pages start at 2");
    PageTurner t(c);
    t.run_to(r + 1);
    return t.view(r + 1);
}

std::vector<PageView> run_to_page(const Chart& c, Int r_max) {
    PageTurner t(c);
    t.run_to(r_max);
    return t.views();
}

Diagnostics euler_check(const Chart& c, std::optional<Int> r_max_opt) {
    Diagnostics out;
    Int r_max = r_max_opt.value_or(default_r_max(c));
    PageTurner t(c);
    t.run_to(r_max);

    bool level_preserving = true;
    for (const auto& d : c.differentials)
        if (d.source.level != d.target.level) level_preserving = false;

    auto bucket_of = [&](const CellKey& k) -> std::string {
        return level_preserving ? k.level : std::string("all-levels");
    };

    std::vector<std::map<std::string, Int>> sums;
    for (Int r = 2; r <= r_max; ++r) {
        std::map<std::string, Int> sum;
        for (const auto& [key, cell] : t.view(r).cells) {
            Int sign = (key.x % 2 == 0) ? 1 : -1;
            sum[bucket_of(key)] =
                checked_add(sum.count(bucket_of(key)) ? sum[bucket_of(key)] : 0,
                            checked_mul(sign, cell.group.free_rank));
        }
        sums.push_back(std::move(sum));
    }

    for (Int r = 2; r < r_max; ++r) {
        bool truncated_here = false;
        for (const auto& [page, key] : t.truncations())
            if (page == r) truncated_here = true;
        if (truncated_here) continue;
        const auto& before = sums[size_t(r - 2)];
        const auto& after = sums[size_t(r - 1)];
        for (const auto& [bucket, value] : before) {
            Int next_value = after.count(bucket) ? after.at(bucket) : 0;
            if (value != next_value)
                out.push_back({"euler-violation",
                               "level " + bucket + ": alternating rank sum moved from " +
                                   std::to_string(value) + " to " + std::to_string(next_value) +
                                   " turning page " + std::to_string(r)});
        }
    }
    return out;
}

bool column_is_zero_class(const std::vector<Int>& column, const PageCellState& tgt) {
    for (size_t i = 0; i < column.size(); ++i) {
        Int order = tgt.live_orders[i];
        if (order == 0 ? column[i] != 0 : column[i] % order != 0) return false;
    }
    return true;
}

bool map_is_zero_class(const Mat& m, const PageCellState& tgt) {
    for (int j = 0; j < m.cols(); ++j)
        if (!column_is_zero_class(m.col(j), tgt)) return false;
    return true;
}

Mat reduce_mod_orders(Mat m, const PageCellState& tgt) {
    for (int i = 0; i < m.rows(); ++i) {
        Int order = tgt.live_orders[size_t(i)];
        if (order < 2) continue;
        for (int j = 0; j < m.cols(); ++j) {
            Int v = m.at(i, j) % order;
            m.at(i, j) = v < 0 ? v + order : v;
        }
    }
    return m;
}

bool map_is_surjective(const Mat& m, const PageCellState& tgt) {
    Mat gens = Mat::hcat(m, tgt.live_relations());
    return solve_columns(gens, Mat::identity(int(tgt.live.size()))).has_value();
}

bool map_is_injective(const Mat& m, const PageCellState& src, const PageCellState& tgt) {
    Mat kernel = preimage_lattice(m, tgt.live_relations());
    return lattice_subset(kernel, src.live_relations());
}

std::optional<Mat> induced_page_map(const PageCellState& src, const PageCellState& tgt,
                                    const Mat& e2_matrix) {
    if (e2_matrix.rows() != tgt.e2_rank() || e2_matrix.cols() != src.e2_rank())
        return std::nullopt;
    // Survivors must map to survivors, boundaries to boundaries.
    if (!solve_columns(tgt.full_basis, e2_matrix * src.l_basis)) return std::nullopt;
    if (src.m_gens.cols() > 0 && !lattice_subset(e2_matrix * src.m_gens, tgt.m_gens))
        return std::nullopt;

    auto coords = solve_columns(tgt.full_basis, e2_matrix * src.gen_vecs);
    if (!coords) return std::nullopt;
    Mat result(int(tgt.live.size()), int(src.live.size()));
    for (size_t i = 0; i < tgt.live.size(); ++i)
        for (size_t j = 0; j < src.live.size(); ++j)
            result.at(int(i), int(j)) = coords->at(tgt.live[i], int(j));
    return reduce_mod_orders(std::move(result), tgt);
}

std::optional<Mat> invert_iso(const Mat& m, const PageCellState& src, const PageCellState& tgt) {
    Mat extended = Mat::hcat(m, tgt.live_relations());
    auto solved = solve_columns(extended, Mat::identity(int(tgt.live.size())));
    if (!solved) return std::nullopt;
    Mat inverse = solved->rows_slice(0, int(src.live.size()));
    return reduce_mod_orders(std::move(inverse), src);
}

} // namespace sst
