#include "sst/json_io.hpp"

#include <fstream>

namespace sst {

namespace {

Json envelope(const std::string& type) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["type"] = type;
    return j;
}

void check_version(const Json& j) {
    if (!j.is_object() || !j.contains("format_version"))
        throw error("format-version", "missing format_version");
    if (j["format_version"] != kFormatVersion)
        throw error("format-version", "unsupported format_version");
}

} // namespace

void require_type(const Json& j, const std::string& type) {
    check_version(j);
    if (!j.contains("type") || j["type"] != type)
        throw error("wrong-type", "expected a document of type " + type);
}

Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw error("parse-error", "malformed JSON");
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("io-error", "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json_text(text);
}

Json group_to_json(const GroupDescriptor& g) {
    Json j = envelope("group");
    j["name"] = g.name();
    j["order"] = g.order();
    j["classes"] = Json::array();
    for (const auto& c : g.classes())
        j["classes"].push_back(
            {{"id", c.id}, {"order", c.order}, {"class_size", c.class_size}, {"normal", c.normal}});
    j["subconjugacy"] = Json::array();
    for (const auto& [lo, hi] : g.generating_pairs()) j["subconjugacy"].push_back({lo, hi});
    return j;
}

GroupPtr group_from_json(const Json& j) {
    require_type(j, "group");
    std::vector<SubgroupClass> classes;
    for (const auto& c : j.at("classes"))
        classes.push_back({c.at("id").get<std::string>(), c.at("order").get<Int>(),
                           c.at("class_size").get<Int>(), c.at("normal").get<bool>()});
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : j.at("subconjugacy"))
        pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    return std::make_shared<GroupDescriptor>(j.at("name").get<std::string>(),
                                             j.at("order").get<Int>(), std::move(classes), pairs);
}

Json table_to_json(const IrreducibleTable& t) {
    Json j = envelope("irreducible_table");
    j["group"] = t.group()->name();
    j["irreducibles"] = Json::array();
    for (const auto& w : t.irreducibles()) {
        Json e;
        e["id"] = w.id;
        e["dim"] = w.dim;
        e["fixed_dim"] = Json::object();
        for (const auto& [cls, d] : w.fixed_dim) e["fixed_dim"][cls] = d;
        e["mult_in_regular"] = w.mult_in_regular;
        j["irreducibles"].push_back(std::move(e));
    }
    if (!t.aliases().empty()) {
        j["aliases"] = Json::object();
        for (const auto& [alias, expansion] : t.aliases()) {
            Json e = Json::object();
            for (const auto& [irr, mult] : expansion) e[irr] = mult;
            j["aliases"][alias] = std::move(e);
        }
    }
    return j;
}

TablePtr table_from_json(const Json& j, GroupPtr group) {
    require_type(j, "irreducible_table");
    std::string group_name = j.at("group").get<std::string>();
    if (!group) group = builtin_group(group_name);
    if (!group) throw error("unknown-group", "table references group " + group_name +
                                                 " and no descriptor was supplied");
    if (group->name() != group_name)
        throw error("group-mismatch", "table references " + group_name + " but got " +
                                          group->name());
    std::vector<Irreducible> irrs;
    for (const auto& e : j.at("irreducibles")) {
        Irreducible w;
        w.id = e.at("id").get<std::string>();
        w.dim = e.at("dim").get<Int>();
        for (const auto& [cls, d] : e.at("fixed_dim").items()) w.fixed_dim[cls] = d.get<Int>();
        w.mult_in_regular = e.at("mult_in_regular").get<Int>();
        irrs.push_back(std::move(w));
    }
    std::map<std::string, IrreducibleTable::Alias> aliases;
    if (j.contains("aliases"))
        for (const auto& [alias, expansion] : j.at("aliases").items()) {
            IrreducibleTable::Alias a;
            for (const auto& [irr, mult] : expansion.items()) a[irr] = mult.get<Int>();
            aliases[alias] = std::move(a);
        }
    return std::make_shared<IrreducibleTable>(group, std::move(irrs), std::move(aliases));
}

Json vrep_to_json(const VirtualRep& v) {
    Json j = Json::object();
    for (const auto& [id, m] : v.mult()) j[id] = m;
    return j;
}

VirtualRep vrep_from_json(const Json& j, const TablePtr& table) {
    std::map<std::string, Int> mult;
    for (const auto& [id, m] : j.items()) mult[id] = m.get<Int>();
    return VirtualRep(table, std::move(mult));
}

Json family_to_json(const Family& f) {
    Json j = envelope("family");
    j["group"] = f.group()->name();
    j["members"] = Json::array();
    for (const auto& id : f.members()) j["members"].push_back(id);
    return j;
}

Family family_from_json(const Json& j, const GroupPtr& g) {
    require_type(j, "family");
    if (j.at("group").get<std::string>() != g->name())
        throw error("group-mismatch", "family references a different group");
    std::set<std::string> members;
    for (const auto& id : j.at("members")) members.insert(id.get<std::string>());
    return Family(g, std::move(members));
}

Json line_to_json(const Line& line) {
    return Json{{"slope", line.slope}, {"intercept", line.intercept}};
}

Line line_from_json(const Json& j) {
    return {j.at("slope").get<Int>(), j.at("intercept").get<Int>()};
}

namespace {

const char* sense_name(Sense s) {
    switch (s) {
        case Sense::on_or_above: return "on_or_above";
        case Sense::above: return "above";
        case Sense::on_or_below: return "on_or_below";
        case Sense::below: return "below";
    }
    return "on_or_above";
}

Sense sense_from_name(const std::string& s) {
    if (s == "on_or_above") return Sense::on_or_above;
    if (s == "above") return Sense::above;
    if (s == "on_or_below") return Sense::on_or_below;
    if (s == "below") return Sense::below;
    throw error("parse-error", "unknown constraint sense " + s);
}

} // namespace

Json region_to_json(const Region& r) {
    Json j = envelope("region");
    j["pieces"] = Json::array();
    for (const auto& piece : r.pieces) {
        Json p;
        p["x_range"] = Json::object();
        if (piece.x_range.min) p["x_range"]["min"] = *piece.x_range.min;
        if (piece.x_range.max) p["x_range"]["max"] = *piece.x_range.max;
        p["constraints"] = Json::array();
        for (const auto& c : piece.constraints)
            p["constraints"].push_back(
                {{"line", line_to_json(c.line)}, {"sense", sense_name(c.sense)}});
        j["pieces"].push_back(std::move(p));
    }
    return j;
}

Region region_from_json(const Json& j) {
    require_type(j, "region");
    Region r;
    for (const auto& p : j.at("pieces")) {
        RegionPiece piece;
        if (p.contains("x_range")) {
            if (p["x_range"].contains("min")) piece.x_range.min = p["x_range"]["min"].get<Int>();
            if (p["x_range"].contains("max")) piece.x_range.max = p["x_range"]["max"].get<Int>();
        }
        for (const auto& c : p.at("constraints"))
            piece.constraints.push_back(
                {line_from_json(c.at("line")), sense_from_name(c.at("sense").get<std::string>())});
        r.pieces.push_back(std::move(piece));
    }
    return r;
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const Json& j) {
    std::vector<std::vector<Int>> rows;
    for (const auto& row : j) {
        std::vector<Int> r;
        for (const auto& v : row) r.push_back(v.get<Int>());
        rows.push_back(std::move(r));
    }
    return Mat::from_rows(rows);
}

namespace {

Json cell_key_to_json(const CellKey& k) {
    return Json{{"x", k.x}, {"y", k.y}, {"level", k.level}};
}

CellKey cell_key_from_json(const Json& j) {
    return {j.at("x").get<Int>(), j.at("y").get<Int>(), j.at("level").get<std::string>()};
}

} // namespace

Json chart_to_json(const Chart& c) {
    Json j = envelope("chart");
    if (!c.name.empty()) j["name"] = c.name;
    j["group_ref"] = c.group->name();
    j["V"] = vrep_to_json(c.v);
    j["window"] = {{"x_min", c.window.x_min},
                   {"x_max", c.window.x_max},
                   {"y_min", c.window.y_min},
                   {"y_max", c.window.y_max}};
    j["cells"] = Json::array();
    for (const auto& [key, cell] : c.cells) {
        Json e = cell_key_to_json(key);
        e["free_rank"] = cell.free_rank;
        e["torsion"] = cell.torsion;
        e["labels"] = cell.labels;
        j["cells"].push_back(std::move(e));
    }
    j["differentials"] = Json::array();
    for (const auto& d : c.differentials) {
        Json e;
        e["r"] = d.r;
        e["source"] = cell_key_to_json(d.source);
        e["target_level"] = d.target.level;
        if (d.target != Chart::derived_target(d)) e["target"] = cell_key_to_json(d.target);
        e["matrix"] = matrix_to_json(d.matrix);
        j["differentials"].push_back(std::move(e));
    }
    if (!c.level_maps.empty()) {
        j["level_maps"] = Json::array();
        for (const auto& lm : c.level_maps)
            j["level_maps"].push_back(
                {{"x", lm.x},
                 {"y", lm.y},
                 {"kind", lm.kind == LevelMapKind::transfer ? "transfer" : "restriction"},
                 {"from_level", lm.from_level},
                 {"to_level", lm.to_level},
                 {"matrix", matrix_to_json(lm.matrix)}});
    }
    return j;
}

Chart chart_from_json(const Json& j, const TablePtr& table) {
    require_type(j, "chart");
    std::string group_name = j.at("group_ref").get<std::string>();
    if (table->group()->name() != group_name)
        throw error("group-mismatch",
                    "chart references " + group_name + " but the table is over " +
                        table->group()->name());
    Window w{j.at("window").at("x_min").get<Int>(), j.at("window").at("x_max").get<Int>(),
             j.at("window").at("y_min").get<Int>(), j.at("window").at("y_max").get<Int>()};
    Chart c(table->group(), vrep_from_json(j.at("V"), table), w);
    if (j.contains("name")) c.name = j["name"].get<std::string>();

    for (const auto& e : j.at("cells")) {
        FgaGroup cell;
        cell.free_rank = e.at("free_rank").get<Int>();
        for (const auto& t : e.at("torsion")) cell.torsion.push_back(t.get<Int>());
        for (const auto& l : e.at("labels")) cell.labels.push_back(l.get<std::string>());
        c.cells[cell_key_from_json(e)] = std::move(cell);
    }
    for (const auto& e : j.at("differentials")) {
        Differential d;
        d.r = e.at("r").get<Int>();
        d.source = cell_key_from_json(e.at("source"));
        if (e.contains("target"))
            d.target = cell_key_from_json(e.at("target"));
        else
            d.target = {d.source.x - 1, d.source.y + d.r,
                        e.at("target_level").get<std::string>()};
        d.matrix = matrix_from_json(e.at("matrix"));
        // A [] matrix into or out of an empty page-2 cell regains its shape.
        if (d.r == 2 && d.matrix.rows() == 0 && d.matrix.cols() == 0) {
            const FgaGroup* src = c.cell(d.source);
            const FgaGroup* tgt = c.cell(d.target);
            d.matrix = Mat(tgt ? int(tgt->generator_count()) : 0,
                           src ? int(src->generator_count()) : 0);
        }
        c.differentials.push_back(std::move(d));
    }
    if (j.contains("level_maps"))
        for (const auto& e : j.at("level_maps")) {
            LevelMap lm;
            lm.x = e.at("x").get<Int>();
            lm.y = e.at("y").get<Int>();
            lm.kind = e.at("kind").get<std::string>() == "transfer" ? LevelMapKind::transfer
                                                                    : LevelMapKind::restriction;
            lm.from_level = e.at("from_level").get<std::string>();
            lm.to_level = e.at("to_level").get<std::string>();
            lm.matrix = matrix_from_json(e.at("matrix"));
            c.level_maps.push_back(std::move(lm));
        }
    return c;
}

Json chart_map_to_json(const ChartMap& m) {
    Json j = envelope("chart_map");
    j["source_ref"] = m.source ? m.source->name : "";
    j["target_ref"] = m.target ? m.target->name : "";
    j["matrices"] = Json::array();
    for (const auto& [key, matrix] : m.matrices) {
        Json e = cell_key_to_json(key);
        e["matrix"] = matrix_to_json(matrix);
        j["matrices"].push_back(std::move(e));
    }
    return j;
}

ChartMap chart_map_from_json(const Json& j, std::shared_ptr<const Chart> source,
                             std::shared_ptr<const Chart> target) {
    require_type(j, "chart_map");
    auto check_ref = [&](const char* field, const Chart& chart) {
        std::string ref = j.value(field, std::string());
        if (!ref.empty() && !chart.name.empty() && ref != chart.name)
            throw error("ref-mismatch", std::string(field) + " names " + ref +
                                            " but the chart is " + chart.name);
    };
    check_ref("source_ref", *source);
    check_ref("target_ref", *target);
    ChartMap m;
    m.source = std::move(source);
    m.target = std::move(target);
    for (const auto& e : j.at("matrices")) {
        CellKey key = cell_key_from_json(e);
        Mat matrix = matrix_from_json(e.at("matrix"));
        if (matrix.rows() == 0 && matrix.cols() == 0) {
            const FgaGroup* s = m.source->cell(key);
            const FgaGroup* t = m.target->cell(key);
            matrix = Mat(t ? int(t->generator_count()) : 0, s ? int(s->generator_count()) : 0);
        }
        m.matrices[key] = std::move(matrix);
    }
    return m;
}

Json diagnostics_to_json(const Diagnostics& ds) {
    Json j = Json::array();
    for (const auto& d : ds) j.push_back({{"code", d.code}, {"message", d.message}});
    return j;
}

namespace {

Json condition_to_json(const ConditionReport& c) {
    Json j;
    j["pass"] = c.pass;
    j["witnesses"] = Json::array();
    for (const auto& w : c.witnesses)
        j["witnesses"].push_back(
            {{"page", w.page}, {"cell", cell_key_to_json(w.cell)}, {"detail", w.detail}});
    return j;
}

Json boundary_to_json(const PiecewiseBoundary& b) {
    Json j = Json::array();
    for (const auto& [range, line] : b.pieces) {
        Json p;
        if (range.min) p["x_min"] = *range.min;
        if (range.max) p["x_max"] = *range.max;
        p["line"] = line_to_json(line);
        j.push_back(std::move(p));
    }
    return j;
}

} // namespace

Json isom_report_to_json(const IsomReport& r) {
    Json j = envelope("isom_report");
    j["boundary"] = boundary_to_json(r.boundary);
    j["r_max"] = r.r_max;
    j["pass"] = r.pass();
    j["condition1"] = condition_to_json(r.condition1);
    j["condition2"] = condition_to_json(r.condition2);
    j["condition3"] = condition_to_json(r.condition3);
    j["diagnostics"] = diagnostics_to_json(r.diagnostics);
    return j;
}

Json tower_report_to_json(const TowerReport& r) {
    Json j = envelope("tower_report");
    j["pass"] = r.pass();
    j["strata"] = Json::array();
    for (const auto& s : r.strata) {
        Json e;
        e["h"] = s.h;
        e["line"] = line_to_json(s.line);
        e["family_members"] = s.family_members;
        e["chart"] = s.chart_name;
        e["governs"] = s.governs;
        if (!s.fixed_point_label.empty()) e["fixed_points"] = s.fixed_point_label;
        if (!s.residual_action.empty()) e["residual_action"] = s.residual_action;
        if (!s.euler_localization.empty()) e["euler_localization"] = s.euler_localization;
        e["isom_report"] = isom_report_to_json(s.isom);
        j["strata"].push_back(std::move(e));
    }
    j["diagnostics"] = diagnostics_to_json(r.diagnostics);
    return j;
}

Json propagation_to_json(const PropagationResult& r) {
    Json j = envelope("propagation_result");
    j["condition1_ok"] = r.condition1_ok;
    j["installed"] = r.installed;
    j["candidates"] = Json::array();
    for (const auto& c : r.candidates)
        j["candidates"].push_back({{"r", c.r},
                                   {"source", cell_key_to_json(c.source)},
                                   {"target", cell_key_to_json(c.target)},
                                   {"reason", c.reason}});
    j["condition1_report"] = isom_report_to_json(r.condition1_report);
    j["chart"] = chart_to_json(r.chart);
    return j;
}

} // namespace sst
