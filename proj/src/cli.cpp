#include "sst/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <memory>
#include <sstream>

#include "sst/compare.hpp"
#include "sst/json_io.hpp"
#include "sst/svg.hpp"

namespace sst {

namespace {

struct CommonOpts {
    std::string group;
    std::string group_file;
    std::string table_file;
    std::string v_expr = "0";
    std::string out_file;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_v = true) {
    cmd->add_option("--group", o.group, "Built-in group name (C2, C4, C8, C3, C9, Q8)");
    cmd->add_option("--group-file", o.group_file, "JSON group descriptor file");
    cmd->add_option("--table-file", o.table_file, "JSON irreducible table file");
    if (with_v)
        cmd->add_option("--V", o.v_expr,
                        "Sparse multiplicity expression over the table, e.g. sigma:1,lambda1:-2");
    cmd->add_option("--out", o.out_file, "Write output to this file instead of stdout");
    cmd->add_option("--out-dir", o.out_dir, "Directory prefix for --out");
}

struct Context {
    GroupPtr group;
    TablePtr table;
    VirtualRep v;
};

void reject_invalid(const Diagnostics& ds, const std::string& what) {
    if (ds.empty()) return;
    std::string msg = what + " failed validation:";
    for (const auto& d : ds) msg += "\n  [" + d.code + "] " + d.message;
    throw error("validation", msg);
}

Context resolve_context(const CommonOpts& o) {
    Context ctx{nullptr, nullptr, VirtualRep(nullptr)};
    if (!o.group_file.empty()) {
        ctx.group = group_from_json(load_json_file(o.group_file));
        reject_invalid(validate_group(*ctx.group), "group descriptor");
    } else if (!o.group.empty()) {
        ctx.group = builtin_group(o.group);
        if (!ctx.group) throw error("unknown-group", "no built-in group named " + o.group);
    }
    if (!o.table_file.empty()) {
        ctx.table = table_from_json(load_json_file(o.table_file), ctx.group);
        reject_invalid(validate_table(*ctx.table), "irreducible table");
        if (!ctx.group) ctx.group = ctx.table->group();
    } else if (ctx.group) {
        ctx.table = builtin_table(ctx.group->name());
        if (!ctx.table)
            throw error("unknown-table",
                        "no built-in table for " + ctx.group->name() + "; pass --table-file");
    }
    if (!ctx.group) throw error("usage", "a group is required: --group or --group-file");
    ctx.v = parse_virtual_rep(ctx.table, o.v_expr);
    return ctx;
}

void emit(const CommonOpts& o, const std::string& text, std::ostream& out) {
    if (o.out_file.empty()) {
        out << text;
        if (text.empty() || text.back() != '\n') out << "\n";
        return;
    }
    std::string path = o.out_file;
    if (!o.out_dir.empty()) path = o.out_dir + "/" + path;
    std::ofstream f(path);
    if (!f) throw error("io-error", "cannot write " + path);
    f << text;
}

Family parse_family_spec(const GroupPtr& g, const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "order") return order_family(g, std::stoll(rest));
    if (kind == "not-containing") return non_containing_family(g, rest);
    if (kind == "members") {
        std::set<std::string> ids;
        std::stringstream ss(rest);
        std::string id;
        while (std::getline(ss, id, ','))
            if (!id.empty()) ids.insert(id);
        return family_from_members(g, ids);
    }
    throw error("usage", "family spec must be order:<h>, members:<id,..> or not-containing:<id>");
}

std::shared_ptr<const Chart> load_chart(const std::string& path, const Context& ctx) {
    auto chart = std::make_shared<Chart>(chart_from_json(load_json_file(path), ctx.table));
    reject_invalid(validate_chart(*chart), "chart " + path);
    return chart;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"stratification calculus for equivariant slice spectral sequence charts"};
    app.require_subcommand(1);

    CommonOpts strata_o, cone_o, region_o, check_o, prop_o, render_o;

    auto* strata_cmd = app.add_subcommand("strata", "Stratification lines of a group and V");
    add_common(strata_cmd, strata_o);

    auto* cone_cmd = app.add_subcommand("cone", "Positive cone of a group and V");
    add_common(cone_cmd, cone_o);

    auto* region_cmd =
        app.add_subcommand("region", "Comparison region between two nested families");
    add_common(region_cmd, region_o);
    std::string lower_spec, upper_spec;
    region_cmd->add_option("--lower", lower_spec, "Smaller family")->required();
    region_cmd->add_option("--upper", upper_spec, "Larger family")->required();

    auto* check_cmd = app.add_subcommand("check", "Check a map of charts against a line");
    add_common(check_cmd, check_o, false);
    std::string check_source, check_target, check_map;
    Int check_slope = 0, check_intercept = 0, check_rmax = -1;
    check_cmd->add_option("--source", check_source, "Source chart JSON")->required();
    check_cmd->add_option("--target", check_target, "Target chart JSON")->required();
    check_cmd->add_option("--map", check_map, "Chart map JSON")->required();
    check_cmd->add_option("--slope", check_slope, "Line slope")->required();
    check_cmd->add_option("--intercept", check_intercept, "Line intercept")->required();
    check_cmd->add_option("--rmax", check_rmax, "Last page to verify (default: window height + 2)");

    auto* prop_cmd =
        app.add_subcommand("propagate", "Transport target differentials into the source chart");
    add_common(prop_cmd, prop_o, false);
    std::string prop_source, prop_target, prop_map;
    Int prop_slope = 0, prop_intercept = 0, prop_rmax = -1;
    prop_cmd->add_option("--source", prop_source, "Source chart JSON")->required();
    prop_cmd->add_option("--target", prop_target, "Target chart JSON")->required();
    prop_cmd->add_option("--map", prop_map, "Chart map JSON")->required();
    prop_cmd->add_option("--slope", prop_slope, "Line slope")->required();
    prop_cmd->add_option("--intercept", prop_intercept, "Line intercept")->required();
    prop_cmd->add_option("--rmax", prop_rmax, "Last page to transport (default: window height + 2)");

    auto* render_cmd = app.add_subcommand("render", "Render one page of a chart as SVG");
    add_common(render_cmd, render_o, false);
    std::string render_chart, render_overlays;
    Int render_page = 2, render_scale = 36;
    bool render_strata = false;
    render_cmd->add_option("--chart", render_chart, "Chart JSON")->required();
    render_cmd->add_option("--page", render_page, "Page to render (>= 2)");
    render_cmd->add_option("--scale", render_scale, "Pixels per chart unit");
    render_cmd->add_option("--overlay", render_overlays,
                           "Extra lines as slope,intercept;slope,intercept;...");
    render_cmd->add_flag("--strata", render_strata, "Overlay the stratification lines");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    if (strata_cmd->parsed()) {
        Context ctx = resolve_context(strata_o);
        Json j;
        j["format_version"] = kFormatVersion;
        j["type"] = "strata";
        j["group"] = ctx.group->name();
        j["V"] = vrep_to_json(ctx.v);
        j["strata"] = Json::array();
        Json slopes = Json::array();
        for (const auto& [h, line] : strata(ctx.group, ctx.v)) {
            j["strata"].push_back({{"h", h}, {"line", line_to_json(line)}});
            slopes.push_back(line.slope);
        }
        j["slopes"] = slopes;
        emit(strata_o, j.dump(2), out);
        return 0;
    }

    if (cone_cmd->parsed()) {
        Context ctx = resolve_context(cone_o);
        Region cone = positive_cone(ctx.group, ctx.v);
        Json j;
        j["format_version"] = kFormatVersion;
        j["type"] = "cone";
        j["group"] = ctx.group->name();
        j["V"] = vrep_to_json(ctx.v);
        j["y_min_line"] = line_to_json(cone.pieces.at(0).constraints.at(0).line);
        j["y_max_line"] = line_to_json(cone.pieces.at(0).constraints.at(1).line);
        j["region"] = region_to_json(cone);
        emit(cone_o, j.dump(2), out);
        return 0;
    }

    if (region_cmd->parsed()) {
        Context ctx = resolve_context(region_o);
        Family lower = parse_family_spec(ctx.group, lower_spec);
        Family upper = parse_family_spec(ctx.group, upper_spec);
        Region r = comparison_region(lower, upper, ctx.v);
        Json j = region_to_json(r);
        j["group"] = ctx.group->name();
        j["lower"] = family_to_json(lower);
        j["upper"] = family_to_json(upper);
        emit(region_o, j.dump(2), out);
        return 0;
    }

    if (check_cmd->parsed()) {
        Context ctx = resolve_context(check_o);
        auto source = load_chart(check_source, ctx);
        auto target = load_chart(check_target, ctx);
        ChartMap m = chart_map_from_json(load_json_file(check_map), source, target);
        reject_invalid(validate_chart_map(m), "chart map");
        Int r_max = check_rmax > 0 ? check_rmax : default_r_max(*source);
        IsomReport report = check_isom_on_line(m, Line{check_slope, check_intercept}, r_max);
        emit(check_o, isom_report_to_json(report).dump(2), out);
        return 0;
    }

    if (prop_cmd->parsed()) {
        Context ctx = resolve_context(prop_o);
        auto source = load_chart(prop_source, ctx);
        auto target = load_chart(prop_target, ctx);
        ChartMap m = chart_map_from_json(load_json_file(prop_map), source, target);
        reject_invalid(validate_chart_map(m), "chart map");
        Int r_max = prop_rmax > 0 ? prop_rmax : default_r_max(*source);
        PropagationResult result =
            propagate_differentials(m, Line{prop_slope, prop_intercept}, r_max);
        emit(prop_o, propagation_to_json(result).dump(2), out);
        return result.condition1_ok ? 0 : 1;
    }

    if (render_cmd->parsed()) {
        Context ctx = resolve_context(render_o);
        RenderSpec spec;
        spec.chart = load_chart(render_chart, ctx);
        spec.page = render_page;
        spec.scale = render_scale;
        if (render_strata)
            for (const auto& [h, line] : strata(spec.chart->group, spec.chart->v))
                spec.overlays.push_back({line, "stratum-" + std::to_string(h)});
        if (!render_overlays.empty()) {
            std::stringstream ss(render_overlays);
            std::string item;
            int index = 0;
            while (std::getline(ss, item, ';')) {
                auto comma = item.find(',');
                if (comma == std::string::npos)
                    throw error("usage", "--overlay expects slope,intercept pairs");
                Line line{std::stoll(item.substr(0, comma)), std::stoll(item.substr(comma + 1))};
                spec.overlays.push_back({line, "overlay-" + std::to_string(index++)});
            }
        }
        emit(render_o, render_svg(spec), out);
        return 0;
    }

    err << "no subcommand\n";
    return 2;
}

} // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run(args, out, err);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace sst
