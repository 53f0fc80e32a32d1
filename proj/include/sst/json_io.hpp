#pragma once

#include <json.hpp>

#include "sst/chart.hpp"
#include "sst/compare.hpp"
#include "sst/family.hpp"
#include "sst/geometry.hpp"
#include "sst/group.hpp"
#include "sst/rep.hpp"

namespace sst {

using Json = nlohmann::json;

/// Every file format carries {"format_version": 1, "type": "..."}.
inline constexpr int kFormatVersion = 1;

Json group_to_json(const GroupDescriptor& g);
GroupPtr group_from_json(const Json& j);

Json table_to_json(const IrreducibleTable& t);
/// `group` resolves the table's group reference; pass nullptr to use the
/// built-in group of that name.
TablePtr table_from_json(const Json& j, GroupPtr group = nullptr);

Json vrep_to_json(const VirtualRep& v);
VirtualRep vrep_from_json(const Json& j, const TablePtr& table);

Json family_to_json(const Family& f);
Family family_from_json(const Json& j, const GroupPtr& g);

Json line_to_json(const Line& line);
Line line_from_json(const Json& j);

Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

Json chart_to_json(const Chart& c);
Chart chart_from_json(const Json& j, const TablePtr& table);

/// The map file references its charts by name; the caller supplies the
/// actual charts and the references are checked when nonempty.
Json chart_map_to_json(const ChartMap& m);
ChartMap chart_map_from_json(const Json& j, std::shared_ptr<const Chart> source,
                             std::shared_ptr<const Chart> target);

Json diagnostics_to_json(const Diagnostics& ds);
Json isom_report_to_json(const IsomReport& r);
Json tower_report_to_json(const TowerReport& r);
Json propagation_to_json(const PropagationResult& r);

/// Parse + format_version / type checks.  Throws sst::error on violations.
Json parse_json_text(const std::string& text);
Json load_json_file(const std::string& path);
void require_type(const Json& j, const std::string& type);

} // namespace sst
