#include "mpmrs/report.hpp"

#include "mpmrs/universal23.hpp"

#include <algorithm>
#include <sstream>

namespace mpmrs {

std::vector<PassLevel> pass_levels()
{
	using P = Pass;
	return {
	    {"P0", {}, false},
	    {"P0 faithful-halt", {}, true},
	    {"P1", {P::P1}, false},
	    {"P1+P2", {P::P1, P::P2}, false},
	    {"P1+P3", {P::P1, P::P3}, false},
	    {"P1+P3+P4", {P::P1, P::P3, P::P4}, false},
	    {"P1+P2+P3", {P::P1, P::P2, P::P3}, false},
	    {"P1+P2+P3+P4", {P::P1, P::P2, P::P3, P::P4}, false},
	};
}

std::vector<TableRow> pipeline_table(const CompilationOptions& base)
{
	struct Published {
		const char* level;
		std::size_t size;
		std::size_t rules;
	};
	const Published published[] = {{"P0", 3, 73}, {"P1+P2", 5, 56}, {"P1+P3", 6, 47}};

	std::vector<TableRow> rows;
	for (const auto& level : pass_levels()) {
		CompilationOptions opts = base;
		opts.passes = level.passes;
		opts.faithful_halt = level.faithful_halt || base.faithful_halt;
		auto c = compile(u22(), opts);
		TableRow row;
		row.configuration = level.name;
		row.computed = c.report.stages.back();
		row.status = "informative";
		for (const auto& p : published)
			if (level.name == p.level) {
				row.published = std::to_string(p.size) + " | " + std::to_string(p.rules);
				bool ok = row.computed->max_rule_size == p.size && row.computed->rule_count == p.rules;
				row.status = ok ? "match" : "deviation";
			}
		std::ostringstream note;
		bool fuses = std::find(level.passes.begin(), level.passes.end(), Pass::P2) != level.passes.end();
		if (!fuses) {
			note << "no fusion";
		} else {
			note << "cap " << opts.fusion_size_cap;
			if (opts.fusion_states)
				note << ", requested";
			else if (opts.fusion_limit)
				note << ", limit " << *opts.fusion_limit;
			note << ", fused:";
			if (c.report.fused_states.empty())
				note << " none";
			for (const auto& q : c.report.fused_states)
				note << ' ' << q;
		}
		if (opts.faithful_halt)
			note << ", faithful halt";
		row.note = note.str();
		rows.push_back(std::move(row));
	}

	auto u23 = stats(u23_system().base, "universal");
	TableRow u;
	u.configuration = "universal (23 rules)";
	u.computed = u23;
	u.published = "20 | 23";
	u.status = u23.rule_count == 23 && u23.max_rule_size <= 20 ? "match" : "deviation";
	u.note = "max size counted " + std::to_string(u23.max_rule_size) + ", published bound 20";
	rows.push_back(std::move(u));

	rows.push_back({"external construction", std::nullopt, "7 | 43", "not computed",
	                "cited construction, outside this toolkit"});
	rows.push_back({"external construction", std::nullopt, "11 | 30", "not computed",
	                "cited construction, outside this toolkit"});
	return rows;
}

std::string render_table(const std::vector<TableRow>& rows)
{
	std::ostringstream os;
	auto pad = [&](const std::string& s, std::size_t w) {
		os << s;
		for (std::size_t i = s.size(); i < w; ++i)
			os << ' ';
	};
	pad("configuration", 24);
	pad("size | rules | status", 34);
	os << "published  note\n";
	for (const auto& r : rows) {
		pad(r.configuration, 24);
		std::string cell;
		if (!r.computed)
			cell = "- | - | " + r.status;
		else if (r.configuration.rfind("universal", 0) == 0)
			cell = "≤20 | " + std::to_string(r.computed->rule_count) + " | " + r.status;
		else
			cell = std::to_string(r.computed->max_rule_size) + " | " +
			       std::to_string(r.computed->rule_count) + " | " + r.status;
		// "≤" is three bytes but one column.
		pad(cell, 34 + (cell.find("≤") != std::string::npos ? 2 : 0));
		pad(r.published.empty() ? "-" : r.published, 11);
		os << r.note << '\n';
	}
	return os.str();
}

} // namespace mpmrs
