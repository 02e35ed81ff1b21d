#include "mpmrs/report.hpp"

#include <doctest.h>

using namespace mpmrs;

TEST_SUITE("report") {

TEST_CASE("pipeline table")
{
	auto rows = pipeline_table();
	auto find = [&](const std::string& name) -> const TableRow& {
		for (const auto& r : rows)
			if (r.configuration == name)
				return r;
		FAIL("missing row " << name);
		return rows.front();
	};
	CHECK(find("P0").status == "match");
	CHECK(find("P0").published == "3 | 73");
	CHECK(find("P1+P2").status == "match");
	CHECK(find("P1+P3").status == "match");
	CHECK(find("P1+P2+P3").status == "informative");
	CHECK(find("universal (23 rules)").status == "match");

	auto text = render_table(rows);
	CHECK(text.find("3 | 73 | match") != std::string::npos);
	CHECK(text.find("≤20 | 23 | match") != std::string::npos);
	CHECK(text.find("7 | 43") != std::string::npos);
	CHECK(text.find("11 | 30") != std::string::npos);
	CHECK(text.find("fused: q3 q6 q9") != std::string::npos);
}

TEST_CASE("a different calibration is reported as a deviation with its options")
{
	CompilationOptions o;
	o.fusion_limit = 1;
	auto rows = pipeline_table(o);
	for (const auto& r : rows)
		if (r.configuration == "P1+P2") {
			CHECK(r.status == "deviation");
			CHECK(r.computed->rule_count == 58);
			CHECK(r.note.find("limit 1") != std::string::npos);
		}
}

}
