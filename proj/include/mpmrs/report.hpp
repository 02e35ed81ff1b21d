#pragma once

#include "mpmrs/compiler.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mpmrs {

struct TableRow {
	std::string configuration;
	std::optional<StageStats> computed; // empty for rows that are only cited
	std::string published;              // "3 | 73" or empty
	std::string status;                 // match / deviation / informative / not computed
	std::string note;
};

/// The U22 pipeline at every pass level plus the 23-rule system, set
/// against the published size/count pairs.
std::vector<TableRow> pipeline_table(const CompilationOptions& base = {});

std::string render_table(const std::vector<TableRow>& rows);

/// Pass configurations exercised by tests and the table, in order.
struct PassLevel {
	std::string name;
	std::vector<Pass> passes;
	bool faithful_halt = false;
};

std::vector<PassLevel> pass_levels();

} // namespace mpmrs
