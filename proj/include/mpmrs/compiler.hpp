#pragma once

#include "mpmrs/register_machine.hpp"
#include "mpmrs/system.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpmrs {

enum class Pass { P1, P2, P3, P4 };

std::string_view pass_name(Pass p) noexcept;

/// Parses "p1,p3" style lists (case-insensitive, "none" or empty for none).
std::vector<Pass> parse_passes(std::string_view text);

/// Increment fusion default: fuse only the first three eligible increment
/// states in natural state-id order. Frozen from a brute-force calibration
/// over fusion subsets of U22 (see tools/calibrate_fusion and
/// data/p2_calibration.txt); on U22 it yields 56 rules of size at most 5.
inline constexpr std::size_t default_fusion_limit = 3;

struct CompilationOptions {
	bool faithful_halt = false;
	std::size_t fusion_size_cap = 5;
	/// Maximum number of increment states fused by P2; nullopt fuses every
	/// eligible state.
	std::optional<std::size_t> fusion_limit = default_fusion_limit;
	/// Explicit set of increment states to fuse; overrides fusion_limit.
	std::optional<std::vector<std::string>> fusion_states;
	std::vector<Pass> passes;
	/// Registers counted in the result, R_t.
	std::vector<std::size_t> terminal = {0};
};

struct StageStats {
	std::string stage;
	std::size_t rule_count = 0;
	std::size_t max_rule_size = 0;
	std::size_t states_eliminated = 0;
	std::size_t rules_glued = 0;

	friend bool operator==(const StageStats&, const StageStats&) = default;
};

struct PassReport {
	std::vector<StageStats> stages;
	std::vector<std::string> fused_states;
	std::vector<std::string> eliminated_states;

	std::string str() const;
};

/// Rule count and maximal rule size of a system, as one report entry.
StageStats stats(const MpmrsSystem& sys, std::string stage = {});

/// Control-flow lineage of a compiled machine. Every node is an increment or
/// a test-and-decrement; a transfer moves to a target state while adding
/// register increments, so fused and collapsed increments stay explicit.
struct Transfer {
	std::string target;
	Multiset increments;

	friend bool operator==(const Transfer&, const Transfer&) = default;
};

struct IrNode {
	enum class Kind { Inc, Dec };

	std::string state;
	Kind kind = Kind::Inc;
	std::size_t reg = 0;  // tested register (Dec)
	Transfer next;        // Inc: successor; Dec: success exit
	Transfer zero;        // Dec only

	friend bool operator==(const IrNode&, const IrNode&) = default;
};

struct Lineage {
	std::size_t registers = 0;
	std::string start;
	std::string final_state;
	std::vector<IrNode> nodes;

	const IrNode* find(const std::string& state) const;
};

/// Lowers Branch and plain Dec into DecJz/Inc and builds the lineage.
/// Throws Error(Compile) for malformed machines.
Lineage lower(const RegisterMachine& m);

/// Encoding style a compiled system is emitted in.
struct Style {
	bool checker_encoding = false; // P1: q C_q, one q -> q' per test
	bool phases = false;           // P3: global S -> S'
	bool shared_checkers = false;  // P4: one checker per tested register

	friend bool operator==(const Style&, const Style&) = default;
};

struct CompiledSystem {
	FsMpmrsSystem system;
	Lineage lineage;
	Style style;
	CompilationOptions options;
	PassReport report;
	Registers input;
};

/// Basic scheme: q -> R_i q1 per increment and the five-rule checker block
/// per test. Without faithful_halt, the zero exit into the final state is
/// dropped; the run then ends by stability with a residue that the terminal
/// projection ignores.
CompiledSystem compile_basic(const RegisterMachine& m, const CompilationOptions& opts = {},
                             const Registers& input = {});

/// P1: the test block loses its intermediate state (q -> q', C_q R -> C_q',
/// q' C_q' -> success, q' C_q -> zero); linear increment chains collapse.
CompiledSystem pass_checker_encoding(const CompiledSystem& in);

/// P2: increments reached only from test exits are folded into those exits.
CompiledSystem pass_fuse_increments(const CompiledSystem& in, std::size_t cap);

/// P3: the per-state q -> q' rules become one shared S -> S'.
CompiledSystem pass_phases(const CompiledSystem& in);

/// P4: per-state checkers become per-register checkers C_i.
CompiledSystem pass_shared_checkers(const CompiledSystem& in);

/// compile_basic followed by opts.passes in order. Throws Error(Compile)
/// when a pass precondition is unmet (P2 needs P1, P4 needs P3).
CompiledSystem compile(const RegisterMachine& m, const CompilationOptions& opts,
                       const Registers& input = {});

/// Increment states P2 could fuse, in natural state-id order.
std::vector<std::string> fusion_candidates(const CompiledSystem& in, std::size_t cap);

/// Replaces the register part of the initial multiset, registers taken in
/// the order of the system's encoding.
FsMpmrsSystem with_input(const FsMpmrsSystem& sys, const Registers& regs);

/// Natural order: digit runs compare numerically ("q9" < "q10").
bool natural_less(std::string_view a, std::string_view b);

} // namespace mpmrs
