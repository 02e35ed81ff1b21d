#pragma once

#include "mpmrs/cosim.hpp"
#include "mpmrs/engine.hpp"
#include "mpmrs/register_machine.hpp"
#include "mpmrs/system.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mpmrs {

/// One printed row of the 23-rule table, in the spaced text form.
struct U23Row {
	const char* label;
	const char* lhs;
	const char* rhs;
};

/// The table rows in printed order.
std::span<const U23Row> u23_table();

/// The 23-rule universal FsMPMRS with R = {R0..R7} and R_t = {R1}. The
/// attached encoding holds the register order and the published seed
/// q1 -> L^2 Q^2 J^2 N X^3.
FsMpmrsSystem u23_system();

/// L^2 Q^2 J^2 N X^3 plus R_k^{regs[k]}.
Multiset initial_config(const Registers& regs);

/// Three phase tokens present, all of them X.
bool is_base_phase(const Multiset& cfg);

struct DictionaryOptions {
	std::size_t max_rm_steps = 2'000;
	std::size_t max_mpmrs_steps = 20'000;
	/// Oracle instructions searched ahead of the current position for a
	/// state whose registers match a base-phase configuration.
	std::size_t window = 8;
	/// Also check every entry against state_configurations(u23_system()).
	bool check_state_space = false;
	std::size_t state_space_iters = 200;
};

struct U23Dictionary {
	std::map<std::string, Multiset> entries;       // U22 state -> base-phase configuration
	std::map<Multiset, std::set<std::string>> ambiguous; // configurations with several candidates
	std::vector<std::string> log;
	std::vector<std::string> findings;             // nondeterminism and other anomalies seen
	bool consistent = true;
	bool injective = true;
	std::optional<bool> in_state_space;

	/// StateEncoding view, registers R0..R7.
	StateEncoding encoding() const;
};

/// Runs U22 and the 23-rule system side by side over the sample inputs and
/// intersects, per base-phase configuration, the U22 states whose register
/// vectors it matched. Throws Error(Derivation) with a witness when a
/// configuration matches no common state, or a state receives two
/// configurations.
U23Dictionary derive_dictionary(const std::vector<Registers>& samples,
                                const DictionaryOptions& opts = {});

struct UniversalRun {
	RunOutcome outcome;                  // Stable or BoundExceeded
	std::optional<Multiset> result;      // π_{R1} on stability
	std::optional<std::size_t> branching_step; // first step with several successors
	std::vector<std::string> branching;  // the competing steps there
};

/// Deterministic run taking the first maximal step each time; branching is
/// reported, not resolved.
UniversalRun run_universal(const Registers& regs, std::size_t max_steps = default_max_steps);

/// u23_system() with the dictionary as its encoding.
FsMpmrsSystem u23_with_dictionary(const U23Dictionary& dict);

/// Lockstep against u22() through the dictionary.
Verdict lockstep_universal(const U23Dictionary& dict, const std::vector<Registers>& inputs,
                           const CosimOptions& opts = {});

struct TokenViolation {
	Registers input;
	Multiset config;
	std::size_t depth = 0;
};

/// Explores every computation from each input (bounded) and returns the
/// configurations whose X and T count is not exactly 3.
std::vector<TokenViolation> phase_token_violations(const std::vector<Registers>& inputs,
                                                   std::size_t max_depth,
                                                   std::size_t max_configs);

} // namespace mpmrs
