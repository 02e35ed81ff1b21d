#pragma once

#include "mpmrs/system.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mpmrs {

/// Multiset of rules, stored as (rule index, multiplicity) sorted by index.
struct RuleBag {
	std::vector<std::pair<std::size_t, Multiset::Count>> uses;

	Multiset::Count total() const noexcept;
	Multiset consumed(std::span<const Rule> rules) const;
	Multiset produced(std::span<const Rule> rules) const;

	/// "{r1, r2^2}" using rule labels.
	std::string str(std::span<const Rule> rules) const;

	friend bool operator==(const RuleBag&, const RuleBag&) = default;
	/// Lexicographic on the expanded non-decreasing index sequence.
	friend std::strong_ordering operator<=>(const RuleBag& a, const RuleBag& b);
};

/// One maximally parallel transition.
struct Step {
	RuleBag bag;
	Multiset successor;

	friend bool operator==(const Step&, const Step&) = default;
};

bool applicable(const Rule& rule, const Multiset& cfg) noexcept;

/// cfg - lhs + rhs; throws Error(Precondition) when the rule does not apply.
Multiset apply_once(const Rule& rule, const Multiset& cfg);

/// Every maximal rule bag applicable to cfg with its successor, sorted by
/// bag. Produced symbols are staged apart from the remainder, so a rule never
/// consumes what another rule of the same step produced. Empty iff cfg is
/// stable.
std::vector<Step> maximal_steps(std::span<const Rule> rules, const Multiset& cfg);
std::vector<Step> maximal_steps(const MpmrsSystem& sys, const Multiset& cfg);

bool is_stable(std::span<const Rule> rules, const Multiset& cfg) noexcept;
bool is_stable(const MpmrsSystem& sys, const Multiset& cfg) noexcept;

struct TraceEntry {
	RuleBag bag;
	Multiset config; // configuration after the step
};

struct RunOutcome {
	enum class Kind { Stable, BoundExceeded, ResultSet };

	Kind kind = Kind::BoundExceeded;
	Multiset config;              // Stable / BoundExceeded: final configuration
	std::vector<Multiset> results; // ResultSet: sorted stable configurations
	bool complete = false;         // ResultSet: frontier emptied within bounds
	bool cycle_detected = false;   // ResultSet: some configuration was revisited
	std::size_t steps_taken = 0;
	std::size_t configs_explored = 0;
	std::vector<TraceEntry> trace;
};

inline constexpr std::size_t default_max_steps = 10'000;
inline constexpr std::size_t default_max_configs = 100'000;

/// Follows one computation, choosing among maximal steps with a seeded
/// mt19937_64 (index = draw mod count). Same seed, same outcome.
RunOutcome run_seeded(const MpmrsSystem& sys, std::uint64_t seed,
                      std::size_t max_steps = default_max_steps);

/// Breadth-first exploration of every computation from the initial multiset.
RunOutcome run_exhaustive(const MpmrsSystem& sys, std::size_t max_steps = default_max_steps,
                          std::size_t max_configs = default_max_configs);

struct ResultSet {
	std::vector<Multiset> values;
	bool complete = false;
};

/// Terminal-register projections of the reachable stable configurations.
ResultSet results(const FsMpmrsSystem& fsys, std::size_t max_steps = default_max_steps,
                  std::size_t max_configs = default_max_configs);

enum class RuleClass { PureState, RegisterDependent };

RuleClass classify_rule(const FsMpmrsSystem& fsys, const Rule& rule);

struct Violation {
	std::string subject;
	std::string message;

	std::string str() const { return subject + ": " + message; }
};

std::vector<Violation> validate(const FsMpmrsSystem& fsys);

/// Register multisets that must be tried next to a state configuration to
/// cover every register-dependent behaviour: each register that some
/// enabled rule consumes ranges from zero up to the most it could lose in
/// one step (capped at max register symbols in a lhs × |state|).
std::vector<Multiset> register_paddings(const FsMpmrsSystem& fsys, const Multiset& state);

/// State configurations B with A ⇒ B, i.e. AR' ⇒ BR'' for some register
/// multisets R', R''.
std::vector<Multiset> state_successors(const FsMpmrsSystem& fsys, const Multiset& state);

inline constexpr std::size_t default_max_state_configs = 100'000;

/// Least fixed point of one-step state reachability from the projection of
/// the initial multiset. Throws Error(Bound) when max_iters rounds (or
/// max_configs configurations) do not close the set.
std::vector<Multiset> state_configurations(const FsMpmrsSystem& fsys, std::size_t max_iters,
                                           std::size_t max_configs = default_max_state_configs);

} // namespace mpmrs
