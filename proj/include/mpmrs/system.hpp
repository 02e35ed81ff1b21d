#pragma once

#include "mpmrs/multiset.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpmrs {

/// Labeled multiset rewriting rule lhs -> rhs.
struct Rule {
	std::string label;
	Multiset lhs;
	Multiset rhs;

	/// Rule size |lhs| + |rhs|.
	Multiset::Count size() const noexcept { return lhs.size() + rhs.size(); }

	friend bool operator==(const Rule&, const Rule&) = default;
};

bool is_valid_label(std::string_view label) noexcept;

/// Validating constructor: the label must be a token without ':' and the
/// left-hand side must be non-empty.
Rule make_rule(std::string label, Multiset lhs, Multiset rhs);

/// Convenience: make_rule(label, Multiset::parse(lhs), Multiset::parse(rhs)).
Rule parse_rule(std::string label, std::string_view lhs, std::string_view rhs);

/// Maximally parallel multiset rewriting system (O, I, P). Rule order is the
/// total order used to enumerate rule sequences.
struct MpmrsSystem {
	SymbolSet alphabet;
	Multiset initial;
	std::vector<Rule> rules;

	friend bool operator==(const MpmrsSystem&, const MpmrsSystem&) = default;
};

/// Maps register-machine states to the state configurations that encode
/// them at base phase. A configuration is a checkpoint for state q when its
/// projection outside the registers equals states[q] exactly.
struct StateEncoding {
	std::map<std::string, Multiset> states;
	std::vector<Symbol> registers;

	/// RM state whose encoding equals the given state configuration, if any.
	const std::string* state_of(const Multiset& state_config) const;

	friend bool operator==(const StateEncoding&, const StateEncoding&) = default;
};

/// Finite-state MPMRS (O, R, R_t, I, P).
struct FsMpmrsSystem {
	MpmrsSystem base;
	SymbolSet registers;
	SymbolSet terminal;
	std::optional<StateEncoding> encoding;

	Multiset state_part(const Multiset& cfg) const { return project_out(cfg, registers); }
	Multiset register_part(const Multiset& cfg) const { return project(cfg, registers); }
	Multiset terminal_part(const Multiset& cfg) const { return project(cfg, terminal); }

	friend bool operator==(const FsMpmrsSystem&, const FsMpmrsSystem&) = default;
};

/// Every symbol appearing in the initial multiset or any rule.
SymbolSet symbols_used(const MpmrsSystem& sys);

} // namespace mpmrs
