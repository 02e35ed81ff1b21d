#pragma once

#include "mpmrs/system.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mpmrs {

/// Square/circle flow graph of an FsMPMRS.
///
/// Squares are state configurations. Circles are the intermediate marked
/// configurations of positive rule-by-rule runs (pure-state rules ordered
/// first), projected away from registers and keyed by the square the run
/// starts from. The first arrow of a run leaves the square itself. Each
/// circle is attached to the square of its unmarking.
struct FlowGraph {
	struct Square {
		Multiset config;
		bool state_configuration = false; // false: only reached as a circle's unmarking
		bool filled = true;
	};
	struct Circle {
		std::size_t origin = 0;
		Multiset unmarked;
		Multiset marked;
		std::size_t square = 0;
		std::size_t merged = 1; // terminal circles folded into this one
		std::vector<std::pair<Multiset, Multiset>> folded; // their (unmarked, marked) contents
	};
	struct NodeRef {
		bool is_square = true;
		std::size_t index = 0;

		friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
	};
	struct Arrow {
		NodeRef from;
		std::size_t to = 0; // circle
		std::size_t rule = 0;
		Multiset minus; // registers consumed
		Multiset plus;  // registers produced

		std::string label(const std::vector<Rule>& rules) const;
	};
	/// A path that can never take part in a computation: from square `from`
	/// along `rules` to a circle attached to square `to`.
	struct Elimination {
		std::size_t from = 0;
		std::vector<std::size_t> rules;
		std::size_t to = 0;

		friend auto operator<=>(const Elimination&, const Elimination&) = default;
	};

	std::vector<Rule> rules;
	std::vector<Square> squares;
	std::vector<Circle> circles;
	std::vector<Arrow> arrows;
	std::set<std::pair<std::size_t, std::size_t>> one_step; // square -> square
	std::set<Elimination> eliminable;

	std::optional<std::size_t> square_of(const Multiset& config) const;

	/// Follows the arrows labeled by rule indices from a square; returns the
	/// circle reached, if the whole sequence exists.
	std::optional<std::size_t> follow(std::size_t square, const std::vector<std::size_t>& rules) const;

	/// Rule indices with pure-state rules first, each group in list order.
	std::vector<std::size_t> rule_order;
};

/// Throws Error(Bound) when the state space does not converge.
FlowGraph build_flow_graph(const FsMpmrsSystem& fsys, std::size_t max_iters = 1'000);

/// Drops the arrows that lie only on paths eliminable by the one-step
/// reachability argument: from a square B reached in one step only from A
/// (or from squares on the witnessing run), a rule path to C that the run
/// from A already passed through. Idempotent; never adds nodes or arrows.
FlowGraph simplify(const FlowGraph& g);

/// Deterministic DOT text. Squares are sq_N boxes, circles ci_N ellipses,
/// marked symbols carry a "~" prefix, attachments are undirected dashed
/// edges.
std::string emit_dot(const FlowGraph& g);

} // namespace mpmrs
