#include "mpmrs/notation.hpp"

#include "mpmrs/engine.hpp"
#include "mpmrs/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace mpmrs {

namespace {

std::string annotate(const Multiset& m, char sign)
{
	std::string out;
	for (const auto& [s, n] : m.entries()) {
		out += (out.empty() ? "" : " ") + std::string(1, sign) + s.name();
		if (n > 1)
			out += "^" + std::to_string(n);
	}
	return out;
}

std::string escape(const std::string& s)
{
	std::string out;
	for (char c : s) {
		if (c == '"' || c == '\\')
			out += '\\';
		out += c;
	}
	return out;
}

std::string content_text(const Multiset& unmarked, const Multiset& marked)
{
	std::string out;
	for (const auto& [s, n] : unmarked.entries())
		out += (out.empty() ? "" : " ") + s.name() + (n > 1 ? "^" + std::to_string(n) : "");
	for (const auto& [s, n] : marked.entries())
		out += (out.empty() ? "~" : " ~") + s.name() + (n > 1 ? "^" + std::to_string(n) : "");
	return out.empty() ? "λ" : out;
}

std::string circle_text(const FlowGraph::Circle& c)
{
	std::string out = content_text(c.unmarked, c.marked);
	for (const auto& [u, m] : c.folded)
		out += " | " + content_text(u, m);
	return out;
}

struct RunStep {
	std::size_t rule;
	Multiset unmarked; // state part
	Multiset marked;   // state part
	Multiset minus;
	Multiset plus;
};

struct Candidate {
	Multiset from, via, to;
	std::vector<std::size_t> rules;
	std::set<Multiset> on_path;

	friend auto operator<=>(const Candidate&, const Candidate&) = default;
};

using CircleKey = std::tuple<Multiset, Multiset, Multiset>; // origin, unmarked, marked
using NodeKey = std::pair<bool, CircleKey>;                 // square nodes use (origin, λ, λ)

struct Builder {
	const FsMpmrsSystem& fsys;
	std::vector<std::size_t> order;
	std::set<Multiset> squares;
	std::set<Multiset> state_configs;
	std::set<CircleKey> circles;
	std::set<std::tuple<NodeKey, std::size_t, CircleKey, Multiset, Multiset>> arrows;
	std::set<std::pair<Multiset, Multiset>> one_step;
	std::set<Candidate> candidates;

	Multiset origin;
	std::vector<RunStep> path;

	void record_run()
	{
		NodeKey from{true, {origin, {}, {}}};
		std::vector<Multiset> states{origin};
		for (const auto& st : path) {
			CircleKey key{origin, st.unmarked, st.marked};
			circles.insert(key);
			squares.insert(st.unmarked + st.marked);
			arrows.emplace(from, st.rule, key, st.minus, st.plus);
			from = {false, key};
			states.push_back(st.unmarked + st.marked);
		}
		one_step.emplace(origin, states.back());
		std::set<Multiset> on_path(states.begin(), states.end());
		for (std::size_t i = 1; i < states.size(); ++i)
			for (std::size_t j = i + 1; j < states.size(); ++j) {
				Candidate c{origin, states[i], states[j], {}, on_path};
				for (std::size_t k = i; k < j; ++k)
					c.rules.push_back(path[k].rule);
				candidates.insert(std::move(c));
			}
	}

	void run(const Multiset& rest, const Multiset& produced, std::size_t pos)
	{
		const auto& rules = fsys.base.rules;
		bool any = std::any_of(rules.begin(), rules.end(),
		                       [&](const Rule& r) { return applicable(r, rest); });
		if (!any) {
			record_run();
			return;
		}
		for (std::size_t p = pos; p < order.size(); ++p) {
			const Rule& r = rules[order[p]];
			if (!applicable(r, rest))
				continue;
			Multiset next_rest = difference(rest, r.lhs);
			Multiset next_produced = produced + r.rhs;
			path.push_back({order[p], fsys.state_part(next_rest), fsys.state_part(next_produced),
			                fsys.register_part(r.lhs), fsys.register_part(r.rhs)});
			run(next_rest, next_produced, p);
			path.pop_back();
		}
	}
};

} // namespace

std::string FlowGraph::Arrow::label(const std::vector<Rule>& rules) const
{
	std::string deltas = annotate(plus, '+');
	auto m = annotate(minus, '-');
	if (!m.empty())
		deltas += (deltas.empty() ? "" : " ") + m;
	return deltas.empty() ? rules[rule].label : rules[rule].label + " / " + deltas;
}

std::optional<std::size_t> FlowGraph::square_of(const Multiset& config) const
{
	for (std::size_t i = 0; i < squares.size(); ++i)
		if (squares[i].config == config)
			return i;
	return std::nullopt;
}

std::optional<std::size_t> FlowGraph::follow(std::size_t square,
                                             const std::vector<std::size_t>& seq) const
{
	NodeRef at{true, square};
	std::optional<std::size_t> reached;
	for (auto r : seq) {
		auto it = std::find_if(arrows.begin(), arrows.end(),
		                       [&](const Arrow& a) { return a.from == at && a.rule == r; });
		if (it == arrows.end())
			return std::nullopt;
		at = {false, it->to};
		reached = it->to;
	}
	return reached;
}

FlowGraph build_flow_graph(const FsMpmrsSystem& fsys, std::size_t max_iters)
{
	auto states = state_configurations(fsys, max_iters);
	Builder b{fsys, {}, {}, {}, {}, {}, {}, {}, {}, {}};
	const auto& rules = fsys.base.rules;
	for (std::size_t i = 0; i < rules.size(); ++i)
		if (classify_rule(fsys, rules[i]) == RuleClass::PureState)
			b.order.push_back(i);
	for (std::size_t i = 0; i < rules.size(); ++i)
		if (classify_rule(fsys, rules[i]) == RuleClass::RegisterDependent)
			b.order.push_back(i);
	for (const auto& x : states) {
		b.squares.insert(x);
		b.state_configs.insert(x);
		b.origin = x;
		for (const auto& pad : register_paddings(fsys, x))
			b.run(x + pad, {}, 0);
	}

	FlowGraph g;
	g.rules = rules;
	g.rule_order = b.order;
	std::map<Multiset, std::size_t> sq_index;
	for (const auto& s : b.squares) {
		sq_index.emplace(s, g.squares.size());
		g.squares.push_back({s, b.state_configs.contains(s), true});
	}
	std::map<CircleKey, std::size_t> ci_index;
	for (const auto& key : b.circles) {
		const auto& [origin, unmarked, marked] = key;
		ci_index.emplace(key, g.circles.size());
		g.circles.push_back({sq_index.at(origin), unmarked, marked, sq_index.at(unmarked + marked), 1, {}});
	}
	auto node = [&](const NodeKey& k) {
		return k.first ? FlowGraph::NodeRef{true, sq_index.at(std::get<0>(k.second))}
		               : FlowGraph::NodeRef{false, ci_index.at(k.second)};
	};
	for (const auto& [from, rule, to, minus, plus] : b.arrows)
		g.arrows.push_back({node(from), ci_index.at(to), rule, minus, plus});
	for (const auto& [a, c] : b.one_step)
		g.one_step.emplace(sq_index.at(a), sq_index.at(c));

	// A square stays unfilled when every circle attached to it still enables
	// a pure-state rule, i.e. no run can stop there.
	std::vector<std::size_t> attached(g.squares.size(), 0), transient(g.squares.size(), 0);
	for (const auto& c : g.circles) {
		++attached[c.square];
		bool enabled = std::any_of(b.order.begin(), b.order.end(), [&](std::size_t r) {
			return classify_rule(fsys, rules[r]) == RuleClass::PureState &&
			       applicable(rules[r], c.unmarked);
		});
		transient[c.square] += enabled;
	}
	for (std::size_t s = 0; s < g.squares.size(); ++s)
		g.squares[s].filled = attached[s] == 0 || transient[s] < attached[s];

	for (const auto& c : b.candidates) {
		auto a = sq_index.at(c.from), via = sq_index.at(c.via), to = sq_index.at(c.to);
		if (!g.one_step.contains({a, via}) || !g.one_step.contains({a, to}))
			continue;
		bool only_path = std::all_of(g.one_step.begin(), g.one_step.end(), [&](const auto& e) {
			return e.second != via || c.on_path.contains(g.squares[e.first].config);
		});
		if (only_path)
			g.eliminable.insert({via, c.rules, to});
	}

	// Fold terminal circles attached to the same square whose incoming
	// arrows carry the same annotations.
	std::vector<bool> has_out(g.circles.size(), false);
	std::vector<std::set<std::tuple<std::size_t, Multiset, Multiset>>> incoming(g.circles.size());
	for (const auto& a : g.arrows) {
		if (!a.from.is_square)
			has_out[a.from.index] = true;
		incoming[a.to].emplace(a.rule, a.minus, a.plus);
	}
	std::map<std::pair<std::size_t, std::set<std::tuple<std::size_t, Multiset, Multiset>>>, std::size_t>
	    groups;
	std::vector<std::size_t> rep(g.circles.size());
	for (std::size_t i = 0; i < g.circles.size(); ++i) {
		rep[i] = i;
		if (has_out[i])
			continue;
		auto [it, fresh] = groups.try_emplace({g.circles[i].square, incoming[i]}, i);
		if (!fresh) {
			rep[i] = it->second;
			++g.circles[it->second].merged;
			g.circles[it->second].folded.emplace_back(g.circles[i].unmarked, g.circles[i].marked);
		}
	}
	std::vector<std::size_t> renumber(g.circles.size());
	std::vector<FlowGraph::Circle> kept;
	for (std::size_t i = 0; i < g.circles.size(); ++i)
		if (rep[i] == i) {
			renumber[i] = kept.size();
			kept.push_back(g.circles[i]);
		}
	g.circles = std::move(kept);
	std::set<std::tuple<FlowGraph::NodeRef, std::size_t, std::size_t>> seen;
	std::vector<FlowGraph::Arrow> arrows;
	for (auto a : g.arrows) {
		a.to = renumber[rep[a.to]];
		if (!a.from.is_square)
			a.from.index = renumber[rep[a.from.index]];
		if (seen.emplace(a.from, a.rule, a.to).second)
			arrows.push_back(std::move(a));
	}
	g.arrows = std::move(arrows);
	return g;
}

FlowGraph simplify(const FlowGraph& g)
{
	FlowGraph out = g;
	if (g.eliminable.empty())
		return out;
	std::vector<std::vector<std::size_t>> from_square(g.squares.size()), from_circle(g.circles.size());
	for (std::size_t i = 0; i < g.arrows.size(); ++i) {
		const auto& a = g.arrows[i];
		(a.from.is_square ? from_square : from_circle)[a.from.index].push_back(i);
	}
	std::set<std::size_t> sources;
	for (const auto& e : g.eliminable)
		sources.insert(e.from);
	std::vector<bool> alive(g.arrows.size(), true);
	for (auto s : sources) {
		// Arrows reachable from s survive iff some path prefix through them
		// has no eliminable prefix.
		std::set<std::size_t> touched, live;
		std::vector<std::size_t> labels;
		auto walk = [&](auto&& self, std::size_t arrow, bool dead) -> void {
			const auto& a = g.arrows[arrow];
			labels.push_back(a.rule);
			touched.insert(arrow);
			dead = dead || g.eliminable.contains({s, labels, g.circles[a.to].square});
			if (!dead)
				live.insert(arrow);
			if (labels.size() <= g.circles.size())
				for (auto next : from_circle[a.to])
					self(self, next, dead);
			labels.pop_back();
		};
		for (auto first : from_square[s])
			walk(walk, first, false);
		for (auto a : touched)
			if (!live.contains(a))
				alive[a] = false;
	}
	out.arrows.clear();
	for (std::size_t i = 0; i < g.arrows.size(); ++i)
		if (alive[i])
			out.arrows.push_back(g.arrows[i]);
	return out;
}

std::string emit_dot(const FlowGraph& g)
{
	std::ostringstream os;
	os << "digraph flow {\n";
	for (std::size_t i = 0; i < g.squares.size(); ++i) {
		const auto& s = g.squares[i];
		os << "  sq_" << i << " [shape=box" << (s.filled ? ", style=filled, fillcolor=gray80" : "")
		   << ", label=\"" << escape(s.config.str()) << "\"];\n";
	}
	for (std::size_t i = 0; i < g.circles.size(); ++i) {
		const auto& c = g.circles[i];
		os << "  ci_" << i << " [shape=ellipse, label=\"" << escape(circle_text(c)) << "\"];\n";
	}
	for (const auto& a : g.arrows)
		os << "  " << (a.from.is_square ? "sq_" : "ci_") << a.from.index << " -> ci_" << a.to
		   << " [label=\"" << escape(a.label(g.rules)) << "\"];\n";
	for (std::size_t i = 0; i < g.circles.size(); ++i)
		os << "  ci_" << i << " -> sq_" << g.circles[i].square << " [dir=none, style=dashed];\n";
	os << "}\n";
	return os.str();
}

} // namespace mpmrs
