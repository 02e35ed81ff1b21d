#include "support.hpp"

#include "mpmrs/compiler.hpp"
#include "mpmrs/engine.hpp"
#include "mpmrs/notation.hpp"
#include "mpmrs/universal23.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mpmrs;
using namespace testing_support;

namespace {

Multiset ms(std::string_view s)
{
	return Multiset::parse(s);
}

// The bag of a step as a rule sequence in the graph's rule order.
std::vector<std::size_t> sequence(const FlowGraph& g, const RuleBag& bag)
{
	std::vector<std::size_t> seq;
	for (auto r : g.rule_order)
		for (auto [i, n] : bag.uses)
			if (i == r)
				seq.insert(seq.end(), n, r);
	return seq;
}

// Every maximal step from every state configuration, with every register
// padding, is a path in the graph ending at a circle attached to the
// successor's state configuration.
void check_sound(const FsMpmrsSystem& sys, const FlowGraph& g)
{
	for (const auto& state : state_configurations(sys, 200))
		for (const auto& pad : register_paddings(sys, state)) {
			auto from = g.square_of(state);
			REQUIRE(from);
			for (const auto& step : maximal_steps(sys.base, state + pad)) {
				auto circle = g.follow(*from, sequence(g, step.bag));
				REQUIRE_MESSAGE(circle, state.str() << " " << step.bag.str(sys.base.rules));
				CHECK(g.squares[g.circles[*circle].square].config == sys.state_part(step.successor));
			}
		}
}

std::size_t count(const std::string& text, const std::string& needle)
{
	std::size_t n = 0;
	for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1))
		++n;
	return n;
}

} // namespace

TEST_SUITE("notation") {

TEST_CASE("the three-rule system")
{
	auto g = build_flow_graph(example1());
	for (auto s : {"A^2 B", "A C", "C D"}) {
		auto i = g.square_of(ms(s));
		REQUIRE(i);
		CHECK(g.squares[*i].state_configuration);
		CHECK(g.squares[*i].filled);
	}
	auto abd = g.square_of(ms("A B D"));
	REQUIRE(abd);
	CHECK_FALSE(g.squares[*abd].state_configuration);
	CHECK(g.squares.size() == 5);
	CHECK(g.circles.size() == 5);

	std::vector<std::string> labels;
	for (const auto& a : g.arrows)
		labels.push_back(a.label(g.rules));
	CHECK(std::count(labels.begin(), labels.end(), "r1") == 1);
	CHECK(std::count(labels.begin(), labels.end(), "r2 / -E") == 4);
	CHECK(std::count(labels.begin(), labels.end(), "r3 / +F") == 1);
	CHECK(g.rule_order == std::vector<std::size_t>{0, 2, 1});

	auto dot = emit_dot(g);
	CHECK(dot.find("label=\"r2 / -E\"") != std::string::npos);
	CHECK(count(dot, "shape=box") >= 3);
	CHECK(dot.find("label=\"C ~D | ~C ~D\"") != std::string::npos);
	check_sound(example1(), g);
}

TEST_CASE("simplification removes the dead r2 arrow out of A C")
{
	auto g = build_flow_graph(example1());
	auto ac = *g.square_of(ms("A C"));
	auto s = simplify(g);
	CHECK(s.arrows.size() == g.arrows.size() - 1);
	bool still_there = false;
	for (const auto& a : s.arrows)
		still_there = still_there || (a.from.is_square && a.from.index == ac);
	CHECK_FALSE(still_there);
	CHECK(s.squares.size() == g.squares.size());
	CHECK(s.circles.size() == g.circles.size());
	CHECK(emit_dot(simplify(s)) == emit_dot(s));

	// The computation from the initial configuration survives.
	auto ex = example1();
	std::vector<Multiset> frontier{ex.base.initial};
	while (!frontier.empty()) {
		auto c = frontier.back();
		frontier.pop_back();
		for (const auto& st : maximal_steps(ex.base, c)) {
			auto circle = s.follow(*s.square_of(ex.state_part(c)), sequence(s, st.bag));
			REQUIRE(circle);
			CHECK(s.squares[s.circles[*circle].square].config == ex.state_part(st.successor));
			frontier.push_back(st.successor);
		}
	}
}

TEST_CASE("nothing to eliminate leaves the graph unchanged")
{
	FsMpmrsSystem inc;
	inc.base.initial = ms("q");
	inc.base.rules = {parse_rule("r", "q", "R q1")};
	inc.registers = make_symbol_set({"R"});
	auto g = build_flow_graph(inc);
	CHECK(emit_dot(simplify(g)) == emit_dot(g));

	// Single increment: the start square, one circle, one arrow with +R.
	REQUIRE(g.arrows.size() == 1);
	CHECK(g.circles.size() == 1);
	CHECK(g.arrows[0].label(g.rules) == "r / +R");
	CHECK(g.squares[g.arrows[0].from.index].config == ms("q"));
	CHECK(g.squares[g.circles[0].square].config == ms("q1"));
}

TEST_CASE("an empty system draws only its initial square")
{
	FsMpmrsSystem empty;
	empty.base.initial = ms("s");
	auto g = build_flow_graph(empty);
	CHECK(g.squares.size() == 1);
	CHECK(g.arrows.empty());
	auto dot = emit_dot(g);
	CHECK(count(dot, "sq_") == 1);
	CHECK(count(dot, "->") == 0);
}

TEST_CASE("compiled machines are drawn soundly")
{
	for (auto level : {"none", "p1", "p1,p3", "p1,p3,p4"}) {
		CompilationOptions o;
		o.passes = parse_passes(level);
		for (const auto& m : {m_move(), m_parity()}) {
			auto sys = compile(m, o).system;
			auto g = build_flow_graph(sys);
			check_sound(sys, g);
			auto s = simplify(g);
			CHECK(emit_dot(simplify(s)) == emit_dot(s));
		}
	}
}

TEST_CASE("output is deterministic")
{
	auto a = emit_dot(build_flow_graph(example1()));
	auto b = emit_dot(build_flow_graph(example1()));
	CHECK(a == b);
	CHECK(a.rfind("digraph", 0) == 0);
}

TEST_CASE("universal system graph")
{
	auto g = build_flow_graph(u23_system());
	CHECK(g.squares.size() == 724);
	CHECK(g.circles.size() == 1179);
	CHECK(g.arrows.size() == 1399);
	auto s = simplify(g);
	CHECK(s.arrows.size() == 1371);
	CHECK(simplify(s).arrows.size() == s.arrows.size());
}

}
