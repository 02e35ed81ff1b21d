#include "support.hpp"

#include "mpmrs/compiler.hpp"
#include "mpmrs/engine.hpp"
#include "mpmrs/error.hpp"

#include <doctest.h>

#include <set>

using namespace mpmrs;
using namespace testing_support;

namespace {

CompiledSystem compile_with(const RegisterMachine& m, std::string_view passes, bool faithful = false)
{
	CompilationOptions o;
	o.passes = parse_passes(passes);
	o.faithful_halt = faithful;
	return compile(m, o);
}

std::pair<std::size_t, std::size_t> count_size(const CompiledSystem& c)
{
	auto s = stats(c.system.base);
	return {s.rule_count, s.max_rule_size};
}

const Rule* rule(const CompiledSystem& c, std::string_view label)
{
	for (const auto& r : c.system.base.rules)
		if (r.label == label)
			return &r;
	return nullptr;
}

const char* const all_levels[] = {"none", "p1", "p1,p2", "p1,p3", "p1,p3,p4", "p1,p2,p3", "p1,p2,p3,p4"};

} // namespace

TEST_SUITE("compiler") {

TEST_CASE("pass lists")
{
	CHECK(parse_passes("none").empty());
	CHECK(parse_passes("p1,p3") == std::vector<Pass>{Pass::P1, Pass::P3});
	CHECK_THROWS_AS(parse_passes("p5"), Error);
	CHECK_THROWS_AS(compile_with(m_move(), "p2"), Error);
	CHECK_THROWS_AS(compile_with(m_move(), "p1,p4"), Error);
}

TEST_CASE("basic scheme")
{
	RegisterMachine one;
	one.registers = 1;
	one.start = "q0";
	one.final_state = "qf";
	one.program = {{"q0", Instruction::inc(0, "qf")}};
	auto c = compile_basic(one);
	REQUIRE(c.system.base.rules.size() == 1);
	CHECK(c.system.base.rules[0].lhs == Multiset::parse("q0"));
	CHECK(c.system.base.rules[0].rhs == Multiset::parse("R0 qf"));

	RegisterMachine test;
	test.registers = 1;
	test.start = "q";
	test.final_state = "qf";
	test.program = {{"q", Instruction::decjz(0, "qf", "qf")}};
	CompilationOptions faithful;
	faithful.faithful_halt = true;
	auto t = compile_basic(test, faithful);
	REQUIRE(t.system.base.rules.size() == 5);
	CHECK(*rule(t, "q.enter") == parse_rule("q.enter", "q", "C_q q'"));
	CHECK(*rule(t, "q.wait") == parse_rule("q.wait", "q'", "q''"));
	CHECK(*rule(t, "q.dec") == parse_rule("q.dec", "C_q R0", "C_q'"));
	CHECK(*rule(t, "q.succ") == parse_rule("q.succ", "C_q' q''", "qf"));
	CHECK(*rule(t, "q.zero") == parse_rule("q.zero", "C_q q''", "qf"));
	CHECK(compile_basic(test).system.base.rules.size() == 4);
}

TEST_CASE("u22 sizes and counts at every pass level")
{
	struct Row {
		const char* passes;
		bool faithful;
		std::size_t rules, size;
	};
	const Row rows[] = {
	    {"none", false, 73, 3},      {"none", true, 74, 3},      {"p1", false, 59, 5},
	    {"p1,p2", false, 56, 5},     {"p1,p3", false, 47, 6},    {"p1,p3,p4", false, 42, 6},
	    {"p1,p2,p3", false, 44, 7},  {"p1,p2,p3,p4", false, 39, 7},
	};
	for (const auto& r : rows) {
		auto c = compile_with(u22(), r.passes, r.faithful);
		auto [rules, size] = count_size(c);
		CHECK_MESSAGE(rules == r.rules, r.passes);
		CHECK_MESSAGE(size == r.size, r.passes);
		CHECK(validate(c.system).empty());
		CHECK(c.report.stages.back().rule_count == r.rules);
	}
	// 9 increments, 13 tests of five rules, one zero exit into qf dropped.
	CHECK(9 + 13 * 5 == 74);
}

TEST_CASE("checker encoding")
{
	auto c = compile_with(u22(), "p1");
	CHECK(c.report.eliminated_states == std::vector<std::string>{"q31"});
	CHECK(c.system.encoding->states.at("q16") == Multiset::parse("C_q16 q16"));
	CHECK(c.system.encoding->states.at("q3") == Multiset::parse("q3"));
	CHECK_FALSE(c.system.encoding->states.count("q31"));
	CHECK(*rule(c, "q30.inc") == parse_rule("q30.inc", "q30", "C_q32 R2 R3 q32"));

	RegisterMachine chain;
	chain.registers = 1;
	chain.start = "q1";
	chain.final_state = "qf";
	chain.program = {{"q1", Instruction::inc(0, "q2")},
	                 {"q2", Instruction::inc(0, "q3")},
	                 {"q3", Instruction::decjz(0, "qf", "qf")}};
	auto ch = compile_with(chain, "p1", true);
	CHECK(*rule(ch, "q1.inc") == parse_rule("q1.inc", "q1", "C_q3 R0^2 q3"));
	CHECK_FALSE(rule(ch, "q2.inc"));
}

TEST_CASE("increment fusion")
{
	auto cands = fusion_candidates(compile_with(u22(), "p1"), 5);
	CHECK(cands == std::vector<std::string>{"q3", "q6", "q9", "q12", "q22", "q33"});
	auto c = compile_with(u22(), "p1,p2");
	CHECK(c.report.fused_states == std::vector<std::string>{"q3", "q6", "q9"});
	CHECK(*rule(c, "q1.succ") == parse_rule("q1.succ", "C_q1' q1'", "C_q1 R7 q1"));

	CompilationOptions cap3;
	cap3.passes = {Pass::P1, Pass::P2};
	cap3.fusion_size_cap = 3;
	CHECK(compile(u22(), cap3).report.fused_states.empty());
	CHECK(fusion_candidates(compile_with(u22(), "p1"), 3).empty());

	CompilationOptions all;
	all.passes = {Pass::P1, Pass::P2};
	all.fusion_limit.reset();
	auto every = compile(u22(), all);
	CHECK(every.report.fused_states.size() == 6);
	CHECK(stats(every.system.base).rule_count == 53);

	CompilationOptions pick;
	pick.passes = {Pass::P1, Pass::P2};
	pick.fusion_states = std::vector<std::string>{"q12"};
	CHECK(compile(u22(), pick).report.fused_states == std::vector<std::string>{"q12"});
}

TEST_CASE("frozen calibration file agrees with the candidate set")
{
	auto text = read_file(data_path("p2_calibration.txt"));
	CHECK(text.find("q3 q6 q9 q12 q22 q33") != std::string::npos);
	CHECK(text.find("{q3 q6 q9}") != std::string::npos);
	// Every 3-subset of the 6 candidates gives 56.
	CHECK(text.find("# 20 subsets") != std::string::npos);
}

TEST_CASE("phases")
{
	auto p1 = compile_with(u22(), "p1");
	auto p3 = compile_with(u22(), "p1,p3");
	CHECK(stats(p1.system.base).rule_count - stats(p3.system.base).rule_count == 12);
	CHECK(*rule(p3, "phase") == parse_rule("phase", "S", "S'"));
	CHECK(p3.system.encoding->states.at("q16") == Multiset::parse("C_q16 S q16"));
	CHECK_FALSE(rule(p3, "q16.wait"));

	auto inc_only = compile_with(m_move(), "p1,p3");
	CHECK(rule(inc_only, "phase"));
	RegisterMachine no_tests;
	no_tests.registers = 1;
	no_tests.start = "a";
	no_tests.final_state = "f";
	no_tests.program = {{"a", Instruction::inc(0, "f")}};
	CHECK(compile_with(no_tests, "p1,p3").system.base.rules.size() == 1);
}

TEST_CASE("shared checkers")
{
	auto p3 = compile_with(u22(), "p1,p3");
	auto p4 = compile_with(u22(), "p1,p3,p4");
	std::set<std::size_t> tested;
	for (const auto& [q, ins] : u22().program)
		if (ins.op == Instruction::Op::DecJz)
			tested.insert(ins.reg);
	CHECK(tested.size() == 8);
	std::size_t checker_rules = 0;
	for (const auto& r : p4.system.base.rules)
		checker_rules += r.label.size() > 4 && r.label.substr(r.label.size() - 4) == ".dec";
	CHECK(checker_rules == tested.size());
	CHECK(stats(p3.system.base).rule_count - stats(p4.system.base).rule_count == 13 - tested.size());
	CHECK(p4.system.encoding->states.at("q16") == Multiset::parse("C5 S q16"));

	auto single = compile_with(m_parity(), "p1,p3,p4");
	std::size_t n = 0;
	for (const auto& r : single.system.base.rules)
		n += r.label == "C0.dec";
	CHECK(n == 1);
}

TEST_CASE("rule counts never increase along the pipeline")
{
	auto p1 = stats(compile_with(u22(), "p1").system.base).rule_count;
	auto p2 = stats(compile_with(u22(), "p1,p2").system.base).rule_count;
	auto p3 = stats(compile_with(u22(), "p1,p2,p3").system.base).rule_count;
	auto p4 = stats(compile_with(u22(), "p1,p2,p3,p4").system.base).rule_count;
	CHECK(p1 >= p2);
	CHECK(p2 >= p3);
	CHECK(p3 >= p4);
}

TEST_CASE("encodings are pairwise non-included after every pass")
{
	for (const auto& m : {u22(), u22_patched(), m_move(), m_double(), m_parity()})
		for (auto level : all_levels) {
			auto c = compile_with(m, level);
			const auto& st = c.system.encoding->states;
			for (const auto& [p, ep] : st)
				for (const auto& [q, eq] : st)
					if (p != q)
						CHECK_MESSAGE(!is_submultiset(ep, eq), std::string(level) << ": " << p << " within " << q);
		}
}

TEST_CASE("state configurations converge on compiled systems")
{
	const std::pair<const char*, std::size_t> expect[] = {
	    {"none", 60}, {"p1", 46}, {"p1,p3", 46}, {"p1,p3,p4", 46}};
	for (auto [level, n] : expect)
		CHECK_MESSAGE(state_configurations(compile_with(u22(), level).system, 200).size() == n, level);
	for (auto level : all_levels) {
		auto c = compile_with(u22(), level);
		auto sc = state_configurations(c.system, 200);
		std::set<Multiset> set(sc.begin(), sc.end());
		// q29 is unreachable; qf is only entered through the dropped zero exit.
		for (const auto& [q, e] : c.system.encoding->states)
			if (q != "q29" && q != "qf")
				CHECK_MESSAGE(set.count(e), std::string(level) << ": " << q);
	}
}

TEST_CASE("inputs and name clashes")
{
	auto c = compile(m_move(), {}, {2, 3});
	CHECK(c.system.base.initial == Multiset::parse("q0 R0^2 R1^3"));
	CHECK(with_input(c.system, {1, 0}).base.initial == Multiset::parse("q0 R0"));

	auto clash = m_move();
	clash.program[0].first = "R0";
	clash.start = "R0";
	clash.program[1].second.next = "R0";
	CHECK_THROWS_AS(compile_basic(clash), Error);
}

TEST_CASE("natural order")
{
	CHECK(natural_less("q9", "q10"));
	CHECK_FALSE(natural_less("q10", "q9"));
	CHECK(natural_less("a", "b"));
}

}
