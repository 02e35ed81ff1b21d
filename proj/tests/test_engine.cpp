#include "support.hpp"

#include "mpmrs/engine.hpp"
#include "mpmrs/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace mpmrs;
using namespace testing_support;

namespace {

Multiset ms(std::string_view s)
{
	return Multiset::parse(s);
}

std::set<Multiset> as_set(const std::vector<Multiset>& v)
{
	return {v.begin(), v.end()};
}

} // namespace

TEST_SUITE("engine") {

TEST_CASE("applicability and single application")
{
	auto ex = example1();
	const auto& r = ex.base.rules;
	CHECK(applicable(r[0], ms("A^2 B E^2")));
	CHECK_FALSE(applicable(r[2], ms("A^2 B E^2")));
	CHECK(applicable(r[1], ms("A E")));
	CHECK(apply_once(r[0], ms("A^2 B E^2")) == ms("A C E^2"));
	CHECK(apply_once(parse_rule("inc", "q", "R_i q1"), ms("q")) == ms("R_i q1"));
	CHECK(apply_once(parse_rule("id", "a", "a"), ms("a^5")) == ms("a^5"));
	CHECK_THROWS_AS(apply_once(r[2], ms("A")), Error);
}

TEST_CASE("maximal steps of the three-rule system")
{
	auto ex = example1();
	auto steps = maximal_steps(ex.base, ms("A^2 B E^2"));
	REQUIRE(steps.size() == 2);
	CHECK(steps[0].bag.str(ex.base.rules) == "{r1, r2}");
	CHECK(steps[0].successor == ms("C D E"));
	CHECK(steps[1].bag.str(ex.base.rules) == "{r2^2}");
	CHECK(steps[1].successor == ms("B D^2"));

	auto next = maximal_steps(ex.base, ms("D C E"));
	REQUIRE(next.size() == 1);
	CHECK(next[0].bag.str(ex.base.rules) == "{r3}");
	CHECK(next[0].successor == ms("A^2 B E F"));

	CHECK(maximal_steps(ex.base, ms("A C F^2")).empty());
}

TEST_CASE("stability")
{
	auto ex = example1();
	CHECK(is_stable(ex.base, ms("A C F^2")));
	CHECK_FALSE(is_stable(ex.base, ms("A^2 B E^2")));
	CHECK(is_stable(ex.base, Multiset{}));
}

TEST_CASE("stability iff no maximal step, on random systems")
{
	std::mt19937_64 rng(3);
	for (int i = 0; i < 300; ++i) {
		auto c = random_case(rng);
		CHECK(is_stable(c.rules, c.config) == maximal_steps(c.rules, c.config).empty());
	}
}

TEST_CASE("maximal steps agree with brute-force enumeration")
{
	std::mt19937_64 rng(2024);
	for (int i = 0; i < 200; ++i) {
		auto c = random_case(rng);
		auto got = maximal_steps(c.rules, c.config);
		auto expect = brute_force_maximal(c.rules, c.config);
		CHECK(as_step_set(got, c.rules.size()) == expect);
		CHECK(got.size() == expect.size()); // no duplicates
		for (const auto& s : got) {
			// Maximality invariant: nothing fits the unconsumed remainder.
			auto rest = difference(c.config, s.bag.consumed(c.rules));
			for (const auto& r : c.rules)
				CHECK_FALSE(is_submultiset(r.lhs, rest));
			CHECK(s.successor == rest + s.bag.produced(c.rules));
		}
	}
}

TEST_CASE("successor set is invariant under rule permutation")
{
	std::mt19937_64 rng(99);
	for (int i = 0; i < 200; ++i) {
		auto c = random_case(rng);
		std::set<Multiset> base;
		for (const auto& s : maximal_steps(c.rules, c.config))
			base.insert(s.successor);
		auto shuffled = c.rules;
		std::shuffle(shuffled.begin(), shuffled.end(), rng);
		std::set<Multiset> perm;
		for (const auto& s : maximal_steps(shuffled, c.config))
			perm.insert(s.successor);
		CHECK(base == perm);
	}
}

TEST_CASE("seeded runs")
{
	auto ex = example1();
	bool saw_long = false, saw_short = false;
	for (std::uint64_t seed = 0; seed < 64; ++seed) {
		auto out = run_seeded(ex.base, seed);
		REQUIRE(out.kind == RunOutcome::Kind::Stable);
		auto again = run_seeded(ex.base, seed);
		CHECK(again.config == out.config);
		CHECK(again.steps_taken == out.steps_taken);
		if (out.config == ms("A C F^2")) {
			saw_long = true;
			CHECK(out.steps_taken == 5);
			REQUIRE(out.trace.size() == 5);
			CHECK(out.trace[0].config == ms("C D E"));
			CHECK(out.trace[1].config == ms("A^2 B E F"));
			CHECK(out.trace[2].config == ms("C D F"));
			CHECK(out.trace[3].config == ms("A^2 B F^2"));
		} else {
			CHECK(out.config == ms("B D^2"));
			CHECK(out.steps_taken == 1);
			saw_short = true;
		}
	}
	CHECK(saw_long);
	CHECK(saw_short);

	auto bounded = run_seeded(ex.base, 0, 0);
	CHECK(bounded.kind == RunOutcome::Kind::BoundExceeded);
	CHECK(bounded.config == ex.base.initial);
}

TEST_CASE("exhaustive runs")
{
	auto ex = example1();
	auto out = run_exhaustive(ex.base);
	CHECK(out.kind == RunOutcome::Kind::ResultSet);
	CHECK(out.complete);
	CHECK_FALSE(out.cycle_detected);
	CHECK(out.results == std::vector<Multiset>{ms("A C F^2"), ms("B D^2")});

	MpmrsSystem stable{make_symbol_set({"a"}), ms("a"), {parse_rule("r", "b", "a")}};
	auto s = run_exhaustive(stable);
	CHECK(s.complete);
	CHECK(s.results == std::vector<Multiset>{ms("a")});

	MpmrsSystem loop{make_symbol_set({"a"}), ms("a"), {parse_rule("r", "a", "a")}};
	auto l = run_exhaustive(loop);
	CHECK(l.complete);
	CHECK(l.results.empty());
	CHECK(l.cycle_detected);

	MpmrsSystem growing{make_symbol_set({"a"}), ms("a"), {parse_rule("r", "a", "a a")}};
	auto g = run_exhaustive(growing, 50, 1000);
	CHECK_FALSE(g.complete);
}

TEST_CASE("result sets")
{
	auto ex = example1();
	auto r = results(ex);
	CHECK(r.complete);
	CHECK(r.values == std::vector<Multiset>{Multiset{}, ms("F^2")});

	FsMpmrsSystem idle;
	idle.base.initial = ms("a");
	idle.base.rules = {parse_rule("r", "b", "a")};
	CHECK(results(idle).values == std::vector<Multiset>{Multiset{}});

	FsMpmrsSystem f3;
	f3.base.initial = ms("F^3");
	f3.base.rules = {parse_rule("r", "b", "a")};
	f3.registers = make_symbol_set({"F"});
	f3.terminal = make_symbol_set({"F"});
	CHECK(results(f3).values == std::vector<Multiset>{ms("F^3")});
}

TEST_CASE("rule classes and validation")
{
	auto ex = example1();
	CHECK(classify_rule(ex, ex.base.rules[0]) == RuleClass::PureState);
	CHECK(classify_rule(ex, ex.base.rules[1]) == RuleClass::RegisterDependent);
	FsMpmrsSystem checker;
	checker.registers = make_symbol_set({"R_i"});
	CHECK(classify_rule(checker, parse_rule("c", "C_i R_i", "C_i'")) == RuleClass::RegisterDependent);

	CHECK(validate(ex).empty());
	auto bad = ex;
	bad.base.rules.push_back(parse_rule("rx", "E", "F"));
	CHECK(validate(bad).size() == 1);
	auto bad_terminal = ex;
	bad_terminal.terminal = make_symbol_set({"A"});
	CHECK_FALSE(validate(bad_terminal).empty());
}

TEST_CASE("state configurations")
{
	auto ex = example1();
	auto sc = as_set(state_configurations(ex, 100));
	// The three configurations named for this system, plus B D^2: the
	// stable end of the r2^2 branch is reachable too.
	CHECK(sc.count(ms("A^2 B")));
	CHECK(sc.count(ms("A C")));
	CHECK(sc.count(ms("C D")));
	CHECK(sc == std::set<Multiset>{ms("A^2 B"), ms("A C"), ms("B D^2"), ms("C D")});

	// Oracle: state parts seen in exhaustive runs from A^2 B with any E, F
	// contents up to 4 are contained in the fixed point.
	for (std::uint64_t e = 0; e <= 4; ++e)
		for (std::uint64_t f = 0; f <= 2; ++f) {
			MpmrsSystem s = ex.base;
			s.initial = ms("A^2 B") + Multiset::of(Symbol("E"), e) + Multiset::of(Symbol("F"), f);
			std::vector<Multiset> frontier{s.initial};
			std::set<Multiset> seen{s.initial};
			while (!frontier.empty()) {
				auto c = frontier.back();
				frontier.pop_back();
				CHECK(sc.count(ex.state_part(c)));
				for (const auto& st : maximal_steps(s, c))
					if (seen.insert(st.successor).second)
						frontier.push_back(st.successor);
			}
		}

	FsMpmrsSystem none;
	none.base.initial = ms("A E");
	none.registers = make_symbol_set({"E"});
	CHECK(state_configurations(none, 10) == std::vector<Multiset>{ms("A")});

	FsMpmrsSystem unbounded;
	unbounded.base.initial = ms("a");
	unbounded.base.rules = {parse_rule("r", "a", "a a")};
	CHECK_THROWS_AS(state_configurations(unbounded, 20), Error);
}

}
