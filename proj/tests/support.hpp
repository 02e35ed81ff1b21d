#pragma once

// Test-side oracles. These deliberately avoid the library's search code so
// they can check it.

#include "mpmrs/engine.hpp"
#include "mpmrs/register_machine.hpp"
#include "mpmrs/system.hpp"
#include "mpmrs/text_format.hpp"

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

using namespace mpmrs;

inline std::string data_path(const std::string& name)
{
	return std::string(MPMRS_DATA_DIR) + "/" + name;
}

inline FsMpmrsSystem example1()
{
	FsMpmrsSystem f;
	f.base.alphabet = make_symbol_set({"A", "B", "C", "D", "E", "F"});
	f.base.initial = Multiset::parse("A A B E E");
	f.base.rules = {parse_rule("r1", "A B", "C"), parse_rule("r2", "A E", "D"),
	                parse_rule("r3", "D C", "A A B F")};
	f.registers = make_symbol_set({"E", "F"});
	f.terminal = make_symbol_set({"F"});
	return f;
}

// Moves R1 into R0.
inline RegisterMachine m_move()
{
	RegisterMachine m;
	m.registers = 2;
	m.start = "q0";
	m.final_state = "qf";
	m.program = {{"q0", Instruction::decjz(1, "q1", "qf")}, {"q1", Instruction::inc(0, "q0")}};
	return m;
}

// R0 := R0 + 2*R1, then R1 cleared.
inline RegisterMachine m_double()
{
	RegisterMachine m;
	m.registers = 2;
	m.start = "a";
	m.final_state = "h";
	m.program = {{"a", Instruction::decjz(1, "b", "h")},
	             {"b", Instruction::inc(0, "c")},
	             {"c", Instruction::inc(0, "a")}};
	return m;
}

// R0 := R0 mod 2 parity into R1 (R1 += 1 when R0 is odd), R0 cleared.
inline RegisterMachine m_parity()
{
	RegisterMachine m;
	m.registers = 2;
	m.start = "e";
	m.final_state = "z";
	m.program = {{"e", Instruction::decjz(0, "o", "z")},
	             {"o", Instruction::decjz(0, "e", "w")},
	             {"w", Instruction::inc(1, "z")},
	             {"z", Instruction::stop()}};
	return m;
}

using StepSet = std::set<std::pair<std::vector<Multiset::Count>, Multiset>>;

// Every vector of rule multiplicities whose joint left side fits cfg and
// leaves no rule applicable to the remainder. Bounded by the per-rule
// saturation count; exhaustive product enumeration.
inline StepSet brute_force_maximal(const std::vector<Rule>& rules, const Multiset& cfg)
{
	std::vector<Multiset::Count> bound;
	for (const auto& r : rules) {
		Multiset::Count b = 0;
		while (is_submultiset(r.lhs.scaled(b + 1), cfg))
			++b;
		bound.push_back(b);
	}
	StepSet out;
	std::vector<Multiset::Count> k(rules.size(), 0);
	for (;;) {
		Multiset consumed, produced;
		for (std::size_t i = 0; i < rules.size(); ++i) {
			consumed += rules[i].lhs.scaled(k[i]);
			produced += rules[i].rhs.scaled(k[i]);
		}
		bool any = false;
		for (auto v : k)
			any = any || v > 0;
		if (any && is_submultiset(consumed, cfg)) {
			Multiset rest = difference(cfg, consumed);
			bool maximal = true;
			for (const auto& r : rules)
				maximal = maximal && !is_submultiset(r.lhs, rest);
			if (maximal)
				out.insert({k, rest + produced});
		}
		std::size_t i = 0;
		while (i < k.size() && k[i] == bound[i])
			k[i++] = 0;
		if (i == k.size())
			break;
		++k[i];
	}
	return out;
}

inline StepSet as_step_set(const std::vector<Step>& steps, std::size_t rule_count)
{
	StepSet out;
	for (const auto& s : steps) {
		std::vector<Multiset::Count> k(rule_count, 0);
		for (auto [i, n] : s.bag.uses)
			k[i] += n;
		out.insert({k, s.successor});
	}
	return out;
}

struct RandomCase {
	std::vector<Rule> rules;
	Multiset config;
};

// Up to 6 rules over up to 6 symbols, configurations of at most 12 symbols.
inline RandomCase random_case(std::mt19937_64& rng)
{
	auto pick = [&](std::size_t lo, std::size_t hi) {
		return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
	};
	std::size_t alphabet = pick(1, 6);
	auto random_multiset = [&](std::size_t lo, std::size_t hi) {
		Multiset m;
		std::size_t n = pick(lo, hi);
		for (std::size_t i = 0; i < n; ++i)
			m.add(Symbol(std::string(1, char('a' + pick(0, alphabet - 1)))));
		return m;
	};
	RandomCase c;
	std::size_t rule_count = pick(1, 6);
	for (std::size_t i = 0; i < rule_count; ++i)
		c.rules.push_back(make_rule("r" + std::to_string(i), random_multiset(1, 3), random_multiset(0, 3)));
	c.config = random_multiset(0, 12);
	return c;
}

inline Registers numbers(const std::string& text)
{
	Registers out;
	std::istringstream is(text);
	std::uint64_t v;
	while (is >> v)
		out.push_back(v);
	return out;
}

// Frozen input files: "input ; steps ; final registers" per line.
struct FrozenInput {
	Registers input;
	std::size_t steps = 0;
	Registers final_regs;
};

inline std::vector<FrozenInput> read_frozen_inputs(const std::string& path)
{
	std::vector<FrozenInput> out;
	std::istringstream is(read_file(path));
	std::string line;
	while (std::getline(is, line)) {
		if (line.empty() || line[0] == '#')
			continue;
		auto a = line.find(';');
		auto b = line.find(';', a + 1);
		out.push_back({numbers(line.substr(0, a)), std::stoull(line.substr(a + 1, b - a - 1)),
		               numbers(line.substr(b + 1))});
	}
	return out;
}

inline std::vector<Registers> inputs_of(const std::vector<FrozenInput>& v)
{
	std::vector<Registers> out;
	for (const auto& f : v)
		out.push_back(f.input);
	return out;
}

} // namespace testing_support
