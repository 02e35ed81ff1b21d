#include "mpmrs/universal23.hpp"

#include "mpmrs/compiler.hpp"
#include "mpmrs/error.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace mpmrs {

namespace {

constexpr std::array<U23Row, 23> table{{
    {"phase", "X X", "X T"},
    {"D0", "I J K P Q R0", "L Q L Q J J M"},
    {"D1", "L Q L Q J J N R1", "L P L P J J M R7"},
    {"D2", "I I K P Q R2", "J J K P Q"},
    {"D3", "q27 C3 R3", "J J K P Q"},
    {"D4", "J J K R4", "J J L L M"},
    {"D5", "J J O R5", "C5'"},
    {"D6", "I J L R6", "C6'"},
    {"D7", "I I L Q L Q N R7", "I J L O R1"},
    {"A", "I T T", "J X X"},
    {"B", "J J M T T", "J J N X X"},
    {"C", "L P", "L Q"},
    {"a", "L Q L Q J J N T T", "J J L O R6 X X"},
    {"b", "L C5' T T", "J J L O R6 X X"},
    {"c", "O C6' T T", "I I L Q L Q N R5 X X"},
    {"d", "Q L Q N C6' T T", "J J K Q Q R6 X X"},
    {"e", "q27 C3 T T", "L Q L Q J J N R0 X X"},
    {"f", "q16 J J O C5' C5' T T", "L Q L Q J J N R2 R3 X X"},
    {"g", "q16 C5' C5' C5' T T", "q16 J J O J J O J J O X X"},
    {"1", "J J L O T T", "I J L O X X"},
    {"5", "J J K Q Q T", "q16 J J O J J O J J O X X"},
    {"8", "q16 J J O J J O J J O", "I I K P Q M X X"},
    {"12", "q16 J J O J J O J J O", "q27 C3 X X"},
}};

constexpr const char* seed_encoding = "L Q L Q J J N X X X";
constexpr std::size_t register_count = 8;

Symbol reg(std::size_t i)
{
	return Symbol("R" + std::to_string(i));
}

Registers register_vector(const Multiset& cfg)
{
	Registers out(register_count, 0);
	for (std::size_t i = 0; i < register_count; ++i)
		out[i] = cfg.count(reg(i));
	return out;
}

std::string show(const Registers& regs)
{
	std::string out = "(";
	for (std::size_t i = 0; i < regs.size(); ++i)
		out += (i ? "," : "") + std::to_string(regs[i]);
	return out + ")";
}

std::string join(const std::set<std::string>& names)
{
	std::string out = "{";
	for (const auto& n : names)
		out += (out.size() > 1 ? ", " : "") + n;
	return out + "}";
}

} // namespace

std::span<const U23Row> u23_table()
{
	return table;
}

FsMpmrsSystem u23_system()
{
	FsMpmrsSystem sys;
	for (const auto& row : table)
		sys.base.rules.push_back(parse_rule(row.label, row.lhs, row.rhs));
	for (std::size_t i = 0; i < register_count; ++i)
		sys.registers.insert(reg(i));
	sys.terminal.insert(reg(1));
	sys.base.alphabet = sys.registers;
	for (auto name : {"C3", "C5'", "C6'", "q16", "q27", "T", "I", "J", "K", "L", "M", "N", "O", "P",
	                  "Q", "X"})
		sys.base.alphabet.insert(Symbol(name));
	sys.base.initial = Multiset::parse(seed_encoding);
	StateEncoding enc;
	for (std::size_t i = 0; i < register_count; ++i)
		enc.registers.push_back(reg(i));
	enc.states.emplace("q1", Multiset::parse(seed_encoding));
	sys.encoding = std::move(enc);
	return sys;
}

Multiset initial_config(const Registers& regs)
{
	if (regs.size() > register_count)
		throw Error(Error::Kind::Precondition, "at most 8 registers");
	Multiset m = Multiset::parse(seed_encoding);
	for (std::size_t i = 0; i < regs.size(); ++i)
		if (regs[i] > 0)
			m.add(reg(i), regs[i]);
	return m;
}

bool is_base_phase(const Multiset& cfg)
{
	static const Symbol x("X"), t("T");
	return cfg.count(x) == 3 && cfg.count(t) == 0;
}

StateEncoding U23Dictionary::encoding() const
{
	StateEncoding enc;
	for (std::size_t i = 0; i < register_count; ++i)
		enc.registers.push_back(reg(i));
	enc.states = entries;
	return enc;
}

U23Dictionary derive_dictionary(const std::vector<Registers>& samples, const DictionaryOptions& opts)
{
	const FsMpmrsSystem sys = u23_system();
	const RegisterMachine m = u22();
	U23Dictionary dict;

	struct Observation {
		std::set<std::string> candidates;
		std::string where;
	};
	std::map<Multiset, std::vector<Observation>> seen;

	for (const auto& input : samples) {
		std::vector<RmConfiguration> trace{initial_configuration(m, input)};
		auto run = rm_run(m, trace.front(), opts.max_rm_steps, true);
		trace.insert(trace.end(), run.trace.begin(), run.trace.end());

		Multiset cfg = initial_config(input);
		seen[sys.state_part(cfg)].push_back({{trace[0].state}, show(input) + " step 0"});
		std::size_t ptr = 0;
		std::size_t matched = 1;
		for (std::size_t step = 1; step <= opts.max_mpmrs_steps; ++step) {
			auto steps = maximal_steps(sys.base, cfg);
			if (steps.empty())
				break;
			auto differs = std::find_if(steps.begin() + 1, steps.end(), [&](const Step& s) {
				return s.successor != steps[0].successor;
			});
			if (differs != steps.end()) {
				std::ostringstream os;
				os << "input " << show(input) << ": " << steps.size() << " maximal steps at step "
				   << step << " from " << cfg.str() << ", e.g. " << steps[0].bag.str(sys.base.rules)
				   << " and " << differs->bag.str(sys.base.rules);
				dict.findings.push_back(os.str());
				break;
			}
			cfg = std::move(steps[0].successor);
			if (!is_base_phase(cfg))
				continue;
			auto regs = register_vector(cfg);
			std::set<std::string> names;
			std::size_t first = 0;
			for (std::size_t j = ptr + 1; j < trace.size() && j <= ptr + opts.window; ++j)
				if (trace[j].regs == regs) {
					if (names.empty())
						first = j;
					names.insert(trace[j].state);
				}
			if (names.empty()) {
				dict.log.push_back("input " + show(input) + " step " + std::to_string(step) +
				                   ": base-phase " + sys.state_part(cfg).str() +
				                   " matches no nearby oracle state");
				continue;
			}
			ptr = first;
			++matched;
			seen[sys.state_part(cfg)].push_back(
			    {std::move(names), show(input) + " step " + std::to_string(step)});
		}
		dict.log.push_back("input " + show(input) + ": " + std::to_string(matched) +
		                   " base-phase configurations matched, oracle position " +
		                   std::to_string(ptr));
	}

	std::map<std::string, std::vector<Multiset>> by_state;
	for (const auto& [s, obs] : seen) {
		std::set<std::string> common = obs.front().candidates;
		for (const auto& o : obs) {
			std::set<std::string> keep;
			std::set_intersection(common.begin(), common.end(), o.candidates.begin(),
			                      o.candidates.end(), std::inserter(keep, keep.end()));
			common = std::move(keep);
		}
		if (common.empty()) {
			dict.consistent = false;
			std::ostringstream os;
			os << "configuration " << s.str() << " matches no common state:";
			for (const auto& o : obs)
				os << "\n  " << o.where << " -> " << join(o.candidates);
			throw Error(Error::Kind::Derivation, os.str());
		}
		if (common.size() > 1) {
			dict.ambiguous.emplace(s, common);
			continue;
		}
		by_state[*common.begin()].push_back(s);
		dict.log.push_back(*common.begin() + " <- " + s.str() + " (" +
		                   std::to_string(obs.size()) + " observations)");
	}
	for (auto& [q, configs] : by_state) {
		if (configs.size() > 1) {
			dict.consistent = false;
			std::string msg = "state " + q + " has several encodings:";
			for (const auto& c : configs)
				msg += " [" + c.str() + "]";
			throw Error(Error::Kind::Derivation, msg);
		}
		dict.entries.emplace(q, configs.front());
	}
	for (auto a = dict.entries.begin(); a != dict.entries.end(); ++a)
		for (auto b = std::next(a); b != dict.entries.end(); ++b)
			if (a->second == b->second)
				dict.injective = false;
	auto seed = dict.entries.find("q1");
	if (seed == dict.entries.end() || seed->second != Multiset::parse(seed_encoding))
		throw Error(Error::Kind::Derivation, "derived encoding of q1 differs from the seed");

	if (opts.check_state_space) {
		auto space = state_configurations(sys, opts.state_space_iters);
		std::set<Multiset> known(space.begin(), space.end());
		dict.in_state_space = std::all_of(dict.entries.begin(), dict.entries.end(),
		                                  [&](const auto& e) { return known.contains(e.second); });
	}
	return dict;
}

UniversalRun run_universal(const Registers& regs, std::size_t max_steps)
{
	const FsMpmrsSystem sys = u23_system();
	UniversalRun out;
	Multiset cfg = initial_config(regs);
	auto& o = out.outcome;
	for (;;) {
		auto steps = maximal_steps(sys.base, cfg);
		if (steps.empty()) {
			o.kind = RunOutcome::Kind::Stable;
			out.result = sys.terminal_part(cfg);
			break;
		}
		if (o.steps_taken == max_steps) {
			o.kind = RunOutcome::Kind::BoundExceeded;
			break;
		}
		if (!out.branching_step)
			for (const auto& s : steps)
				if (s.successor != steps[0].successor) {
					out.branching_step = o.steps_taken + 1;
					for (const auto& alt : steps)
						out.branching.push_back(alt.bag.str(sys.base.rules) + " -> " +
						                        alt.successor.str());
					break;
				}
		cfg = std::move(steps[0].successor);
		++o.steps_taken;
	}
	o.config = std::move(cfg);
	o.configs_explored = o.steps_taken + 1;
	return out;
}

FsMpmrsSystem u23_with_dictionary(const U23Dictionary& dict)
{
	FsMpmrsSystem sys = u23_system();
	sys.encoding = dict.encoding();
	return sys;
}

Verdict lockstep_universal(const U23Dictionary& dict, const std::vector<Registers>& inputs,
                           const CosimOptions& opts)
{
	return cosimulate(u22(), u23_with_dictionary(dict), inputs, opts);
}

std::vector<TokenViolation> phase_token_violations(const std::vector<Registers>& inputs,
                                                   std::size_t max_depth, std::size_t max_configs)
{
	const FsMpmrsSystem sys = u23_system();
	const Symbol x("X"), t("T");
	std::vector<TokenViolation> out;
	for (const auto& input : inputs) {
		std::set<Multiset> visited{initial_config(input)};
		std::vector<Multiset> frontier{initial_config(input)};
		for (std::size_t depth = 0; !frontier.empty() && depth <= max_depth; ++depth) {
			std::vector<Multiset> next;
			for (const auto& cfg : frontier) {
				if (cfg.count(x) + cfg.count(t) != 3) {
					out.push_back({input, cfg, depth});
					continue;
				}
				if (depth == max_depth)
					continue;
				for (auto& s : maximal_steps(sys.base, cfg))
					if (visited.size() < max_configs && visited.insert(s.successor).second)
						next.push_back(std::move(s.successor));
			}
			frontier = std::move(next);
		}
	}
	std::stable_sort(out.begin(), out.end(),
	                 [](const TokenViolation& a, const TokenViolation& b) { return a.depth < b.depth; });
	return out;
}

} // namespace mpmrs
