#include "mpmrs/engine.hpp"

#include "mpmrs/error.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace mpmrs {

Multiset::Count RuleBag::total() const noexcept
{
	Multiset::Count n = 0;
	for (const auto& u : uses)
		n += u.second;
	return n;
}

Multiset RuleBag::consumed(std::span<const Rule> rules) const
{
	Multiset out;
	for (const auto& [i, k] : uses)
		out += rules[i].lhs.scaled(k);
	return out;
}

Multiset RuleBag::produced(std::span<const Rule> rules) const
{
	Multiset out;
	for (const auto& [i, k] : uses)
		out += rules[i].rhs.scaled(k);
	return out;
}

std::string RuleBag::str(std::span<const Rule> rules) const
{
	std::string out = "{";
	for (const auto& [i, k] : uses) {
		if (out.size() > 1)
			out += ", ";
		out += rules[i].label;
		if (k > 1)
			out += "^" + std::to_string(k);
	}
	return out + "}";
}

std::strong_ordering operator<=>(const RuleBag& a, const RuleBag& b)
{
	std::size_t i = 0, j = 0;
	Multiset::Count used_a = 0, used_b = 0;
	while (i < a.uses.size() && j < b.uses.size()) {
		if (auto c = a.uses[i].first <=> b.uses[j].first; c != 0)
			return c;
		Multiset::Count left_a = a.uses[i].second - used_a;
		Multiset::Count left_b = b.uses[j].second - used_b;
		Multiset::Count common = std::min(left_a, left_b);
		used_a += common;
		used_b += common;
		if (used_a == a.uses[i].second) {
			++i;
			used_a = 0;
		}
		if (used_b == b.uses[j].second) {
			++j;
			used_b = 0;
		}
	}
	bool a_done = i == a.uses.size();
	bool b_done = j == b.uses.size();
	if (a_done && b_done)
		return std::strong_ordering::equal;
	return a_done ? std::strong_ordering::less : std::strong_ordering::greater;
}

bool applicable(const Rule& rule, const Multiset& cfg) noexcept
{
	return is_submultiset(rule.lhs, cfg);
}

Multiset apply_once(const Rule& rule, const Multiset& cfg)
{
	if (!applicable(rule, cfg))
		throw Error(Error::Kind::Precondition,
		            "rule '" + rule.label + "' is not applicable to " + cfg.str());
	return difference(cfg, rule.lhs) + rule.rhs;
}

namespace {

bool shares_symbol(const Multiset& a, const Multiset& b)
{
	auto x = a.entries();
	auto y = b.entries();
	std::size_t i = 0, j = 0;
	while (i < x.size() && j < y.size()) {
		if (x[i].first == y[j].first)
			return true;
		if (x[i].first < y[j].first)
			++i;
		else
			++j;
	}
	return false;
}

struct BagSearch {
	std::span<const Rule> rules;
	std::vector<std::size_t> candidates;
	std::vector<bool> contested; // a later candidate may consume this one's symbols
	std::vector<Multiset::Count> counts;
	std::vector<Step> out;

	void descend(std::size_t level, const Multiset& remainder)
	{
		if (level == candidates.size()) {
			for (std::size_t c : candidates)
				if (applicable(rules[c], remainder))
					return;
			Step step;
			Multiset produced;
			for (std::size_t k = 0; k < candidates.size(); ++k) {
				if (counts[k] == 0)
					continue;
				step.bag.uses.emplace_back(candidates[k], counts[k]);
				produced += rules[candidates[k]].rhs.scaled(counts[k]);
			}
			step.successor = remainder + produced;
			out.push_back(std::move(step));
			return;
		}
		const Rule& rule = rules[candidates[level]];
		Multiset::Count most = max_multiplicity(rule.lhs, remainder);
		// Without a later competitor, leaving the rule enabled can never be
		// repaired, so only the saturating multiplicity is maximal.
		Multiset::Count least = contested[level] ? 0 : most;
		for (Multiset::Count k = most + 1; k-- > least;) {
			counts[level] = k;
			descend(level + 1, k == 0 ? remainder : difference(remainder, rule.lhs.scaled(k)));
		}
		counts[level] = 0;
	}
};

} // namespace

std::vector<Step> maximal_steps(std::span<const Rule> rules, const Multiset& cfg)
{
	BagSearch search{rules, {}, {}, {}, {}};
	for (std::size_t i = 0; i < rules.size(); ++i)
		if (applicable(rules[i], cfg))
			search.candidates.push_back(i);
	if (search.candidates.empty())
		return {};
	const std::size_t n = search.candidates.size();
	search.contested.assign(n, false);
	for (std::size_t a = 0; a < n; ++a)
		for (std::size_t b = a + 1; b < n && !search.contested[a]; ++b)
			search.contested[a] = shares_symbol(rules[search.candidates[a]].lhs,
			                                    rules[search.candidates[b]].lhs);
	search.counts.assign(n, 0);
	search.descend(0, cfg);
	std::sort(search.out.begin(), search.out.end(),
	          [](const Step& x, const Step& y) {
		          if (auto c = x.bag <=> y.bag; c != 0)
			          return c < 0;
		          return x.successor < y.successor;
	          });
	return std::move(search.out);
}

std::vector<Step> maximal_steps(const MpmrsSystem& sys, const Multiset& cfg)
{
	return maximal_steps(sys.rules, cfg);
}

bool is_stable(std::span<const Rule> rules, const Multiset& cfg) noexcept
{
	return std::none_of(rules.begin(), rules.end(),
	                    [&](const Rule& r) { return applicable(r, cfg); });
}

bool is_stable(const MpmrsSystem& sys, const Multiset& cfg) noexcept
{
	return is_stable(sys.rules, cfg);
}

RunOutcome run_seeded(const MpmrsSystem& sys, std::uint64_t seed, std::size_t max_steps)
{
	std::mt19937_64 rng(seed);
	RunOutcome out;
	Multiset cfg = sys.initial;
	for (;;) {
		auto steps = maximal_steps(sys, cfg);
		if (steps.empty()) {
			out.kind = RunOutcome::Kind::Stable;
			break;
		}
		if (out.steps_taken == max_steps) {
			out.kind = RunOutcome::Kind::BoundExceeded;
			break;
		}
		auto& chosen = steps[rng() % steps.size()];
		cfg = chosen.successor;
		out.trace.push_back({std::move(chosen.bag), cfg});
		++out.steps_taken;
	}
	out.config = std::move(cfg);
	out.configs_explored = out.steps_taken + 1;
	return out;
}

RunOutcome run_exhaustive(const MpmrsSystem& sys, std::size_t max_steps, std::size_t max_configs)
{
	RunOutcome out;
	out.kind = RunOutcome::Kind::ResultSet;
	std::map<Multiset, std::size_t> ids{{sys.initial, 0}};
	std::vector<std::vector<std::size_t>> edges(1);
	std::set<Multiset> stable;
	std::vector<Multiset> frontier{sys.initial};
	bool truncated = false;
	std::size_t depth = 0;
	while (!frontier.empty()) {
		std::vector<Multiset> next;
		for (const auto& cfg : frontier) {
			auto steps = maximal_steps(sys, cfg);
			if (steps.empty()) {
				stable.insert(cfg);
				continue;
			}
			if (depth == max_steps || ids.size() > max_configs) {
				truncated = true;
				continue;
			}
			const std::size_t from = ids.at(cfg);
			for (auto& s : steps) {
				auto it = ids.find(s.successor);
				if (it == ids.end()) {
					if (ids.size() >= max_configs) {
						truncated = true;
						break;
					}
					it = ids.emplace(s.successor, edges.size()).first;
					edges.emplace_back();
					next.push_back(std::move(s.successor));
				}
				edges[from].push_back(it->second);
			}
		}
		if (next.empty())
			break;
		frontier = std::move(next);
		++depth;
	}
	// Kahn's algorithm: vertices left over after peeling sources lie on cycles.
	std::vector<std::size_t> indegree(edges.size(), 0);
	for (const auto& targets : edges)
		for (auto t : targets)
			++indegree[t];
	std::vector<std::size_t> ready;
	for (std::size_t v = 0; v < edges.size(); ++v)
		if (indegree[v] == 0)
			ready.push_back(v);
	std::size_t peeled = 0;
	while (!ready.empty()) {
		auto v = ready.back();
		ready.pop_back();
		++peeled;
		for (auto t : edges[v])
			if (--indegree[t] == 0)
				ready.push_back(t);
	}
	out.cycle_detected = peeled != edges.size();
	out.results.assign(stable.begin(), stable.end());
	out.complete = !truncated;
	out.steps_taken = depth;
	out.configs_explored = ids.size();
	return out;
}

ResultSet results(const FsMpmrsSystem& fsys, std::size_t max_steps, std::size_t max_configs)
{
	auto run = run_exhaustive(fsys.base, max_steps, max_configs);
	std::set<Multiset> projected;
	for (const auto& cfg : run.results)
		projected.insert(fsys.terminal_part(cfg));
	return {{projected.begin(), projected.end()}, run.complete};
}

RuleClass classify_rule(const FsMpmrsSystem& fsys, const Rule& rule)
{
	return project(rule.lhs, fsys.registers).empty() ? RuleClass::PureState
	                                                 : RuleClass::RegisterDependent;
}

std::vector<Violation> validate(const FsMpmrsSystem& fsys)
{
	std::vector<Violation> out;
	const auto& alphabet = fsys.base.alphabet;
	for (const auto& s : symbols_used(fsys.base))
		if (!alphabet.contains(s))
			out.push_back({s.name(), "symbol is not in the alphabet"});
	for (const auto& r : fsys.registers)
		if (!alphabet.contains(r))
			out.push_back({r.name(), "register is not in the alphabet"});
	if (std::includes(fsys.registers.begin(), fsys.registers.end(), alphabet.begin(),
	                  alphabet.end()))
		out.push_back({"registers", "register alphabet is not a proper subset of the alphabet"});
	for (const auto& t : fsys.terminal)
		if (!fsys.registers.contains(t))
			out.push_back({t.name(), "terminal register is not a register"});
	std::set<std::string> labels;
	for (const auto& r : fsys.base.rules) {
		if (!labels.insert(r.label).second)
			out.push_back({r.label, "duplicate rule label"});
		if (r.lhs.empty())
			out.push_back({r.label, "empty left-hand side"});
		else if (fsys.state_part(r.lhs).empty())
			out.push_back({r.label, "left-hand side has no non-register symbol"});
	}
	if (fsys.encoding) {
		const auto& enc = fsys.encoding->states;
		for (const auto& [q, cfg] : enc)
			if (!fsys.register_part(cfg).empty())
				out.push_back({q, "state encoding contains register symbols"});
		for (auto a = enc.begin(); a != enc.end(); ++a)
			for (auto b = enc.begin(); b != enc.end(); ++b)
				if (a != b && is_submultiset(a->second, b->second))
					out.push_back({a->first, "encoding is included in the encoding of " + b->first});
	}
	return out;
}

std::vector<Multiset> register_paddings(const FsMpmrsSystem& fsys, const Multiset& state)
{
	// Largest number of register symbols any rule consumes.
	std::map<Symbol, Multiset::Count> need;
	std::map<Symbol, Multiset::Count> bound;
	for (const auto& rule : fsys.base.rules) {
		Multiset regs = fsys.register_part(rule.lhs);
		if (regs.empty())
			continue;
		Multiset core = fsys.state_part(rule.lhs);
		Multiset::Count apps = max_multiplicity(core, state);
		for (const auto& [r, n] : regs.entries()) {
			need[r] = std::max(need[r], n);
			if (apps > 0)
				bound[r] = checked_add(bound[r], checked_mul(n, apps));
		}
	}
	std::vector<Multiset> out{Multiset{}};
	for (const auto& [r, consumed] : bound) {
		// consumed + need behaves like an unbounded supply.
		Multiset::Count top = checked_add(consumed, need[r]);
		std::vector<Multiset> grown;
		grown.reserve(out.size() * (top + 1));
		for (const auto& base : out)
			for (Multiset::Count c = 0; c <= top; ++c) {
				Multiset m = base;
				m.add(r, c);
				grown.push_back(std::move(m));
			}
		out = std::move(grown);
	}
	return out;
}

std::vector<Multiset> state_successors(const FsMpmrsSystem& fsys, const Multiset& state)
{
	std::set<Multiset> out;
	for (const auto& pad : register_paddings(fsys, state))
		for (const auto& step : maximal_steps(fsys.base, state + pad))
			out.insert(fsys.state_part(step.successor));
	return {out.begin(), out.end()};
}

std::vector<Multiset> state_configurations(const FsMpmrsSystem& fsys, std::size_t max_iters,
                                           std::size_t max_configs)
{
	std::set<Multiset> known{fsys.state_part(fsys.base.initial)};
	std::vector<Multiset> frontier(known.begin(), known.end());
	for (std::size_t iter = 0; !frontier.empty(); ++iter) {
		if (iter == max_iters || known.size() > max_configs)
			throw Error(Error::Kind::Bound,
			            "state space not closed within bound (" + std::to_string(known.size()) +
			                " state configurations after " + std::to_string(iter) + " rounds)");
		std::vector<Multiset> next;
		for (const auto& x : frontier)
			for (auto& y : state_successors(fsys, x))
				if (known.insert(y).second)
					next.push_back(std::move(y));
		frontier = std::move(next);
	}
	return {known.begin(), known.end()};
}

} // namespace mpmrs
