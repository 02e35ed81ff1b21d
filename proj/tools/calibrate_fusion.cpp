// Enumerates subsets of the P2-eligible increment states and lists those for
// which P1+P2 on U22 yields a target (rules, size).
//   calibrate-fusion [rules] [size] [cap]

#include "mpmrs/compiler.hpp"

#include <cstdlib>
#include <iostream>

using namespace mpmrs;

int main(int argc, char** argv)
{
	std::size_t want_rules = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 56;
	std::size_t want_size = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 5;
	std::size_t cap = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 5;

	CompilationOptions p1;
	p1.passes = {Pass::P1};
	auto base = compile(u22(), p1);
	auto candidates = fusion_candidates(base, cap);

	std::cout << "# eligible under cap " << cap << ":";
	for (const auto& q : candidates)
		std::cout << ' ' << q;
	std::cout << "\n# subsets giving " << want_rules << " rules, max size " << want_size << '\n';

	std::size_t found = 0;
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << candidates.size()); ++mask) {
		CompilationOptions opts;
		opts.passes = {Pass::P1, Pass::P2};
		opts.fusion_size_cap = cap;
		opts.fusion_states.emplace();
		for (std::size_t i = 0; i < candidates.size(); ++i)
			if (mask >> i & 1)
				opts.fusion_states->push_back(candidates[i]);
		auto s = compile(u22(), opts).report.stages.back();
		if (s.rule_count != want_rules || s.max_rule_size != want_size)
			continue;
		++found;
		std::cout << '{';
		for (std::size_t i = 0; i < opts.fusion_states->size(); ++i)
			std::cout << (i ? " " : "") << (*opts.fusion_states)[i];
		std::cout << "}\n";
	}
	std::cout << "# " << found << " subsets\n";
}
