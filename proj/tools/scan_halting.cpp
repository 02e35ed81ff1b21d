// Scans small U22 inputs and writes a frozen sample of halting ones.
//   scan-halting [max-value] [max-steps] [count]

#include "mpmrs/register_machine.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>

using namespace mpmrs;

int main(int argc, char** argv)
{
	std::uint64_t max_value = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2;
	std::size_t max_steps = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 100'000;
	std::size_t count = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 16;

	auto m = u22();
	struct Hit {
		Registers input;
		RmRun run;
	};
	std::vector<Hit> hits;
	std::size_t scanned = 0;
	Registers regs(m.registers, 0);
	for (;;) {
		++scanned;
		auto run = rm_run(m, initial_configuration(m, regs), max_steps);
		if (run.kind == RmRun::Kind::Halted)
			hits.push_back({regs, run});
		std::size_t i = 0;
		while (i < regs.size() && regs[i] == max_value)
			regs[i++] = 0;
		if (i == regs.size())
			break;
		++regs[i];
	}
	std::stable_sort(hits.begin(), hits.end(),
	                 [](const Hit& a, const Hit& b) { return a.run.steps < b.run.steps; });

	// Evenly spaced over the step-count order, so short and long runs both appear.
	std::vector<const Hit*> picked;
	for (std::size_t k = 0; k < count && !hits.empty(); ++k) {
		const Hit* h = &hits[count == 1 ? 0 : k * (hits.size() - 1) / (count - 1)];
		if (picked.empty() || picked.back() != h)
			picked.push_back(h);
	}

	std::cout << "# U22 inputs R0..R7 with values 0.." << max_value << ": " << scanned << " scanned, "
	          << hits.size() << " halt within " << max_steps << " steps\n"
	          << "# input ; steps ; final registers\n";
	for (const Hit* h : picked) {
		for (std::size_t i = 0; i < h->input.size(); ++i)
			std::cout << (i ? " " : "") << h->input[i];
		std::cout << " ; " << h->run.steps << " ;";
		for (auto v : h->run.config.regs)
			std::cout << ' ' << v;
		std::cout << '\n';
	}
}
