#include "mpmrs/cosim.hpp"

#include "mpmrs/compiler.hpp"
#include "mpmrs/engine.hpp"
#include "mpmrs/error.hpp"

#include <atomic>
#include <deque>
#include <set>
#include <sstream>
#include <thread>

namespace mpmrs {

std::string_view verdict_name(InputVerdict::Kind k) noexcept
{
	switch (k) {
	case InputVerdict::Kind::Equivalent: return "equivalent";
	case InputVerdict::Kind::Mismatch: return "mismatch";
	case InputVerdict::Kind::Inconclusive: return "inconclusive";
	}
	return "?";
}

std::size_t Verdict::count(InputVerdict::Kind k) const
{
	std::size_t n = 0;
	for (const auto& v : inputs)
		n += v.kind == k;
	return n;
}

namespace {

std::string show(const Registers& regs)
{
	std::string out = "(";
	for (std::size_t i = 0; i < regs.size(); ++i)
		out += (i ? "," : "") + std::to_string(regs[i]);
	return out + ")";
}

Multiset registers_as_multiset(const std::vector<Symbol>& order, const Registers& regs)
{
	Multiset m;
	for (std::size_t i = 0; i < order.size() && i < regs.size(); ++i)
		if (regs[i] > 0)
			m.add(order[i], regs[i]);
	return m;
}

} // namespace

std::string Verdict::str() const
{
	std::ostringstream os;
	os << verdict_name(kind) << ": " << count(InputVerdict::Kind::Equivalent) << " equivalent, "
	   << count(InputVerdict::Kind::Mismatch) << " mismatch, "
	   << count(InputVerdict::Kind::Inconclusive) << " inconclusive\n";
	for (const auto& v : inputs) {
		os << "  input " << show(v.input) << ": " << verdict_name(v.kind) << " after "
		   << v.mpmrs_steps << " steps, " << v.checkpoints << " checkpoints, " << v.rm_steps
		   << " instructions";
		if (v.terminal)
			os << ", result " << v.terminal->str();
		if (!v.reason.empty())
			os << " (" << v.reason << ")";
		os << '\n';
		if (v.kind == InputVerdict::Kind::Mismatch && !v.witness.empty()) {
			os << "    witness:\n";
			for (const auto& w : v.witness)
				os << "    " << w << '\n';
		}
	}
	return os.str();
}

InputVerdict lockstep(const RegisterMachine& m, const FsMpmrsSystem& sys, const Registers& input,
                      const CosimOptions& opts)
{
	if (!sys.encoding)
		throw Error(Error::Kind::Precondition, "co-simulation needs a state encoding");
	const auto& enc = *sys.encoding;
	InputVerdict v;
	v.input = input;

	std::vector<RmConfiguration> trace{initial_configuration(m, input)};
	try {
		auto run = rm_run(m, trace.front(), opts.max_rm_steps, true);
		trace.insert(trace.end(), run.trace.begin(), run.trace.end());
		v.rm_halted = run.kind == RmRun::Kind::Halted;
		v.rm_final = run.config.regs;
	} catch (const Error& e) {
		v.reason = std::string("oracle failed: ") + e.what();
		return v;
	}
	const std::size_t mpmrs_bound =
	    opts.max_mpmrs_steps ? opts.max_mpmrs_steps : 64 * trace.size() + 64;

	std::deque<std::string> recent;
	auto note = [&](std::string line) {
		recent.push_back(std::move(line));
		if (recent.size() > opts.witness_length)
			recent.pop_front();
	};
	auto fail = [&](std::string reason) {
		v.kind = InputVerdict::Kind::Mismatch;
		v.reason = std::move(reason);
		v.witness.assign(recent.begin(), recent.end());
		return v;
	};

	Multiset cfg = with_input(sys, input).base.initial;
	std::size_t ptr = 0;
	auto check_registers = [&](std::size_t at) {
		return sys.register_part(cfg) == registers_as_multiset(enc.registers, trace[at].regs);
	};
	note("start " + cfg.str() + " | oracle " + trace[0].state + " " + show(trace[0].regs));
	{
		const std::string* q = enc.state_of(sys.state_part(cfg));
		if (!q || *q != trace[0].state)
			return fail("initial configuration does not encode " + trace[0].state);
		if (!check_registers(0))
			return fail("initial registers differ");
		++v.checkpoints;
	}

	for (;;) {
		auto steps = maximal_steps(sys.base, cfg);
		if (steps.empty()) {
			v.terminal = sys.terminal_part(cfg);
			if (!v.rm_halted)
				return fail("system stable at " + cfg.str() + " while the oracle runs on from " +
				            trace[ptr].state);
			for (std::size_t k = ptr + 1; k + 1 < trace.size() && !opts.window; ++k)
				if (enc.states.contains(trace[k].state))
					return fail("system stopped before encoded state " + trace[k].state);
			Multiset expected;
			for (std::size_t i = 0; i < enc.registers.size(); ++i)
				if (sys.terminal.contains(enc.registers[i]) && v.rm_final[i] > 0)
					expected.add(enc.registers[i], v.rm_final[i]);
			if (*v.terminal != expected)
				return fail("result " + v.terminal->str() + " differs from oracle " + expected.str());
			v.rm_steps = trace.size() - 1;
			v.kind = InputVerdict::Kind::Equivalent;
			return v;
		}
		for (std::size_t k = 1; k < steps.size(); ++k) {
			if (steps[k].successor == steps[0].successor)
				continue;
			note("alternative " + steps[k].bag.str(sys.base.rules) + " -> " +
			     steps[k].successor.str());
			note("chosen      " + steps[0].bag.str(sys.base.rules) + " -> " +
			     steps[0].successor.str());
			bool state_level = sys.state_part(steps[k].successor) != sys.state_part(steps[0].successor);
			return fail(std::string(state_level ? "state-level" : "register-level") +
			            " nondeterminism at step " + std::to_string(v.mpmrs_steps + 1) + " from " +
			            cfg.str());
		}
		if (v.mpmrs_steps == mpmrs_bound) {
			v.reason = "step bound reached";
			return v;
		}
		cfg = std::move(steps[0].successor);
		++v.mpmrs_steps;
		note(std::to_string(v.mpmrs_steps) + ": " + steps[0].bag.str(sys.base.rules) + " -> " +
		     cfg.str());

		const std::string* q = enc.state_of(sys.state_part(cfg));
		if (!q)
			continue;
		std::size_t j = ptr + 1;
		std::size_t limit = opts.window ? std::min(trace.size(), ptr + 1 + *opts.window) : trace.size();
		for (; j < limit && trace[j].state != *q; ++j)
			if (!opts.window && enc.states.contains(trace[j].state))
				return fail("checkpoint " + *q + " skips encoded oracle state " + trace[j].state +
				            " at instruction " + std::to_string(j));
		if (j >= limit) {
			if (!v.rm_halted && limit == trace.size()) {
				v.reason = "oracle bound reached";
				v.rm_steps = ptr;
				return v;
			}
			return fail("checkpoint " + *q + " has no matching oracle step after instruction " +
			            std::to_string(ptr));
		}
		ptr = j;
		note("  checkpoint " + *q + " = oracle instruction " + std::to_string(j) + " " +
		     show(trace[j].regs));
		if (!check_registers(j))
			return fail("registers " + sys.register_part(cfg).str() + " differ from oracle " +
			            show(trace[j].regs) + " at " + *q);
		++v.checkpoints;
		v.rm_steps = ptr;
	}
}

Verdict cosimulate(const RegisterMachine& m, const FsMpmrsSystem& sys,
                   std::span<const Registers> inputs, const CosimOptions& opts)
{
	if (!sys.encoding)
		throw Error(Error::Kind::Precondition, "co-simulation needs a state encoding");
	Verdict out;
	out.inputs.resize(inputs.size());
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i; (i = next++) < inputs.size();)
			out.inputs[i] = lockstep(m, sys, inputs[i], opts);
	};
	std::size_t n = std::max<std::size_t>(1, std::min(opts.threads, inputs.size()));
	if (n == 1) {
		worker();
	} else {
		std::vector<std::jthread> pool;
		for (std::size_t t = 0; t < n; ++t)
			pool.emplace_back(worker);
	}
	for (const auto& v : out.inputs) {
		if (v.kind == InputVerdict::Kind::Mismatch)
			out.kind = InputVerdict::Kind::Mismatch;
		else if (v.kind == InputVerdict::Kind::Inconclusive &&
		         out.kind == InputVerdict::Kind::Equivalent)
			out.kind = InputVerdict::Kind::Inconclusive;
	}
	return out;
}

} // namespace mpmrs
