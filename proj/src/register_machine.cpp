#include "mpmrs/register_machine.hpp"

#include "mpmrs/error.hpp"
#include "mpmrs/multiset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mpmrs {

Instruction Instruction::inc(std::size_t reg, std::string next)
{
	return {Op::Inc, reg, std::move(next), {}};
}

Instruction Instruction::dec(std::size_t reg, std::string next)
{
	return {Op::Dec, reg, std::move(next), {}};
}

Instruction Instruction::branch(std::size_t reg, std::string nonzero, std::string zero)
{
	return {Op::Branch, reg, std::move(nonzero), std::move(zero)};
}

Instruction Instruction::decjz(std::size_t reg, std::string success, std::string zero)
{
	return {Op::DecJz, reg, std::move(success), std::move(zero)};
}

Instruction Instruction::stop()
{
	return {};
}

std::string_view op_name(Instruction::Op op) noexcept
{
	switch (op) {
	case Instruction::Op::Inc: return "INC";
	case Instruction::Op::Dec: return "DEC";
	case Instruction::Op::Branch: return "BRANCH";
	case Instruction::Op::DecJz: return "DECJZ";
	case Instruction::Op::Stop: return "STOP";
	}
	return "?";
}

const Instruction* RegisterMachine::find(const std::string& state) const
{
	for (const auto& [q, ins] : program)
		if (q == state)
			return &ins;
	return nullptr;
}

std::vector<std::string> RegisterMachine::states() const
{
	std::vector<std::string> out;
	std::set<std::string> seen;
	auto note = [&](const std::string& q) {
		if (!q.empty() && seen.insert(q).second)
			out.push_back(q);
	};
	note(start);
	for (const auto& [q, ins] : program) {
		note(q);
		note(ins.next);
		note(ins.alt);
	}
	note(final_state);
	return out;
}

std::optional<RmConfiguration> rm_step(const RegisterMachine& m, const RmConfiguration& c)
{
	if (c.state == m.final_state)
		return std::nullopt;
	const Instruction* ins = m.find(c.state);
	if (!ins || ins->op == Instruction::Op::Stop)
		throw Error(Error::Kind::Validation, "state " + c.state + " has no instruction");
	if (ins->reg >= c.regs.size())
		throw Error(Error::Kind::Validation, "state " + c.state + " uses register R" +
		                                         std::to_string(ins->reg) + " out of range");
	RmConfiguration out = c;
	auto& r = out.regs[ins->reg];
	switch (ins->op) {
	case Instruction::Op::Inc:
		r = checked_add(r, 1);
		out.state = ins->next;
		break;
	case Instruction::Op::Dec:
		if (r == 0)
			throw Error(Error::Kind::Execution,
			            "DEC on empty register R" + std::to_string(ins->reg) + " at " + c.state);
		--r;
		out.state = ins->next;
		break;
	case Instruction::Op::Branch:
		out.state = r > 0 ? ins->next : ins->alt;
		break;
	case Instruction::Op::DecJz:
		if (r > 0) {
			--r;
			out.state = ins->next;
		} else {
			out.state = ins->alt;
		}
		break;
	case Instruction::Op::Stop:
		break;
	}
	return out;
}

RmRun rm_run(const RegisterMachine& m, const RmConfiguration& input, std::size_t max_steps,
             bool record_trace)
{
	RmRun run;
	run.config = input;
	for (;;) {
		if (run.config.state == m.final_state) {
			run.kind = RmRun::Kind::Halted;
			return run;
		}
		if (run.steps == max_steps) {
			run.kind = RmRun::Kind::BoundExceeded;
			return run;
		}
		run.config = *rm_step(m, run.config);
		++run.steps;
		if (record_trace)
			run.trace.push_back(run.config);
	}
}

RmConfiguration initial_configuration(const RegisterMachine& m, const Registers& regs)
{
	if (regs.size() > m.registers)
		throw Error(Error::Kind::Precondition,
		            "input has " + std::to_string(regs.size()) + " registers, machine has " +
		                std::to_string(m.registers));
	RmConfiguration c{m.start, regs};
	c.regs.resize(m.registers, 0);
	return c;
}

std::vector<Diagnostic> validate_machine(const RegisterMachine& m)
{
	using K = Diagnostic::Kind;
	std::vector<Diagnostic> out;
	std::map<std::string, std::size_t> listed;
	for (const auto& [q, ins] : m.program) {
		if (++listed[q] == 2)
			out.push_back({K::Nondeterministic, q, "more than one instruction"});
		if (ins.op != Instruction::Op::Stop && ins.reg >= m.registers)
			out.push_back({K::RegisterOutOfRange, q,
			               "register R" + std::to_string(ins.reg) + " out of range"});
		if (ins.op == Instruction::Op::Stop && q != m.final_state)
			out.push_back({K::StopOutsideFinal, q, "STOP outside the final state"});
	}
	if (m.start.empty())
		out.push_back({K::MissingStart, "", "no start state"});
	if (m.final_state.empty())
		out.push_back({K::MissingFinal, "", "no final state"});
	for (const auto& q : m.states())
		if (q != m.final_state && !listed.contains(q))
			out.push_back({K::MissingInstruction, q, "state has no instruction"});

	std::set<std::string> reached{m.start};
	std::vector<std::string> work{m.start};
	while (!work.empty()) {
		auto q = std::move(work.back());
		work.pop_back();
		for (const auto& [p, ins] : m.program) {
			if (p != q)
				continue;
			for (const auto* t : {&ins.next, &ins.alt})
				if (!t->empty() && reached.insert(*t).second)
					work.push_back(*t);
		}
	}
	for (const auto& q : m.states())
		if (!reached.contains(q))
			out.push_back({K::Unreachable, q, "unreachable from " + m.start});
	return out;
}

RegisterMachine u22()
{
	using I = Instruction;
	RegisterMachine m;
	m.registers = 8;
	m.start = "q1";
	m.final_state = "qf";
	m.program = {
	    {"q1", I::decjz(1, "q3", "q6")},   {"q3", I::inc(7, "q1")},
	    {"q4", I::decjz(5, "q6", "q7")},   {"q6", I::inc(6, "q4")},
	    {"q7", I::decjz(6, "q9", "q4")},   {"q9", I::inc(5, "q10")},
	    {"q10", I::decjz(7, "q12", "q13")}, {"q12", I::inc(1, "q7")},
	    {"q13", I::decjz(6, "q33", "q1")},  {"q33", I::inc(6, "q14")},
	    {"q14", I::decjz(4, "q1", "q16")},  {"q16", I::decjz(5, "q18", "q23")},
	    {"q18", I::decjz(5, "q20", "q27")}, {"q20", I::decjz(5, "q22", "q30")},
	    {"q22", I::inc(4, "q16")},         {"q23", I::decjz(2, "q32", "q25")},
	    {"q25", I::decjz(0, "q1", "q32")},  {"q27", I::decjz(3, "q32", "q1")},
	    {"q29", I::inc(0, "q1")},          {"q30", I::inc(2, "q31")},
	    {"q31", I::inc(3, "q32")},         {"q32", I::decjz(4, "q1", "qf")},
	};
	return m;
}

RegisterMachine u22_patched()
{
	RegisterMachine m = u22();
	for (auto& [q, ins] : m.program)
		if (q == "q25")
			ins.next = "q29";
	return m;
}

} // namespace mpmrs
