#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mpmrs {

/// One register-machine instruction. `next` is the successor (the success
/// exit for DecJz, the non-zero exit for Branch); `alt` is the zero exit.
struct Instruction {
	enum class Op { Inc, Dec, Branch, DecJz, Stop };

	Op op = Op::Stop;
	std::size_t reg = 0;
	std::string next;
	std::string alt;

	static Instruction inc(std::size_t reg, std::string next);
	static Instruction dec(std::size_t reg, std::string next);
	static Instruction branch(std::size_t reg, std::string nonzero, std::string zero);
	static Instruction decjz(std::size_t reg, std::string success, std::string zero);
	static Instruction stop();

	friend bool operator==(const Instruction&, const Instruction&) = default;
};

std::string_view op_name(Instruction::Op op) noexcept;

/// Register machine (Q, R, q0, qf, P). The program keeps listing order;
/// a deterministic machine has at most one instruction per state.
struct RegisterMachine {
	std::size_t registers = 0;
	std::string start;
	std::string final_state;
	std::vector<std::pair<std::string, Instruction>> program;

	/// First instruction listed for a state, if any.
	const Instruction* find(const std::string& state) const;

	/// Every state that is listed, targeted, or designated start/final,
	/// in first-appearance order.
	std::vector<std::string> states() const;

	friend bool operator==(const RegisterMachine&, const RegisterMachine&) = default;
};

using Registers = std::vector<std::uint64_t>;

struct RmConfiguration {
	std::string state;
	Registers regs;

	friend bool operator==(const RmConfiguration&, const RmConfiguration&) = default;
};

/// Executes one instruction. Returns nullopt when c is already at the final
/// state. Throws Error(Validation) for a non-final state without an
/// instruction and Error(Execution) for a plain Dec on an empty register.
std::optional<RmConfiguration> rm_step(const RegisterMachine& m, const RmConfiguration& c);

struct RmRun {
	enum class Kind { Halted, BoundExceeded };

	Kind kind = Kind::BoundExceeded;
	RmConfiguration config;
	std::size_t steps = 0;
	std::vector<RmConfiguration> trace; // configuration after each step
};

RmRun rm_run(const RegisterMachine& m, const RmConfiguration& input, std::size_t max_steps,
             bool record_trace = false);

/// Start configuration with the given register contents, zero-padded.
RmConfiguration initial_configuration(const RegisterMachine& m, const Registers& regs);

struct Diagnostic {
	enum class Kind { Nondeterministic, RegisterOutOfRange, Unreachable, MissingFinal,
	                  MissingStart, MissingInstruction, StopOutsideFinal };

	Kind kind;
	std::string state;
	std::string message;

	std::string str() const { return state + ": " + message; }
};

std::vector<Diagnostic> validate_machine(const RegisterMachine& m);

/// The 22-instruction universal machine over registers R0..R7, transcribed
/// as published, including the (q25, R0, q1, q32) test and the unreachable
/// increment at q29.
RegisterMachine u22();

/// Non-canonical variant: q25's success exit goes to q29, which re-increments
/// R0 so that q25 becomes a pure zero test.
RegisterMachine u22_patched();

} // namespace mpmrs
