#pragma once

#include "mpmrs/register_machine.hpp"
#include "mpmrs/system.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpmrs {

struct CosimOptions {
	std::size_t max_rm_steps = 1'000'000;
	/// 0 selects 64 MPMRS steps per RM instruction of the oracle trace.
	std::size_t max_mpmrs_steps = 0;
	/// Strict mode (nullopt): between two checkpoints the oracle may only
	/// pass through states without an encoding. Relaxed mode: the next
	/// occurrence of the checkpoint state must lie within this many oracle
	/// instructions; encoded states may be skipped.
	std::optional<std::size_t> window;
	std::size_t threads = 1;
	std::size_t witness_length = 16;
};

struct InputVerdict {
	enum class Kind { Equivalent, Mismatch, Inconclusive };

	Kind kind = Kind::Inconclusive;
	Registers input;
	std::string reason;
	std::vector<std::string> witness;
	std::size_t rm_steps = 0;     // oracle instructions covered by checkpoints
	std::size_t mpmrs_steps = 0;
	std::size_t checkpoints = 0;
	bool rm_halted = false;
	Registers rm_final;
	std::optional<Multiset> terminal; // terminal projection at stability
};

std::string_view verdict_name(InputVerdict::Kind k) noexcept;

struct Verdict {
	InputVerdict::Kind kind = InputVerdict::Kind::Equivalent;
	std::vector<InputVerdict> inputs;

	std::size_t count(InputVerdict::Kind k) const;
	std::string str() const;
};

/// Runs the machine and the system side by side from the given input.
/// Checkpoints are configurations whose non-register part equals a state
/// encoding exactly; at each, registers must equal the oracle's at the next
/// visit of that state. Every step must be deterministic. At stability the
/// oracle must have halted with the same terminal registers.
InputVerdict lockstep(const RegisterMachine& m, const FsMpmrsSystem& sys, const Registers& input,
                      const CosimOptions& opts = {});

/// lockstep over every input; inputs may be spread across threads, results
/// keep input order. The overall kind is Mismatch if any input mismatched,
/// else Inconclusive if any was, else Equivalent.
Verdict cosimulate(const RegisterMachine& m, const FsMpmrsSystem& sys,
                   std::span<const Registers> inputs, const CosimOptions& opts = {});

} // namespace mpmrs
