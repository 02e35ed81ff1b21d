#pragma once

#include "mpmrs/system.hpp"

#include <string>
#include <vector>

namespace mpmrs {

struct AntiportRule {
	enum class Kind { Antiport, SymportIn, SymportOut };

	std::string label;
	Kind kind = Kind::Antiport;
	std::size_t membrane = 1;
	Multiset out; // leaves the region
	Multiset in;  // enters from the outer region

	friend bool operator==(const AntiportRule&, const AntiportRule&) = default;
};

/// Symport/antiport P system Π = (O, μ, w_1..w_n, E, R_1..R_n, i_0). Only the
/// one-membrane antiport fragment maps onto FsMPMRS; the wider shape is kept
/// so that unsupported inputs can be represented and rejected.
struct AntiportSystem {
	SymbolSet objects;
	std::size_t membranes = 1;
	std::vector<Multiset> contents;  // w_i for membrane i = 1..n
	SymbolSet environment;           // objects with unbounded supply
	std::vector<AntiportRule> rules;
	std::size_t output_membrane = 1;
	SymbolSet output_alphabet;       // counted objects, N_T(Π)

	friend bool operator==(const AntiportSystem&, const AntiportSystem&) = default;
};

/// u -> v becomes (u, out; v, in); registers become the environment and the
/// terminal registers the counted output objects.
AntiportSystem to_antiport(const FsMpmrsSystem& fsys);

/// Inverse of to_antiport. Throws Error(Unsupported) for more than one
/// membrane or any symport rule.
FsMpmrsSystem from_antiport(const AntiportSystem& ap);

std::string write_antiport(const AntiportSystem& ap);

} // namespace mpmrs
