#include "mpmrs/system.hpp"

#include "mpmrs/error.hpp"

#include <algorithm>

namespace mpmrs {

bool is_valid_label(std::string_view label) noexcept
{
	if (label.empty() || label.find("->") != std::string_view::npos)
		return false;
	return std::none_of(label.begin(), label.end(), [](char c) {
		return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ':' || c == '^' ||
		       c == '@' || c == '{' || c == '}' || c == ',';
	});
}

Rule make_rule(std::string label, Multiset lhs, Multiset rhs)
{
	if (!is_valid_label(label))
		throw Error(Error::Kind::Validation, "invalid rule label '" + label + "'");
	if (lhs.empty())
		throw Error(Error::Kind::Validation, "rule '" + label + "' has an empty left-hand side");
	return Rule{std::move(label), std::move(lhs), std::move(rhs)};
}

Rule parse_rule(std::string label, std::string_view lhs, std::string_view rhs)
{
	return make_rule(std::move(label), Multiset::parse(lhs), Multiset::parse(rhs));
}

const std::string* StateEncoding::state_of(const Multiset& state_config) const
{
	for (const auto& [state, config] : states)
		if (config == state_config)
			return &state;
	return nullptr;
}

SymbolSet symbols_used(const MpmrsSystem& sys)
{
	SymbolSet out = sys.initial.support();
	for (const auto& r : sys.rules) {
		for (const auto& e : r.lhs.entries())
			out.insert(e.first);
		for (const auto& e : r.rhs.entries())
			out.insert(e.first);
	}
	return out;
}

} // namespace mpmrs
