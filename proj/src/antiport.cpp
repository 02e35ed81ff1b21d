#include "mpmrs/antiport.hpp"

#include "mpmrs/error.hpp"

#include <sstream>

namespace mpmrs {

AntiportSystem to_antiport(const FsMpmrsSystem& fsys)
{
	AntiportSystem ap;
	ap.objects = fsys.base.alphabet;
	ap.contents = {fsys.base.initial};
	ap.environment = fsys.registers;
	ap.output_alphabet = fsys.terminal;
	for (const auto& r : fsys.base.rules)
		ap.rules.push_back({r.label, AntiportRule::Kind::Antiport, 1, r.lhs, r.rhs});
	return ap;
}

FsMpmrsSystem from_antiport(const AntiportSystem& ap)
{
	if (ap.membranes != 1 || ap.contents.size() != 1)
		throw Error(Error::Kind::Unsupported,
		            "only one-membrane antiport systems map onto FsMPMRS (got " +
		                std::to_string(ap.membranes) + " membranes)");
	if (ap.output_membrane != 1)
		throw Error(Error::Kind::Unsupported, "output region must be the skin membrane");
	FsMpmrsSystem fsys;
	fsys.base.alphabet = ap.objects;
	fsys.base.initial = ap.contents.front();
	fsys.registers = ap.environment;
	fsys.terminal = ap.output_alphabet;
	for (const auto& r : ap.rules) {
		if (r.kind != AntiportRule::Kind::Antiport)
			throw Error(Error::Kind::Unsupported, "symport rule '" + r.label + "' is not supported");
		if (r.membrane != 1)
			throw Error(Error::Kind::Unsupported, "rule '" + r.label + "' targets membrane " +
			                                          std::to_string(r.membrane));
		fsys.base.rules.push_back(make_rule(r.label, r.out, r.in));
	}
	return fsys;
}

namespace {

std::string join(const SymbolSet& set)
{
	std::string out;
	for (const auto& s : set) {
		if (!out.empty())
			out += ' ';
		out += s.name();
	}
	return out;
}

} // namespace

std::string write_antiport(const AntiportSystem& ap)
{
	std::ostringstream os;
	os << "@objects " << join(ap.objects) << '\n';
	os << "@membranes " << ap.membranes << '\n';
	for (std::size_t i = 0; i < ap.contents.size(); ++i)
		os << "@w" << (i + 1) << ' ' << ap.contents[i].str() << '\n';
	os << "@environment " << join(ap.environment) << '\n';
	os << "@output " << ap.output_membrane << ' ' << join(ap.output_alphabet) << '\n';
	for (const auto& r : ap.rules) {
		os << r.label << ": ";
		switch (r.kind) {
		case AntiportRule::Kind::Antiport:
			os << '(' << r.out.str() << ", out; " << r.in.str() << ", in)";
			break;
		case AntiportRule::Kind::SymportIn:
			os << '(' << r.in.str() << ", in)";
			break;
		case AntiportRule::Kind::SymportOut:
			os << '(' << r.out.str() << ", out)";
			break;
		}
		if (r.membrane != 1)
			os << " @" << r.membrane;
		os << '\n';
	}
	return os.str();
}

} // namespace mpmrs
