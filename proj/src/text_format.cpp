#include "mpmrs/text_format.hpp"

#include "mpmrs/error.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mpmrs {

namespace {

struct Token {
	std::string_view text;
	std::size_t column; // 1-based
};

bool is_blank(char c)
{
	return c == ' ' || c == '\t' || c == '\r';
}

std::vector<Token> tokenize(std::string_view line)
{
	std::vector<Token> out;
	std::size_t i = 0;
	while (i < line.size()) {
		while (i < line.size() && is_blank(line[i]))
			++i;
		std::size_t start = i;
		while (i < line.size() && !is_blank(line[i]))
			++i;
		if (i > start)
			out.push_back({line.substr(start, i - start), start + 1});
	}
	return out;
}

std::string_view trim(std::string_view s)
{
	while (!s.empty() && is_blank(s.front()))
		s.remove_prefix(1);
	while (!s.empty() && is_blank(s.back()))
		s.remove_suffix(1);
	return s;
}

template <typename F>
void for_each_line(std::string_view text, F&& f)
{
	std::size_t number = 0;
	while (!text.empty()) {
		auto nl = text.find('\n');
		std::string_view line = text.substr(0, nl);
		text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
		++number;
		auto body = trim(line);
		if (body.empty() || body.front() == '#')
			continue;
		f(number, line);
	}
}

std::size_t parse_index(const Token& t, std::size_t line)
{
	std::size_t value = 0;
	auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
	if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
		throw ParseError(line, t.column, "expected a non-negative integer, got '" +
		                                     std::string(t.text) + "'");
	return value;
}

Multiset parse_multiset_at(std::string_view text, std::size_t line, std::size_t column)
{
	try {
		return Multiset::parse(text);
	} catch (const ParseError&) {
		throw;
	} catch (const Error& e) {
		throw ParseError(line, column, e.what());
	}
}

SymbolSet parse_symbols(const std::vector<Token>& tokens, std::size_t from, std::size_t line)
{
	SymbolSet out;
	for (std::size_t i = from; i < tokens.size(); ++i) {
		if (!is_valid_symbol_name(tokens[i].text))
			throw ParseError(line, tokens[i].column,
			                 "invalid symbol '" + std::string(tokens[i].text) + "'");
		out.insert(Symbol(tokens[i].text));
	}
	return out;
}

std::string join(const SymbolSet& set)
{
	std::string out;
	for (const auto& s : set)
		out += ' ' + s.name();
	return out;
}

} // namespace

RegisterMachine parse_machine(std::string_view text)
{
	RegisterMachine m;
	bool have_registers = false;
	for_each_line(text, [&](std::size_t line, std::string_view body) {
		auto tok = tokenize(body);
		auto expect = [&](std::size_t n) {
			if (tok.size() != n)
				throw ParseError(line, tok.front().column,
				                 "expected " + std::to_string(n) + " fields, got " +
				                     std::to_string(tok.size()));
		};
		const auto head = tok.front().text;
		if (head == "@registers") {
			expect(2);
			m.registers = parse_index(tok[1], line);
			have_registers = true;
			return;
		}
		if (head == "@start" || head == "@final") {
			expect(2);
			(head == "@start" ? m.start : m.final_state) = std::string(tok[1].text);
			return;
		}
		if (head.front() == '@')
			throw ParseError(line, tok.front().column, "unknown directive " + std::string(head));
		if (tok.size() < 2)
			throw ParseError(line, tok.front().column, "missing opcode");
		std::string state(head);
		const auto op = tok[1].text;
		Instruction ins;
		if (op == "INC" || op == "DEC") {
			expect(4);
			auto r = parse_index(tok[2], line);
			ins = op == "INC" ? Instruction::inc(r, std::string(tok[3].text))
			                  : Instruction::dec(r, std::string(tok[3].text));
		} else if (op == "DECJZ" || op == "BRANCH") {
			expect(5);
			auto r = parse_index(tok[2], line);
			ins = op == "DECJZ"
			          ? Instruction::decjz(r, std::string(tok[3].text), std::string(tok[4].text))
			          : Instruction::branch(r, std::string(tok[3].text), std::string(tok[4].text));
		} else if (op == "STOP") {
			expect(2);
			ins = Instruction::stop();
		} else {
			throw ParseError(line, tok[1].column, "unknown opcode " + std::string(op));
		}
		if (ins.op != Instruction::Op::Stop && have_registers && ins.reg >= m.registers)
			throw ParseError(line, tok[2].column,
			                 "register " + std::to_string(ins.reg) + " out of range");
		m.program.emplace_back(std::move(state), std::move(ins));
	});
	if (!have_registers)
		throw ParseError(1, 1, "missing @registers");
	if (m.start.empty())
		throw ParseError(1, 1, "missing @start");
	if (m.final_state.empty())
		throw ParseError(1, 1, "missing @final");
	return m;
}

std::string write_machine(const RegisterMachine& m)
{
	std::ostringstream os;
	os << "@registers " << m.registers << '\n';
	os << "@start " << m.start << '\n';
	os << "@final " << m.final_state << '\n';
	for (const auto& [q, ins] : m.program) {
		os << q << ' ' << op_name(ins.op);
		switch (ins.op) {
		case Instruction::Op::Inc:
		case Instruction::Op::Dec:
			os << ' ' << ins.reg << ' ' << ins.next;
			break;
		case Instruction::Op::Branch:
		case Instruction::Op::DecJz:
			os << ' ' << ins.reg << ' ' << ins.next << ' ' << ins.alt;
			break;
		case Instruction::Op::Stop:
			break;
		}
		os << '\n';
	}
	return os.str();
}

FsMpmrsSystem parse_system(std::string_view text)
{
	FsMpmrsSystem sys;
	std::optional<SymbolSet> declared;
	std::set<std::string> labels;
	StateEncoding encoding;
	bool has_encoding = false;
	struct Pending {
		std::size_t line;
		std::size_t column;
		Multiset value;
		std::string what;
	};
	std::vector<Pending> uses;

	for_each_line(text, [&](std::size_t line, std::string_view body) {
		auto tok = tokenize(body);
		const auto head = tok.front().text;
		if (head.front() == '@') {
			auto rest_col = tok.size() > 1 ? tok[1].column : body.size() + 1;
			auto rest = body.substr(std::min(rest_col - 1, body.size()));
			if (head == "@alphabet") {
				declared = parse_symbols(tok, 1, line);
			} else if (head == "@registers") {
				sys.registers = parse_symbols(tok, 1, line);
			} else if (head == "@terminal") {
				sys.terminal = parse_symbols(tok, 1, line);
			} else if (head == "@init") {
				sys.base.initial = parse_multiset_at(rest, line, rest_col);
				uses.push_back({line, rest_col, sys.base.initial, "initial multiset"});
			} else if (head == "@encode") {
				auto eq = body.find('=');
				if (tok.size() < 3 || eq == std::string_view::npos)
					throw ParseError(line, tok.front().column, "expected '@encode <state> = <multiset>'");
				std::string state(trim(body.substr(tok[1].column - 1, eq - tok[1].column + 1)));
				auto value = parse_multiset_at(body.substr(eq + 1), line, eq + 2);
				if (!encoding.states.emplace(state, value).second)
					throw ParseError(line, tok[1].column, "duplicate encoding for " + state);
				uses.push_back({line, eq + 2, value, "encoding of " + state});
				has_encoding = true;
			} else if (head == "@encoding-registers") {
				for (std::size_t i = 1; i < tok.size(); ++i)
					encoding.registers.emplace_back(tok[i].text);
				has_encoding = true;
			} else {
				throw ParseError(line, tok.front().column, "unknown directive " + std::string(head));
			}
			return;
		}
		auto colon = body.find(':');
		if (colon == std::string_view::npos)
			throw ParseError(line, tok.front().column, "expected 'label: lhs -> rhs'");
		std::string label(trim(body.substr(0, colon)));
		if (!is_valid_label(label))
			throw ParseError(line, tok.front().column, "invalid rule label '" + label + "'");
		if (!labels.insert(label).second)
			throw ParseError(line, tok.front().column, "duplicate rule label '" + label + "'");
		auto arrow = body.find("->", colon);
		if (arrow == std::string_view::npos)
			throw ParseError(line, colon + 2, "missing '->'");
		auto lhs = parse_multiset_at(body.substr(colon + 1, arrow - colon - 1), line, colon + 2);
		auto rhs = parse_multiset_at(body.substr(arrow + 2), line, arrow + 3);
		if (lhs.empty())
			throw ParseError(line, colon + 2, "empty left-hand side in rule '" + label + "'");
		uses.push_back({line, colon + 2, lhs, "rule " + label});
		uses.push_back({line, arrow + 3, rhs, "rule " + label});
		sys.base.rules.push_back(make_rule(std::move(label), std::move(lhs), std::move(rhs)));
	});

	if (declared) {
		for (const auto& u : uses)
			for (const auto& [s, n] : u.value.entries())
				if (!declared->contains(s))
					throw ParseError(u.line, u.column,
					                 "unknown symbol '" + s.name() + "' in " + u.what);
		for (const auto& r : sys.registers)
			if (!declared->contains(r))
				throw ParseError(1, 1, "register '" + r.name() + "' is not in @alphabet");
		sys.base.alphabet = *declared;
	} else {
		sys.base.alphabet = symbols_used(sys.base);
		sys.base.alphabet.insert(sys.registers.begin(), sys.registers.end());
		sys.base.alphabet.insert(sys.terminal.begin(), sys.terminal.end());
		for (const auto& [q, enc] : encoding.states)
			for (const auto& e : enc.entries())
				sys.base.alphabet.insert(e.first);
	}
	if (has_encoding)
		sys.encoding = std::move(encoding);
	return sys;
}

std::string write_system(const FsMpmrsSystem& sys)
{
	std::ostringstream os;
	os << "@alphabet" << join(sys.base.alphabet) << '\n';
	os << "@registers" << join(sys.registers) << '\n';
	os << "@terminal" << join(sys.terminal) << '\n';
	os << "@init " << sys.base.initial.str() << '\n';
	if (sys.encoding) {
		if (!sys.encoding->registers.empty()) {
			os << "@encoding-registers";
			for (const auto& r : sys.encoding->registers)
				os << ' ' << r.name();
			os << '\n';
		}
		for (const auto& [q, enc] : sys.encoding->states)
			os << "@encode " << q << " = " << enc.str() << '\n';
	}
	for (const auto& r : sys.base.rules)
		os << r.label << ": " << r.lhs.str() << " -> " << r.rhs.str() << '\n';
	return os.str();
}

std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(Error::Kind::Precondition, "cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

} // namespace mpmrs
