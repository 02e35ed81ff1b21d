#include "mpmrs/compiler.hpp"

#include "mpmrs/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace mpmrs {

std::string_view pass_name(Pass p) noexcept
{
	switch (p) {
	case Pass::P1: return "P1";
	case Pass::P2: return "P2";
	case Pass::P3: return "P3";
	case Pass::P4: return "P4";
	}
	return "?";
}

std::vector<Pass> parse_passes(std::string_view text)
{
	std::vector<Pass> out;
	std::string lowered;
	for (char c : text)
		lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
	if (lowered.empty() || lowered == "none" || lowered == "p0")
		return out;
	std::istringstream in(lowered);
	std::string item;
	while (std::getline(in, item, ',')) {
		if (item == "p1")
			out.push_back(Pass::P1);
		else if (item == "p2")
			out.push_back(Pass::P2);
		else if (item == "p3")
			out.push_back(Pass::P3);
		else if (item == "p4")
			out.push_back(Pass::P4);
		else
			throw Error(Error::Kind::Parse, "unknown pass '" + item + "'");
	}
	return out;
}

bool natural_less(std::string_view a, std::string_view b)
{
	std::size_t i = 0, j = 0;
	auto digit = [](char c) { return c >= '0' && c <= '9'; };
	while (i < a.size() && j < b.size()) {
		if (digit(a[i]) && digit(b[j])) {
			std::size_t ie = i, je = j;
			while (ie < a.size() && digit(a[ie]))
				++ie;
			while (je < b.size() && digit(b[je]))
				++je;
			auto x = a.substr(i, ie - i);
			auto y = b.substr(j, je - j);
			while (x.size() > 1 && x.front() == '0')
				x.remove_prefix(1);
			while (y.size() > 1 && y.front() == '0')
				y.remove_prefix(1);
			if (x.size() != y.size())
				return x.size() < y.size();
			if (x != y)
				return x < y;
			i = ie;
			j = je;
			continue;
		}
		if (a[i] != b[j])
			return a[i] < b[j];
		++i;
		++j;
	}
	return a.size() - i < b.size() - j;
}

std::string PassReport::str() const
{
	std::ostringstream os;
	os << "stage  rules  max-size  eliminated  glued\n";
	for (const auto& s : stages) {
		os << s.stage;
		for (std::size_t i = s.stage.size(); i < 7; ++i)
			os << ' ';
		auto col = [&](std::size_t v, std::size_t w) {
			auto t = std::to_string(v);
			os << t;
			for (std::size_t i = t.size(); i < w; ++i)
				os << ' ';
		};
		col(s.rule_count, 7);
		col(s.max_rule_size, 10);
		col(s.states_eliminated, 12);
		os << s.rules_glued << '\n';
	}
	if (!eliminated_states.empty()) {
		os << "collapsed:";
		for (const auto& q : eliminated_states)
			os << ' ' << q;
		os << '\n';
	}
	if (!fused_states.empty()) {
		os << "fused:";
		for (const auto& q : fused_states)
			os << ' ' << q;
		os << '\n';
	}
	return os.str();
}

StageStats stats(const MpmrsSystem& sys, std::string stage)
{
	StageStats s;
	s.stage = std::move(stage);
	s.rule_count = sys.rules.size();
	for (const auto& r : sys.rules)
		s.max_rule_size = std::max<std::size_t>(s.max_rule_size, r.size());
	return s;
}

const IrNode* Lineage::find(const std::string& state) const
{
	for (const auto& n : nodes)
		if (n.state == state)
			return &n;
	return nullptr;
}

namespace {

Symbol reg_symbol(std::size_t i)
{
	return Symbol("R" + std::to_string(i));
}

Lineage lower_machine(const RegisterMachine& m)
{
	Lineage ir;
	ir.registers = m.registers;
	ir.start = m.start;
	ir.final_state = m.final_state;
	std::set<std::string> listed;
	for (const auto& [q, ins] : m.program) {
		if (!listed.insert(q).second)
			throw Error(Error::Kind::Compile, "state " + q + " has more than one instruction");
		if (ins.op != Instruction::Op::Stop && ins.reg >= m.registers)
			throw Error(Error::Kind::Compile, "state " + q + " uses register R" +
			                                      std::to_string(ins.reg) + " out of range");
	}
	auto fresh = [&](const std::string& base) {
		std::string name = base + "_b";
		while (listed.contains(name))
			name += "b";
		listed.insert(name);
		return name;
	};
	for (const auto& [q, ins] : m.program) {
		switch (ins.op) {
		case Instruction::Op::Inc:
			ir.nodes.push_back({q, IrNode::Kind::Inc, ins.reg,
			                    {ins.next, Multiset::of(reg_symbol(ins.reg))}, {}});
			break;
		case Instruction::Op::Dec:
			ir.nodes.push_back({q, IrNode::Kind::Dec, ins.reg, {ins.next, {}}, {ins.next, {}}});
			break;
		case Instruction::Op::DecJz:
			ir.nodes.push_back({q, IrNode::Kind::Dec, ins.reg, {ins.next, {}}, {ins.alt, {}}});
			break;
		case Instruction::Op::Branch: {
			// Test by decrementing, then give the unit back on the non-zero exit.
			auto restore = fresh(q);
			ir.nodes.push_back({q, IrNode::Kind::Dec, ins.reg, {restore, {}}, {ins.alt, {}}});
			ir.nodes.push_back({restore, IrNode::Kind::Inc, ins.reg,
			                    {ins.next, Multiset::of(reg_symbol(ins.reg))}, {}});
			break;
		}
		case Instruction::Op::Stop:
			if (q != m.final_state)
				throw Error(Error::Kind::Compile, "STOP outside the final state at " + q);
			break;
		}
	}
	if (m.start.empty() || m.final_state.empty())
		throw Error(Error::Kind::Compile, "machine lacks a start or final state");
	auto check = [&](const std::string& target, const std::string& from) {
		if (target != ir.final_state && !ir.find(target))
			throw Error(Error::Kind::Compile,
			            "state " + target + " (from " + from + ") has no instruction");
	};
	check(ir.start, "start");
	for (const auto& n : ir.nodes) {
		check(n.next.target, n.state);
		if (n.kind == IrNode::Kind::Dec)
			check(n.zero.target, n.state);
	}
	return ir;
}

struct Emitter {
	const Lineage& ir;
	Style style;
	const CompilationOptions& opts;

	Symbol s(const std::string& name) const { return Symbol(name); }
	std::string checker(const IrNode& n) const
	{
		return style.shared_checkers ? "C" + std::to_string(n.reg) : "C_" + n.state;
	}

	Multiset encode(const std::string& state) const
	{
		const IrNode* n = ir.find(state);
		if (!n || n->kind == IrNode::Kind::Inc)
			return Multiset::of(s(state));
		Multiset m = Multiset::of(s(state));
		if (style.checker_encoding)
			m.add(s(checker(*n)));
		if (style.phases)
			m.add(s("S"));
		return m;
	}

	Multiset land(const Transfer& t) const { return t.increments + encode(t.target); }

	std::size_t exit_lhs_size() const
	{
		if (!style.checker_encoding)
			return 2;
		return style.phases ? 3 : 2;
	}

	Multiset exit_lhs(const IrNode& n, bool success) const
	{
		std::string c = checker(n) + (success ? "'" : "");
		if (!style.checker_encoding)
			return Multiset::of(s(n.state + "''")) + Multiset::of(s(c));
		Multiset m = Multiset::of(s(style.phases ? n.state : n.state + "'"));
		m.add(s(c));
		if (style.phases)
			m.add(s("S'"));
		return m;
	}

	bool keep_zero_exit(const IrNode& n) const
	{
		return opts.faithful_halt || n.zero.target != ir.final_state || !n.zero.increments.empty();
	}

	std::vector<Rule> rules() const
	{
		std::vector<Rule> out;
		bool any_dec = std::any_of(ir.nodes.begin(), ir.nodes.end(),
		                           [](const IrNode& n) { return n.kind == IrNode::Kind::Dec; });
		if (style.phases && any_dec)
			out.push_back(make_rule("phase", Multiset::of(s("S")), Multiset::of(s("S'"))));
		if (style.shared_checkers) {
			std::set<std::size_t> tested;
			for (const auto& n : ir.nodes)
				if (n.kind == IrNode::Kind::Dec)
					tested.insert(n.reg);
			for (auto i : tested) {
				auto c = "C" + std::to_string(i);
				out.push_back(make_rule(c + ".dec", Multiset::of(s(c)) + Multiset::of(reg_symbol(i)),
				                        Multiset::of(s(c + "'"))));
			}
		}
		for (const auto& n : ir.nodes) {
			const auto& q = n.state;
			if (n.kind == IrNode::Kind::Inc) {
				out.push_back(make_rule(q + ".inc", Multiset::of(s(q)), land(n.next)));
				continue;
			}
			const auto c = checker(n);
			if (!style.checker_encoding) {
				out.push_back(make_rule(q + ".enter", Multiset::of(s(q)),
				                        Multiset::of(s(q + "'")) + Multiset::of(s(c))));
				out.push_back(make_rule(q + ".wait", Multiset::of(s(q + "'")),
				                        Multiset::of(s(q + "''"))));
			} else if (!style.phases) {
				out.push_back(make_rule(q + ".wait", Multiset::of(s(q)), Multiset::of(s(q + "'"))));
			}
			if (!style.shared_checkers)
				out.push_back(make_rule(q + ".dec", Multiset::of(s(c)) + Multiset::of(reg_symbol(n.reg)),
				                        Multiset::of(s(c + "'"))));
			out.push_back(make_rule(q + ".succ", exit_lhs(n, true), land(n.next)));
			if (keep_zero_exit(n))
				out.push_back(make_rule(q + ".zero", exit_lhs(n, false), land(n.zero)));
		}
		return out;
	}

	FsMpmrsSystem system(const Registers& input) const
	{
		FsMpmrsSystem sys;
		for (std::size_t i = 0; i < ir.registers; ++i)
			sys.registers.insert(reg_symbol(i));
		for (auto t : opts.terminal) {
			if (t >= ir.registers)
				throw Error(Error::Kind::Compile,
				            "terminal register R" + std::to_string(t) + " out of range");
			sys.terminal.insert(reg_symbol(t));
		}
		StateEncoding enc;
		for (std::size_t i = 0; i < ir.registers; ++i)
			enc.registers.push_back(reg_symbol(i));
		for (const auto& n : ir.nodes)
			enc.states.emplace(n.state, encode(n.state));
		enc.states.emplace(ir.final_state, encode(ir.final_state));
		for (const auto& [q, m] : enc.states)
			if (sys.registers.contains(Symbol(q)) || q == "S" || q == "S'")
				throw Error(Error::Kind::Compile, "state name " + q + " collides with a reserved symbol");
		sys.base.rules = rules();
		sys.base.initial = encode(ir.start);
		if (input.size() > ir.registers)
			throw Error(Error::Kind::Precondition, "input has more registers than the machine");
		for (std::size_t i = 0; i < input.size(); ++i)
			if (input[i] > 0)
				sys.base.initial.add(reg_symbol(i), input[i]);
		sys.base.alphabet = symbols_used(sys.base);
		sys.base.alphabet.insert(sys.registers.begin(), sys.registers.end());
		for (const auto& [q, m] : enc.states)
			for (const auto& e : m.entries())
				sys.base.alphabet.insert(e.first);
		sys.encoding = std::move(enc);
		return sys;
	}
};

void emit(CompiledSystem& c, std::string stage, std::size_t eliminated, std::size_t glued)
{
	c.system = Emitter{c.lineage, c.style, c.options}.system(c.input);
	auto st = stats(c.system.base, std::move(stage));
	st.states_eliminated = eliminated;
	st.rules_glued = glued;
	c.report.stages.push_back(std::move(st));
}

std::size_t count_predecessors(const Lineage& ir, const std::string& state, bool& only_exits)
{
	std::size_t n = 0;
	only_exits = true;
	for (const auto& node : ir.nodes) {
		if (node.next.target == state) {
			++n;
			if (node.kind == IrNode::Kind::Inc)
				only_exits = false;
		}
		if (node.kind == IrNode::Kind::Dec && node.zero.target == state)
			++n;
	}
	return n;
}

void remove_node(Lineage& ir, const std::string& state)
{
	std::erase_if(ir.nodes, [&](const IrNode& n) { return n.state == state; });
}

// Fusion of increment t into every test exit that targets it; nullopt when
// t is not eligible or a fused rule would exceed the cap.
std::optional<std::vector<std::pair<std::size_t, bool>>> fusion_sites(const CompiledSystem& c,
                                                                       const IrNode& t,
                                                                       std::size_t cap)
{
	const auto& ir = c.lineage;
	if (t.kind != IrNode::Kind::Inc || t.state == ir.start || t.next.target == t.state)
		return std::nullopt;
	bool only_exits = false;
	if (count_predecessors(ir, t.state, only_exits) == 0 || !only_exits)
		return std::nullopt;
	Emitter em{ir, c.style, c.options};
	std::vector<std::pair<std::size_t, bool>> sites;
	for (std::size_t i = 0; i < ir.nodes.size(); ++i) {
		const auto& n = ir.nodes[i];
		if (n.kind != IrNode::Kind::Dec)
			continue;
		for (bool success : {true, false}) {
			const Transfer& e = success ? n.next : n.zero;
			if (e.target != t.state)
				continue;
			Transfer fused{t.next.target, e.increments + t.next.increments};
			if (em.exit_lhs_size() + em.land(fused).size() > cap)
				return std::nullopt;
			sites.emplace_back(i, success);
		}
	}
	return sites;
}

} // namespace

Lineage lower(const RegisterMachine& m)
{
	return lower_machine(m);
}

CompiledSystem compile_basic(const RegisterMachine& m, const CompilationOptions& opts,
                             const Registers& input)
{
	CompiledSystem c;
	c.lineage = lower_machine(m);
	c.options = opts;
	c.input = input;
	emit(c, "P0", 0, 0);
	return c;
}

CompiledSystem pass_checker_encoding(const CompiledSystem& in)
{
	if (in.style.checker_encoding)
		throw Error(Error::Kind::Compile, "P1 already applied");
	CompiledSystem c = in;
	c.style.checker_encoding = true;
	auto& ir = c.lineage;
	std::size_t eliminated = 0;
	for (bool changed = true; changed;) {
		changed = false;
		for (auto& p : ir.nodes) {
			if (p.kind != IrNode::Kind::Inc)
				continue;
			const IrNode* t = ir.find(p.next.target);
			if (!t || t == &p || t->kind != IrNode::Kind::Inc || t->state == ir.start)
				continue;
			bool only_exits = false;
			if (count_predecessors(ir, t->state, only_exits) != 1)
				continue;
			auto gone = t->state;
			p.next = {t->next.target, p.next.increments + t->next.increments};
			remove_node(ir, gone);
			c.report.eliminated_states.push_back(gone);
			++eliminated;
			changed = true;
			break;
		}
	}
	emit(c, "P1", eliminated, 0);
	return c;
}

std::vector<std::string> fusion_candidates(const CompiledSystem& in, std::size_t cap)
{
	std::vector<std::string> out;
	for (const auto& n : in.lineage.nodes)
		if (fusion_sites(in, n, cap))
			out.push_back(n.state);
	std::sort(out.begin(), out.end(), natural_less);
	return out;
}

CompiledSystem pass_fuse_increments(const CompiledSystem& in, std::size_t cap)
{
	if (!in.style.checker_encoding)
		throw Error(Error::Kind::Compile, "P2 requires P1");
	CompiledSystem c = in;
	std::vector<std::string> chosen;
	if (c.options.fusion_states) {
		chosen = *c.options.fusion_states;
	} else {
		chosen = fusion_candidates(c, cap);
		if (c.options.fusion_limit && chosen.size() > *c.options.fusion_limit)
			chosen.resize(*c.options.fusion_limit);
	}
	std::size_t eliminated = 0;
	for (const auto& q : chosen) {
		const IrNode* t = c.lineage.find(q);
		if (!t)
			throw Error(Error::Kind::Compile, "fusion state " + q + " is not an increment");
		auto sites = fusion_sites(c, *t, cap);
		if (!sites) {
			if (c.options.fusion_states)
				throw Error(Error::Kind::Compile, "state " + q + " cannot be fused within cap " +
				                                      std::to_string(cap));
			continue;
		}
		const Transfer tail = t->next;
		for (auto [i, success] : *sites) {
			Transfer& e = success ? c.lineage.nodes[i].next : c.lineage.nodes[i].zero;
			e = {tail.target, e.increments + tail.increments};
		}
		remove_node(c.lineage, q);
		c.report.fused_states.push_back(q);
		++eliminated;
	}
	emit(c, "P2", eliminated, 0);
	return c;
}

CompiledSystem pass_phases(const CompiledSystem& in)
{
	if (!in.style.checker_encoding)
		throw Error(Error::Kind::Compile, "P3 requires P1");
	if (in.style.phases)
		throw Error(Error::Kind::Compile, "P3 already applied");
	CompiledSystem c = in;
	c.style.phases = true;
	auto tests = static_cast<std::size_t>(
	    std::count_if(c.lineage.nodes.begin(), c.lineage.nodes.end(),
	                  [](const IrNode& n) { return n.kind == IrNode::Kind::Dec; }));
	emit(c, "P3", 0, tests);
	return c;
}

CompiledSystem pass_shared_checkers(const CompiledSystem& in)
{
	if (!in.style.phases)
		throw Error(Error::Kind::Compile, "P4 requires P3");
	if (in.style.shared_checkers)
		throw Error(Error::Kind::Compile, "P4 already applied");
	CompiledSystem c = in;
	c.style.shared_checkers = true;
	auto tests = static_cast<std::size_t>(
	    std::count_if(c.lineage.nodes.begin(), c.lineage.nodes.end(),
	                  [](const IrNode& n) { return n.kind == IrNode::Kind::Dec; }));
	emit(c, "P4", 0, tests);
	return c;
}

CompiledSystem compile(const RegisterMachine& m, const CompilationOptions& opts,
                       const Registers& input)
{
	std::set<Pass> seen;
	for (auto p : opts.passes) {
		if (!seen.insert(p).second)
			throw Error(Error::Kind::Compile, "pass " + std::string(pass_name(p)) + " listed twice");
		if (p == Pass::P2 && !seen.contains(Pass::P1))
			throw Error(Error::Kind::Compile, "P2 requires P1 earlier in the pipeline");
		if (p == Pass::P3 && !seen.contains(Pass::P1))
			throw Error(Error::Kind::Compile, "P3 requires P1 earlier in the pipeline");
		if (p == Pass::P4 && !seen.contains(Pass::P3))
			throw Error(Error::Kind::Compile, "P4 requires P3 earlier in the pipeline");
	}
	CompiledSystem c = compile_basic(m, opts, input);
	for (auto p : opts.passes) {
		switch (p) {
		case Pass::P1: c = pass_checker_encoding(c); break;
		case Pass::P2: c = pass_fuse_increments(c, opts.fusion_size_cap); break;
		case Pass::P3: c = pass_phases(c); break;
		case Pass::P4: c = pass_shared_checkers(c); break;
		}
	}
	return c;
}

FsMpmrsSystem with_input(const FsMpmrsSystem& sys, const Registers& regs)
{
	if (!sys.encoding)
		throw Error(Error::Kind::Precondition, "system has no state encoding");
	const auto& order = sys.encoding->registers;
	if (regs.size() > order.size())
		throw Error(Error::Kind::Precondition,
		            "input has " + std::to_string(regs.size()) + " registers, encoding has " +
		                std::to_string(order.size()));
	FsMpmrsSystem out = sys;
	out.base.initial = sys.state_part(sys.base.initial);
	for (std::size_t i = 0; i < regs.size(); ++i)
		if (regs[i] > 0)
			out.base.initial.add(order[i], regs[i]);
	return out;
}

} // namespace mpmrs
