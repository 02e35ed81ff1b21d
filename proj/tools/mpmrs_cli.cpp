// Command-line front end.
//
// Exit codes:
//   0  success
//   1  usage error
//   2  error; stderr carries "error[<class>]: <message>"
//   3  verification mismatch or failed check
//   4  inconclusive: a step or configuration bound was hit

#include "mpmrs/antiport.hpp"
#include "mpmrs/compiler.hpp"
#include "mpmrs/cosim.hpp"
#include "mpmrs/engine.hpp"
#include "mpmrs/error.hpp"
#include "mpmrs/notation.hpp"
#include "mpmrs/report.hpp"
#include "mpmrs/text_format.hpp"
#include "mpmrs/universal23.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mpmrs;

namespace {

constexpr int exit_error = 2;
constexpr int exit_mismatch = 3;
constexpr int exit_inconclusive = 4;

RegisterMachine load_machine(const std::string& source)
{
	if (source == "u22")
		return u22();
	if (source == "u22-patched")
		return u22_patched();
	return parse_machine(read_file(source));
}

FsMpmrsSystem load_system(const std::string& source)
{
	if (source == "u23")
		return u23_system();
	return parse_system(read_file(source));
}

Registers parse_registers(const std::string& text)
{
	Registers regs;
	std::string token;
	std::istringstream is(text);
	while (std::getline(is, token, ',')) {
		std::uint64_t v = 0;
		auto b = token.data(), e = token.data() + token.size();
		while (b != e && *b == ' ')
			++b;
		auto [p, ec] = std::from_chars(b, e, v);
		if (ec != std::errc{} || p != e)
			throw Error(Error::Kind::Parse, "bad register value '" + token + "'");
		regs.push_back(v);
	}
	return regs;
}

// One input per non-empty, non-comment line; registers separated by commas
// or spaces. Anything after ';' is ignored.
std::vector<Registers> read_inputs(const std::string& path)
{
	std::istringstream is(read_file(path));
	std::vector<Registers> out;
	std::string line;
	while (std::getline(is, line)) {
		line = line.substr(0, line.find(';'));
		if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
			continue;
		for (auto& c : line)
			if (c == ' ' || c == '\t')
				c = ',';
		std::string compact;
		for (std::size_t i = 0; i < line.size(); ++i)
			if (line[i] != ',' || (!compact.empty() && compact.back() != ','))
				compact += line[i];
		if (!compact.empty() && compact.back() == ',')
			compact.pop_back();
		out.push_back(parse_registers(compact));
	}
	return out;
}

std::string regs_text(const Registers& r)
{
	std::string out = "(";
	for (std::size_t i = 0; i < r.size(); ++i)
		out += (i ? ", " : "") + std::to_string(r[i]);
	return out + ")";
}

struct CompileFlags {
	std::string passes = "none";
	std::size_t fusion_cap = 5;
	std::optional<std::size_t> fusion_limit;
	std::vector<std::string> fuse;
	bool faithful_halt = false;

	void add(CLI::App* app)
	{
		app->add_option("--passes", passes, "comma-separated subset of p1,p2,p3,p4, or none")
		    ->capture_default_str();
		app->add_option("--fusion-cap", fusion_cap, "P2 size cap")->capture_default_str();
		app->add_option("--fusion-limit", fusion_limit, "P2: fuse at most N eligible states (default 3)");
		app->add_option("--fuse", fuse, "P2: explicit increment states to fuse");
		app->add_flag("--faithful-halt", faithful_halt, "keep the zero exit into the final state");
	}

	CompilationOptions options() const
	{
		CompilationOptions o;
		o.passes = parse_passes(passes);
		o.fusion_size_cap = fusion_cap;
		if (fusion_limit)
			o.fusion_limit = *fusion_limit;
		if (!fuse.empty())
			o.fusion_states = fuse;
		o.faithful_halt = faithful_halt;
		return o;
	}
};

void print_trace(std::ostream& os, const MpmrsSystem& sys, const RunOutcome& out)
{
	for (std::size_t i = 0; i < out.trace.size(); ++i)
		os << i + 1 << ": " << out.trace[i].bag.str(sys.rules) << " => " << out.trace[i].config.str()
		   << '\n';
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Maximally parallel multiset rewriting toolkit"};
	app.require_subcommand(1);

	// run-rm
	auto* run_rm = app.add_subcommand("run-rm", "run a register machine");
	std::string rm_source;
	std::string input_text;
	std::size_t max_steps = 1'000'000;
	bool show_trace = false;
	run_rm->add_option("machine", rm_source, "machine file, or u22 / u22-patched")->required();
	run_rm->add_option("--input", input_text, "comma-separated register values");
	run_rm->add_option("--max-steps", max_steps)->capture_default_str();
	run_rm->add_flag("--trace", show_trace);

	// compile
	auto* compile_cmd = app.add_subcommand("compile", "compile a register machine to an FsMPMRS");
	CompileFlags cflags;
	cflags.add(compile_cmd);
	compile_cmd->add_option("machine", rm_source)->required();
	compile_cmd->add_option("--input", input_text, "register values placed in the initial multiset");
	bool as_antiport = false;
	bool report_only = false;
	compile_cmd->add_flag("--antiport", as_antiport, "emit the one-membrane antiport form");
	compile_cmd->add_flag("--report", report_only, "print the pass report instead of the system");

	// run-mpmrs
	auto* run_mp = app.add_subcommand("run-mpmrs", "run an FsMPMRS");
	std::string sys_source;
	std::optional<std::uint64_t> seed;
	std::size_t mp_max_steps = default_max_steps;
	std::size_t max_configs = default_max_configs;
	run_mp->add_option("system", sys_source, "system file, or u23")->required();
	run_mp->add_option("--seed", seed, "follow one seeded computation instead of exploring all");
	run_mp->add_option("--max-steps", mp_max_steps)->capture_default_str();
	run_mp->add_option("--max-configs", max_configs)->capture_default_str();
	run_mp->add_option("--input", input_text, "register values added to the initial multiset");
	run_mp->add_flag("--trace", show_trace);

	// verify
	auto* verify = app.add_subcommand("verify", "co-simulate a machine against its compilation");
	CompileFlags vflags;
	vflags.add(verify);
	std::string inputs_file;
	std::size_t threads = 1;
	std::optional<std::size_t> window;
	std::size_t rm_bound = 1'000'000;
	verify->add_option("machine", rm_source)->required();
	verify->add_option("--system", sys_source, "verify this system file instead of compiling");
	verify->add_option("--inputs", inputs_file, "input file, one register vector per line");
	verify->add_option("--input", input_text, "single input");
	verify->add_option("--threads", threads)->capture_default_str();
	verify->add_option("--window", window, "allow up to N oracle steps between checkpoints");
	verify->add_option("--max-steps", rm_bound, "oracle step bound")->capture_default_str();
	std::vector<std::string> drop_rules;
	verify->add_option("--drop-rule", drop_rules, "delete a rule by label before verifying");

	// universal
	auto* universal = app.add_subcommand("universal", "the 23-rule universal system");
	std::string export_format;
	bool derive = false;
	universal->add_option("--input", input_text, "U22 register values (8)");
	universal->add_option("--max-steps", mp_max_steps)->capture_default_str();
	universal->add_option("--export", export_format, "print the system as 'system' or 'antiport'")
	    ->check(CLI::IsMember({"system", "antiport"}));
	universal->add_flag("--derive", derive, "derive the state dictionary from the inputs file");
	universal->add_option("--inputs", inputs_file, "sample inputs for --derive");
	universal->add_flag("--trace", show_trace);

	// diagram
	auto* diagram = app.add_subcommand("diagram", "flow graph of an FsMPMRS");
	std::string format = "dot";
	bool simplified = false;
	std::size_t max_iters = 1000;
	diagram->add_option("system", sys_source)->required();
	diagram->add_option("--format", format)->check(CLI::IsMember({"text", "dot"}))->capture_default_str();
	diagram->add_flag("--simplify", simplified, "remove dead arrows");
	diagram->add_option("--max-configs", max_iters, "fixed-point iteration bound")->capture_default_str();

	// stats
	auto* stats_cmd = app.add_subcommand("stats", "rule count, size and validation of a system");
	stats_cmd->add_option("system", sys_source)->required();
	stats_cmd->add_option("--max-configs", max_iters, "state-configuration iteration bound")
	    ->capture_default_str();

	// table
	auto* table = app.add_subcommand("table", "sizes and rule counts at every pass level");
	CompileFlags tflags;
	table->add_option("--fusion-cap", tflags.fusion_cap)->capture_default_str();
	table->add_option("--fusion-limit", tflags.fusion_limit);
	table->add_option("--fuse", tflags.fuse);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 1;
	}

	try {
		if (*run_rm) {
			auto m = load_machine(rm_source);
			auto run = rm_run(m, initial_configuration(m, parse_registers(input_text)), max_steps,
			                  show_trace);
			if (show_trace)
				for (std::size_t i = 0; i < run.trace.size(); ++i)
					std::cout << i + 1 << ": " << run.trace[i].state << ' ' << regs_text(run.trace[i].regs)
					          << '\n';
			bool halted = run.kind == RmRun::Kind::Halted;
			std::cout << (halted ? "halted" : "bound exceeded") << " after " << run.steps
			          << " steps at " << run.config.state << ' ' << regs_text(run.config.regs) << '\n';
			return halted ? 0 : exit_inconclusive;
		}

		if (*compile_cmd) {
			auto m = load_machine(rm_source);
			Registers input = input_text.empty() ? Registers{} : parse_registers(input_text);
			auto c = compile(m, cflags.options(), input);
			if (report_only)
				std::cout << c.report.str();
			else if (as_antiport)
				std::cout << write_antiport(to_antiport(c.system));
			else
				std::cout << write_system(c.system);
			return 0;
		}

		if (*run_mp) {
			auto sys = load_system(sys_source);
			if (!input_text.empty())
				sys = with_input(sys, parse_registers(input_text));
			if (seed) {
				auto out = run_seeded(sys.base, *seed, mp_max_steps);
				if (show_trace)
					print_trace(std::cout, sys.base, out);
				bool stable = out.kind == RunOutcome::Kind::Stable;
				std::cout << (stable ? "stable" : "bound exceeded") << " after " << out.steps_taken
				          << " steps: " << out.config.str() << '\n';
				if (stable)
					std::cout << "result: " << sys.terminal_part(out.config).str() << '\n';
				return stable ? 0 : exit_inconclusive;
			}
			auto out = run_exhaustive(sys.base, mp_max_steps, max_configs);
			std::cout << "explored " << out.configs_explored << " configurations"
			          << (out.cycle_detected ? ", cycle detected" : "") << '\n';
			std::set<Multiset> projections;
			for (const auto& r : out.results) {
				std::cout << "stable: " << r.str() << '\n';
				projections.insert(sys.terminal_part(r));
			}
			for (const auto& p : projections)
				std::cout << "result: " << p.str() << '\n';
			if (!out.complete)
				std::cout << "incomplete: bound reached\n";
			return out.complete ? 0 : exit_inconclusive;
		}

		if (*verify) {
			auto m = load_machine(rm_source);
			FsMpmrsSystem sys = sys_source.empty() ? compile(m, vflags.options()).system
			                                       : load_system(sys_source);
			for (const auto& label : drop_rules) {
				auto& rules = sys.base.rules;
				auto it = std::find_if(rules.begin(), rules.end(),
				                       [&](const Rule& r) { return r.label == label; });
				if (it == rules.end())
					throw Error(Error::Kind::Precondition, "no rule labelled '" + label + "'");
				rules.erase(it);
			}
			std::vector<Registers> inputs;
			if (!inputs_file.empty())
				inputs = read_inputs(inputs_file);
			if (!input_text.empty())
				inputs.push_back(parse_registers(input_text));
			if (inputs.empty())
				throw Error(Error::Kind::Precondition, "verify needs --input or --inputs");
			CosimOptions opts;
			opts.threads = threads;
			opts.window = window;
			opts.max_rm_steps = rm_bound;
			auto v = cosimulate(m, sys, inputs, opts);
			std::cout << v.str();
			if (v.kind == InputVerdict::Kind::Mismatch)
				return exit_mismatch;
			return v.kind == InputVerdict::Kind::Equivalent ? 0 : exit_inconclusive;
		}

		if (*universal) {
			if (export_format == "system") {
				std::cout << write_system(u23_system());
				return 0;
			}
			if (export_format == "antiport") {
				std::cout << write_antiport(to_antiport(u23_system()));
				return 0;
			}
			if (derive) {
				if (inputs_file.empty())
					throw Error(Error::Kind::Precondition, "--derive needs --inputs");
				auto dict = derive_dictionary(read_inputs(inputs_file));
				for (const auto& [q, cfg] : dict.entries)
					std::cout << q << " = " << cfg.str() << '\n';
				for (const auto& f : dict.findings)
					std::cout << "finding: " << f << '\n';
				std::cout << "consistent: " << (dict.consistent ? "yes" : "no")
				          << ", injective: " << (dict.injective ? "yes" : "no") << '\n';
				return dict.consistent && dict.injective ? 0 : exit_mismatch;
			}
			auto run = run_universal(parse_registers(input_text), mp_max_steps);
			if (show_trace)
				print_trace(std::cout, u23_system().base, run.outcome);
			if (run.branching_step) {
				std::cout << "nondeterministic at step " << *run.branching_step << ":\n";
				for (const auto& b : run.branching)
					std::cout << "  " << b << '\n';
			}
			bool stable = run.outcome.kind == RunOutcome::Kind::Stable;
			std::cout << (stable ? "stable" : "bound exceeded") << " after "
			          << run.outcome.steps_taken << " steps: " << run.outcome.config.str() << '\n';
			if (run.result)
				std::cout << "result: " << run.result->str() << '\n';
			if (run.branching_step)
				return exit_mismatch;
			return stable ? 0 : exit_inconclusive;
		}

		if (*diagram) {
			auto g = build_flow_graph(load_system(sys_source), max_iters);
			if (simplified)
				g = simplify(g);
			if (format == "dot") {
				std::cout << emit_dot(g);
				return 0;
			}
			for (std::size_t i = 0; i < g.squares.size(); ++i)
				std::cout << "square " << i << ": " << g.squares[i].config.str()
				          << (g.squares[i].filled ? "" : " (unfilled)") << '\n';
			for (std::size_t i = 0; i < g.circles.size(); ++i)
				std::cout << "circle " << i << ": " << g.circles[i].unmarked.str() << " ~ "
				          << g.circles[i].marked.str() << " -> square " << g.circles[i].square << '\n';
			for (const auto& a : g.arrows)
				std::cout << (a.from.is_square ? "square " : "circle ") << a.from.index << " -> circle "
				          << a.to << " [" << a.label(g.rules) << "]\n";
			return 0;
		}

		if (*stats_cmd) {
			auto sys = load_system(sys_source);
			auto s = stats(sys.base);
			std::cout << "rules: " << s.rule_count << "\nmax size: " << s.max_rule_size << '\n';
			auto violations = validate(sys);
			for (const auto& v : violations)
				std::cout << "violation: " << v.str() << '\n';
			auto configs = state_configurations(sys, max_iters);
			std::cout << "state configurations: " << configs.size() << '\n';
			for (const auto& c : configs)
				std::cout << "  " << c.str() << '\n';
			return violations.empty() ? 0 : exit_mismatch;
		}

		if (*table) {
			CompilationOptions base;
			base.fusion_size_cap = tflags.fusion_cap;
			if (tflags.fusion_limit)
				base.fusion_limit = *tflags.fusion_limit;
			if (!tflags.fuse.empty())
				base.fusion_states = tflags.fuse;
			std::cout << render_table(pipeline_table(base));
			return 0;
		}
	} catch (const Error& e) {
		std::cerr << "error[" << kind_name(e.kind()) << "]: " << e.what() << '\n';
		return exit_error;
	} catch (const std::exception& e) {
		std::cerr << "error[internal]: " << e.what() << '\n';
		return exit_error;
	}
	return 0;
}
