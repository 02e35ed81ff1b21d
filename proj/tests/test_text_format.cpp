#include "support.hpp"

#include "mpmrs/error.hpp"
#include "mpmrs/text_format.hpp"
#include "mpmrs/universal23.hpp"

#include <doctest.h>

using namespace mpmrs;
using namespace testing_support;

TEST_SUITE("text_format") {

TEST_CASE("machine round trip")
{
	for (const auto& m : {u22(), u22_patched(), m_move(), m_double(), m_parity()}) {
		auto text = write_machine(m);
		auto back = parse_machine(text);
		CHECK(back.registers == m.registers);
		CHECK(back.start == m.start);
		CHECK(back.final_state == m.final_state);
		CHECK(back.program == m.program);
		CHECK(write_machine(back) == text);
	}
}

TEST_CASE("shipped files parse to the built-in systems")
{
	auto u = parse_machine(read_file(data_path("u22.rm")));
	CHECK(u.program == u22().program);
	CHECK(parse_machine(read_file(data_path("u22-patched.rm"))).program == u22_patched().program);
	CHECK(parse_system(read_file(data_path("u23.mprs"))) == u23_system());
	CHECK(parse_system(read_file(data_path("example1.mprs"))) == example1());
	for (auto name : {"u22.rm", "u22-patched.rm"})
		CHECK(write_machine(parse_machine(read_file(data_path(name)))) == read_file(data_path(name)));
	CHECK(write_system(parse_system(read_file(data_path("u23.mprs")))) == read_file(data_path("u23.mprs")));
}

TEST_CASE("system round trip is byte-stable on canonical text")
{
	auto text = write_system(example1());
	CHECK(write_system(parse_system(text)) == text);
	auto u = write_system(u23_system());
	CHECK(write_system(parse_system(u)) == u);
}

TEST_CASE("machine grammar")
{
	auto m = parse_machine("# comment\n@registers 2\n@start a\n@final f\n\n"
	                       "a BRANCH 1 b c\nb DEC 1 a\nc INC 0 f\nf STOP\n");
	CHECK(m.program.size() == 4);
	CHECK(m.find("a")->op == Instruction::Op::Branch);
	CHECK(m.find("a")->alt == "c");
	CHECK(m.find("f")->op == Instruction::Op::Stop);
}

TEST_CASE("parse errors carry positions")
{
	auto expect_error = [](auto fn, std::size_t line) {
		try {
			fn();
			FAIL("expected a parse error");
		} catch (const ParseError& e) {
			CHECK(e.line() == line);
			CHECK(e.column() >= 1);
		}
	};
	expect_error([] { parse_machine("@registers 2\n@start a\n@final f\na JUMP 1 b\n"); }, 4);
	expect_error([] { parse_machine("@registers x\n"); }, 1);
	expect_error([] { parse_system("@alphabet A B\n@init A\nr1: A -> Z\n"); }, 3);
	expect_error([] { parse_system("@init A\nr1: A -> B\nr1: B -> A\n"); }, 3);
	expect_error([] { parse_system("@init A\nr1 A -> B\n"); }, 2);
	expect_error([] { parse_system("@bogus\n"); }, 1);
	expect_error([] { parse_system("@init A\nr1: -> B\n"); }, 2);
}

}
