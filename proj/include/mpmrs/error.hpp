#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpmrs {

/// Exception type used throughout the toolkit. The kind doubles as the
/// machine-readable error class reported by the command-line front end.
class Error : public std::runtime_error {
public:
	enum class Kind {
		Parse,
		Precondition,
		Overflow,
		Validation,
		Unsupported,
		Bound,
		Compile,
		Derivation,
		Execution,
	};

	Error(Kind kind, const std::string& what)
		: std::runtime_error(what), kind_(kind) {}

	Kind kind() const noexcept { return kind_; }

private:
	Kind kind_;
};

std::string_view kind_name(Error::Kind kind) noexcept;

/// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
	ParseError(std::size_t line, std::size_t column, const std::string& message);

	std::size_t line() const noexcept { return line_; }
	std::size_t column() const noexcept { return column_; }

private:
	std::size_t line_;
	std::size_t column_;
};

} // namespace mpmrs
