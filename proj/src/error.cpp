#include "mpmrs/error.hpp"

namespace mpmrs {

std::string_view kind_name(Error::Kind kind) noexcept
{
	switch (kind) {
	case Error::Kind::Parse: return "parse";
	case Error::Kind::Precondition: return "precondition";
	case Error::Kind::Overflow: return "overflow";
	case Error::Kind::Validation: return "validation";
	case Error::Kind::Unsupported: return "unsupported";
	case Error::Kind::Bound: return "bound";
	case Error::Kind::Compile: return "compile";
	case Error::Kind::Derivation: return "derivation";
	case Error::Kind::Execution: return "execution";
	}
	return "unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
	: Error(Kind::Parse,
	        std::to_string(line) + ":" + std::to_string(column) + ": " + message),
	  line_(line), column_(column)
{
}

} // namespace mpmrs
