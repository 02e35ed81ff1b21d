#pragma once

#include "mpmrs/register_machine.hpp"
#include "mpmrs/system.hpp"

#include <string>
#include <string_view>

namespace mpmrs {

// Machine files:
//   @registers 8
//   @start q1
//   @final qf
//   q1 DECJZ 1 q3 q6
//   q3 INC 7 q1
//   q5 DEC 2 q6
//   q7 BRANCH 3 q8 q9
//   qf STOP
//
// System files:
//   @alphabet A B C D E F      (optional; derived from the rules when absent)
//   @registers E F
//   @terminal F
//   @init A^2 B E^2
//   @encode q1 = A^2 B         (optional state encoding entries)
//   @encoding-registers E F    (register order of the encoding)
//   r1: A B -> C
//
// Blank lines and lines starting with '#' are ignored. Errors are reported
// as ParseError with 1-based line and column.

RegisterMachine parse_machine(std::string_view text);
std::string write_machine(const RegisterMachine& m);

FsMpmrsSystem parse_system(std::string_view text);
std::string write_system(const FsMpmrsSystem& sys);

std::string read_file(const std::string& path);

} // namespace mpmrs
