// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "rtune/ir/program.hpp"

namespace rtune {

/// Parses the textual IR (`.air`). Throws ProgramError naming the line and
/// offending token on syntax errors, undeclared variables, duplicate assertion
/// ids and dangling branch targets.
///
///   fn main {
///     array a[n];
///     block entry {
///       n = havoc(1, 8);
///       x = havoc(0, 3);
///       assert div: x != 0 #1;
///       br (x < n) then: body else: done;
///     }
///     ...
///   }
///
/// `v = a op b` with atomic operands is a binary operation; any other linear
/// right-hand side (parenthesised when it would otherwise look like one) is a
/// linear assignment. Booleans are inferred from their assignments.
Program parse_program(std::string_view text);

Program parse_program_file(const std::string& path);

/// Prints a program in a form parse_program reads back to an equal Program.
std::string print_program(const Program& p);
std::string print_expr(const Function& f, const LinExpr& e);
std::string print_expr(const Function& f, const BoolExpr& e);
std::string print_stmt(const Function& f, const Stmt& s);

}  // namespace rtune
