#pragma once

#include <string>
#include <string_view>

#include "wpo/program.hpp"

namespace wpo {

Program parse_litmus(std::string_view text);
Program parse_minic(std::string_view text, std::string name = "minic");

// Picks the parser from the extension (.litmus or .mc); the program name defaults to the file stem.
Program load_program_file(const std::string& path);

std::string print_expr(const Expr& e);
std::string print_litmus(const Program& p);
std::string print_minic(const Program& p);
// Litmus syntax for exists-mode programs, MiniC otherwise.
std::string print_program(const Program& p);

}  // namespace wpo
