#pragma once

#include <string>

#include "residua/date.hpp"
#include "residua/program.hpp"
#include "residua/residual.hpp"

namespace residua {

/// Parses the `.date` format. Star pseudo-transitions are expanded and
/// every DateSpec invariant is enforced; errors carry line/column.
DateSpec parse_date(const std::string& text);

/// Canonical printing: sorted alphabet/states/bad/transitions, variables
/// in declaration order. parse(print(d)) == d.
std::string print_date(const DateSpec& d);

/// Parses the `.prog` format and closes the alias relations.
ProgramModel parse_program(const std::string& text);

std::string print_program(const ProgramModel& p);

/// `.trace` files: one `<id> <event>` pair per line (parametrised) or one
/// `<event>` per line (ground); blank lines and # comments ignored.
ParamTrace parse_param_trace(const std::string& text);
GroundTrace parse_ground_trace(const std::string& text);

std::string print_param_trace(const ParamTrace& t);

/// `.silenced` files: one `<id> <event>` per line, sorted.
SilencedSet parse_silenced(const std::string& text);
std::string print_silenced(const SilencedSet& s);

/// `.report` summary; byte-stable.
std::string print_report(const ResidualReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace residua
