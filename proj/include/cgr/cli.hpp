#pragma once

// Command-line front end. run() is the whole program minus main(), taking
// the argument list without the program name and the two output streams, so
// the test suite can drive it in-process.
//
// Exit status: 0 = success / property verified, 1 = verification failure
// (a report with a witness goes to the output), 2 = usage or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace cgr {

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cgr
