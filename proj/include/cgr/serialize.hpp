#pragma once

// Plain-text map files.
//
//     congruential v1
//     modulus 3
//     piece 0: 2 0 3
//     piece 1: 4 -1 3
//     piece 2: 4 1 3
//
// '#' starts a comment, blank lines are ignored, pieces may appear in any
// order but each residue class must appear exactly once. Parse errors carry
// the 1-based line number.

#include <iosfwd>
#include <string>

#include "cgr/congruential.hpp"

namespace cgr {

struct ParseError : std::runtime_error {
    ParseError(unsigned long line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_no(line) {}
    unsigned long line_no;
};

CongruentialMap read_map(std::istream& in);
CongruentialMap read_map_file(const std::string& path);

void write_map(std::ostream& out, const CongruentialMap& f);
void write_map_file(const std::string& path, const CongruentialMap& f);
std::string map_to_string(const CongruentialMap& f);

}  // namespace cgr
