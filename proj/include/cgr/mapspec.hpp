#pragma once

// Resolves the textual map specs used by the CLI and by diagram files.
//
// A spec is one of:
//   * a builtin name: rho, lambda, alpha, id, x0, x1, ..., xk:<j>;
//   * a call expression over specs: compose(s, t, ...), inverse(s),
//     star(s, t), mu(s, ...), normalize(s);
//   * anything else is taken as a path to a map file.
//
// compose with several arguments nests right-to-left, like everywhere else:
// compose(f, g, h) applies h first.

#include <string>

#include "cgr/congruential.hpp"

namespace cgr {

CongruentialMap resolve_map_spec(const std::string& spec);

}  // namespace cgr
