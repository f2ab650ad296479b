#pragma once

// The small zoo of named congruential bijections everything else is built
// from: the two Collatz bijections rho and lambda, the rebracketing map
// alpha, and the identity.

#include <optional>
#include <string>

#include "cgr/congruential.hpp"

namespace cgr {

// rho: even n -> 2n/3... more precisely, modulo 3:
//   3m -> 2m, 3m+1 -> 4m+1, 3m+2 -> 4m+3.
// Bijection sending the class of 0 mod 3 onto the even numbers and the other
// two classes onto the odds.
const CongruentialMap& rho();

// lambda, the mirror partner of rho, modulo 3:
//   3m -> 4m, 3m+1 -> 4m+2, 3m+2 -> 2m+1.
const CongruentialMap& lambda();

// alpha, modulo 4: 4m -> 8m, 4m+1 -> 4m+2, 4m+2 -> 8m+4, 4m+3 -> 2m+1.
// Doubles on even classes, halves the class of 3 mod 4.
const CongruentialMap& alpha();

const CongruentialMap& identity();

// Looks up "rho", "lambda", "alpha", "id"/"identity". Generator names of the
// interleaving tower ("x0", "x1", ... and "xk:<j>") are resolved by the
// layer that owns them, not here.
std::optional<CongruentialMap> builtin_map(const std::string& name);

}  // namespace cgr
