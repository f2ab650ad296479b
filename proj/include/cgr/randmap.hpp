#pragma once

// Deterministic pseudo-random maps for property suites and spot checks.
//
// Bijections are built from the image side: repeatedly split an arithmetic
// progression of the current exact cover of N into 2 or 3 finer ones, then
// assign the progressions to residue classes in shuffled order. Every map
// produced this way carries a bijection certificate by construction, with
// honest denominators (c = number of classes).

#include <random>

#include "cgr/congruential.hpp"

namespace cgr {

CongruentialMap random_bijection(std::mt19937_64& rng, unsigned long min_classes = 2,
                                 unsigned long max_classes = 9);

// Arbitrary total map: a bijection, or a bijection with one class collapsed
// to a constant, or one class redirected onto another's image progression
// (so usually not injective or not surjective).
CongruentialMap random_map(std::mt19937_64& rng);

}  // namespace cgr
