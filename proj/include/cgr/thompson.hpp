#pragma once

// Thompson's group F realised by congruential bijections.
//
// The generator tower is X_0 = alpha, X_{j+1} = Id * X_j. Words in the x_j
// and their inverses are evaluated to maps (composition right-to-left, as
// everywhere), which decides the word problem outright: two words are equal
// in the group iff their maps are extensionally equal.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cgr/congruential.hpp"

namespace cgr {

struct WordLetter {
    unsigned long index = 0;  // the j of x_j
    bool inverse = false;

    bool operator==(const WordLetter&) const = default;
};

struct GroupWord {
    std::vector<WordLetter> letters;  // leftmost letter acts last

    bool operator==(const GroupWord&) const = default;
};

// Word syntax: whitespace-separated letters `x<j>` with a trailing
// apostrophe for the inverse, e.g. "x0 x1' x0". Throws std::invalid_argument
// on anything else.
GroupWord parse_word(const std::string& text);
std::string format_word(const GroupWord& w);

// Cancels adjacent x x' pairs until none remain. Purely syntactic; words
// that are semantically trivial but not freely trivial survive.
GroupWord free_reduce(GroupWord w);

// X_j, memoized (thread-safe, initialize-once). X_j normalizes to modulus
// 2^{j+2}; the suite re-checks this, the catalogue does not assume it.
const CongruentialMap& generator(unsigned long j);

// Word to map, rightmost letter applied first. Empty word = identity.
// The result is normalized.
CongruentialMap eval_word(const GroupWord& w);

// The word problem: semantic equality through the realisation.
bool words_equal(const GroupWord& u, const GroupWord& v);

// alpha^2 = (alpha * Id) o alpha o (Id * alpha), the coherence identity that
// makes the one-object category semi-monoidal.
bool check_pentagon();

// star(star(A,B),C) = X_0 o star(A, star(B,C)) o X_0^-1 for evaluated words:
// the two bracketings of a triple are conjugate by x_0 inside the group.
bool check_brown_conjugation(const GroupWord& a, const GroupWord& b, const GroupWord& c);

struct RelationFailure {
    unsigned long i = 0, j = 0;
    BigInt witness;  // n where the two sides differ
};

struct RelationReport {
    unsigned long max_index = 0;
    std::size_t checked = 0;
    std::vector<RelationFailure> failures;

    bool all_hold() const { return failures.empty(); }
};

// X_j = X_i o X_{j+1} o X_i^-1 for all 0 <= i < j <= max_index, exactly.
RelationReport verify_relations(unsigned long max_index);

// Bounded search for a word in {x0, x1} (and inverses) evaluating to the
// given map: breadth-first over words up to max_len letters, deduplicated by
// normal form. nullopt means "not found within the bound", never "not in the
// group".
std::optional<GroupWord> find_word_for_map(const CongruentialMap& target, std::size_t max_len);

}  // namespace cgr
