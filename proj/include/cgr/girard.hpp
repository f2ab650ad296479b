#pragma once

// Girard's conjunction and its k-ary generalisation.
//
// star(f, g) interleaves two maps onto the even and odd numbers:
//     (f * g)(2n) = 2 f(n),   (f * g)(2n + 1) = 2 g(n) + 1.
// mu_k spreads k maps over the classes of an exact covering system:
//     mu_k(f_0..f_{k-1})(k n + i) = k f_i(n) + i.
// Both preserve bijectivity and composition (they are homomorphisms of the
// monoid of congruential maps in each argument tuple).
//
// Planar trees are the term language over this family: a k-ary node stands
// for mu_k applied to the subterms, a leaf picks up one argument.

#include <cstddef>
#include <string>
#include <vector>

#include "cgr/congruential.hpp"

namespace cgr {

CongruentialMap star(const CongruentialMap& f, const CongruentialMap& g);

// Ternary interleave written out case by case; equal to mu_k on a 3-tuple
// and kept as an independent route for cross-checking.
CongruentialMap mu3(const CongruentialMap& f, const CongruentialMap& g, const CongruentialMap& h);

// The closed formula, directly: one pass over k * lcm(moduli) classes. For
// k = 1, 2, 3 this coincides with the argument, star, and mu3.
CongruentialMap mu_k(const std::vector<CongruentialMap>& fs);

// The associator intertwines the two bracketings of a triple:
//     alpha o (f * (g * h)) = ((f * g) * h) o alpha.
bool check_alpha_naturality(const CongruentialMap& f, const CongruentialMap& g,
                            const CongruentialMap& h);

// rho and lambda intertwine the flat ternary interleave with one bracketing
// each:
//     rho    o mu3(f,g,h) = (f * (g * h)) o rho
//     lambda o mu3(f,g,h) = ((f * g) * h) o lambda.
bool check_rho_naturality(const CongruentialMap& f, const CongruentialMap& g,
                          const CongruentialMap& h);
bool check_lambda_naturality(const CongruentialMap& f, const CongruentialMap& g,
                             const CongruentialMap& h);

// Rooted planar tree; no children = leaf. Nodes have arity >= 2, except that
// the whole tree may be a single unary node (the k = 1 interleave, which is
// the identity wrapper).
struct PlanarTree {
    std::vector<PlanarTree> children;

    bool is_leaf() const { return children.empty(); }
    std::size_t leaf_count() const;

    static PlanarTree leaf() { return {}; }
    static PlanarTree node(std::vector<PlanarTree> kids) { return {std::move(kids)}; }

    bool operator==(const PlanarTree&) const = default;
};

// Bracketed term syntax: '_' is a leaf, '(* t1 t2 ...)' a node of arity =
// child count (>= 2), '(#k t1 ... tk)' a node of explicit arity k. Unary
// '#1' is accepted only as the entire term. Throws std::invalid_argument.
PlanarTree parse_tree(const std::string& text);
std::string format_tree(const PlanarTree& t);

// Applies mu at every node; leaves consume args left to right. Faults on
// arity mismatch between leaf count and args.size().
CongruentialMap eval_tree(const PlanarTree& t, const std::vector<CongruentialMap>& args);

// All trees with 1..max_leaves leaves whose nodes all have arity 2 or 3,
// in a deterministic order (by leaf count, then structurally).
std::vector<PlanarTree> enumerate_trees(std::size_t max_leaves);

// Distinctness probe: evaluates every enumerated tree on the constant tuple
// (probe, ..., probe) and looks for a colliding pair. A collision would
// exhibit a relation between the interleave operations; with probe = alpha
// none is expected. (Identity probes collapse everything.)
struct FreenessReport {
    std::size_t tree_count = 0;
    bool all_distinct = false;
    std::string collision_a, collision_b;  // term strings when a pair collides
};

FreenessReport freeness_probe(std::size_t max_leaves, const CongruentialMap& probe);

}  // namespace cgr
