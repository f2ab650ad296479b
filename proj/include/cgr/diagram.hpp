#pragma once

// Commuting-diagram checking for graphs whose edges carry congruential
// maps. The flagship instance is the two-ring pentagram: MacLane's pentagon
// (red), each red edge factored through an auxiliary node by a pair of green
// edges, and blue edges closing the outer ring. The whole 10-node diagram
// commutes, and the checker verifies that by exhaustively comparing path
// composites between every ordered node pair.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cgr/congruential.hpp"

namespace cgr {

struct DiagramEdge {
    std::string source;
    std::string target;
    CongruentialMap label;
    std::string color;  // free-form tag: "red", "green", "blue", ...
    std::string name;   // human-readable label text, e.g. "alpha" or "inverse(rho)"
};

struct DiagramGraph {
    std::vector<std::string> nodes;
    std::vector<DiagramEdge> edges;

    void add_node(const std::string& id);
    // Source and target must already be nodes; throws otherwise.
    void add_edge(const std::string& src, const std::string& dst, CongruentialMap label,
                  std::string color = "", std::string name = "");
};

// One pair of same-endpoints paths whose composites differ, plus a witness.
struct PathViolation {
    std::vector<std::size_t> path_a;  // edge indices, in travel order
    std::vector<std::size_t> path_b;
    BigInt witness;                   // composite_a(witness) != composite_b(witness)
    std::string describe(const DiagramGraph& d) const;
};

struct CommutationReport {
    std::size_t pairs_checked = 0;  // ordered node pairs with >= 2 paths
    std::size_t paths_compared = 0;
    std::vector<PathViolation> violations;

    bool commutes() const { return violations.empty(); }
};

// Enumerates every directed path of at most max_path_len edges between each
// ordered node pair, composes the labels right-to-left along the walk, and
// demands all composites for a pair be extensionally equal. Stops after
// max_violations findings (0 = collect everything).
CommutationReport check_commutes(const DiagramGraph& d, std::size_t max_path_len,
                                 std::size_t max_violations = 1);

void write_violations_csv(std::ostream& out, const DiagramGraph& d,
                          const CommutationReport& rep);

// The pentagram: nodes V0..V4 (pentagon corners, red edges), E0..E4 (the
// midpoints factoring each red edge through a green pair), and blue edges
// between consecutive midpoints.
DiagramGraph build_figure1();

// Three nodes in a row, lambda to the left and rho to the right from the
// middle; smallest fixture relating the two Collatz bijections to the
// associator via lambda = alpha o rho.
DiagramGraph build_k3();

// Structure checks specific to the pentagram, beyond raw commutation: each
// red edge against its green factorization, and each blue edge against the
// triangle it closes with neighbouring green edges (labels are transcribed
// verbatim, so this also documents that the verbatim transcription is
// consistent).
struct Figure1Report {
    struct Item {
        std::string what;
        bool holds = false;
    };
    std::vector<Item> red_factorizations;   // 5 entries
    std::vector<Item> blue_triangles;       // 5 entries
    CommutationReport commutation;          // full diagram at the given cap

    bool all_hold() const;
};

Figure1Report verify_figure1(std::size_t max_path_len = 6);

struct K3Report {
    bool commutes = false;         // the two-edge diagram itself
    bool lambda_factors = false;   // lambda = alpha o rho, tying the edges together
    bool all_hold() const { return commutes && lambda_factors; }
};

K3Report verify_k3();

// Text form: lines `node <id>` and `edge <src> <dst> <color> <map-spec>`,
// with '#' comments. The map-spec column uses resolve_map_spec.
DiagramGraph read_diagram(std::istream& in);
DiagramGraph read_diagram_file(const std::string& path);
void write_diagram(std::ostream& out, const DiagramGraph& d);

}  // namespace cgr
