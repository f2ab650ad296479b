// Commuting-diagram checking: path enumeration, violation witnesses, the
// pentagram fixture with its factorization and triangle structure, the small
// three-node fixture, mutation soundness, and the text format.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "cgr/catalogue.hpp"
#include "cgr/diagram.hpp"
#include "cgr/girard.hpp"
#include "cgr/serialize.hpp"
#include "oracle.hpp"

using cgr::BigInt;
using cgr::CongruentialMap;
using cgr::DiagramGraph;

namespace {

// Composite of a path (edge indices in travel order), right-to-left.
CongruentialMap path_map(const DiagramGraph& d, const std::vector<std::size_t>& path) {
    CongruentialMap acc = cgr::identity_map();
    for (std::size_t e : path) acc = cgr::compose(d.edges[e].label, acc);
    return acc;
}

void check_violation_witness(const DiagramGraph& d, const cgr::PathViolation& v) {
    CongruentialMap a = path_map(d, v.path_a);
    CongruentialMap b = path_map(d, v.path_b);
    CHECK(a(v.witness) != b(v.witness));
}

}  // namespace

TEST_CASE("parallel identical edges commute; different labels do not") {
    DiagramGraph d;
    d.add_node("A");
    d.add_node("B");
    d.add_edge("A", "B", cgr::rho(), "x", "rho");
    d.add_edge("A", "B", cgr::rho(), "y", "rho");
    auto rep = cgr::check_commutes(d, 3);
    CHECK(rep.commutes());
    CHECK(rep.pairs_checked >= 1);

    DiagramGraph bad = d;
    bad.edges[1].label = cgr::lambda();
    auto brep = cgr::check_commutes(bad, 3);
    REQUIRE(!brep.commutes());
    check_violation_witness(bad, brep.violations.front());
    CHECK(!brep.violations.front().describe(bad).empty());
}

TEST_CASE("a directed cycle must compose to the identity") {
    DiagramGraph d;
    d.add_node("A");
    d.add_edge("A", "A", cgr::identity_map(), "", "id");
    CHECK(cgr::check_commutes(d, 4).commutes());

    DiagramGraph bad;
    bad.add_node("A");
    bad.add_edge("A", "A", cgr::rho(), "", "rho");
    auto rep = cgr::check_commutes(bad, 4);
    REQUIRE(!rep.commutes());
    check_violation_witness(bad, rep.violations.front());
}

TEST_CASE("edges must connect declared nodes, nodes must be fresh") {
    DiagramGraph d;
    d.add_node("A");
    CHECK_THROWS_AS(d.add_node("A"), std::invalid_argument);
    CHECK_THROWS_AS(d.add_edge("A", "Z", cgr::rho(), "", ""), std::invalid_argument);
    CHECK_THROWS_AS(d.add_edge("Z", "A", cgr::rho(), "", ""), std::invalid_argument);
}

TEST_CASE("the bare pentagon ring commutes") {
    const CongruentialMap& a = cgr::alpha();
    DiagramGraph d;
    for (const char* n : {"P0", "P1", "P2", "P3", "P4"}) d.add_node(n);
    d.add_edge("P0", "P1", a, "red", "alpha");
    d.add_edge("P1", "P2", a, "red", "alpha");
    d.add_edge("P0", "P4", cgr::star(cgr::identity(), a), "red", "star(id,alpha)");
    d.add_edge("P4", "P3", a, "red", "alpha");
    d.add_edge("P3", "P2", cgr::star(a, cgr::identity()), "red", "star(alpha,id)");
    auto rep = cgr::check_commutes(d, 5);
    CHECK(rep.commutes());
    CHECK(rep.pairs_checked > 0);
}

TEST_CASE("the pentagram has the advertised shape") {
    DiagramGraph d = cgr::build_figure1();
    CHECK(d.nodes.size() == 10);
    CHECK(d.edges.size() == 20);
    std::size_t red = 0, green = 0, blue = 0;
    for (const auto& e : d.edges) {
        if (e.color == "red") ++red;
        if (e.color == "green") ++green;
        if (e.color == "blue") ++blue;
        CHECK(!e.name.empty());
    }
    CHECK(red == 5);
    CHECK(green == 10);
    CHECK(blue == 5);
}

TEST_CASE("the pentagram commutes and its local structure holds") {
    auto rep = cgr::verify_figure1(6);
    CHECK(rep.all_hold());
    CHECK(rep.red_factorizations.size() == 5);
    CHECK(rep.blue_triangles.size() == 5);
    for (const auto& item : rep.red_factorizations) {
        CHECK(item.holds);
        CHECK(!item.what.empty());
    }
    for (const auto& item : rep.blue_triangles) CHECK(item.holds);
    CHECK(rep.commutation.commutes());
    CHECK(rep.commutation.pairs_checked > 0);
    CHECK(rep.commutation.paths_compared > rep.commutation.pairs_checked);
}

TEST_CASE("perturbing any single pentagram edge breaks commutation with a witness") {
    const DiagramGraph original = cgr::build_figure1();
    for (std::size_t e = 0; e < original.edges.size(); ++e) {
        DiagramGraph mutated = original;
        mutated.edges[e].label = cgr::compose(cgr::rho(), mutated.edges[e].label);
        auto rep = cgr::check_commutes(mutated, 5);
        CAPTURE(e);
        CAPTURE(original.edges[e].name);
        REQUIRE(!rep.commutes());
        check_violation_witness(mutated, rep.violations.front());
    }
}

TEST_CASE("the three-node fixture ties lambda to alpha and rho") {
    auto rep = cgr::verify_k3();
    CHECK(rep.commutes);
    CHECK(rep.lambda_factors);
    CHECK(rep.all_hold());

    DiagramGraph d = cgr::build_k3();
    CHECK(d.nodes.size() == 3);
    CHECK(d.edges.size() == 2);
    CHECK(cgr::equal(cgr::compose(cgr::alpha(), cgr::rho()), cgr::lambda()));
}

TEST_CASE("violations can be dumped as CSV") {
    DiagramGraph bad;
    bad.add_node("A");
    bad.add_node("B");
    bad.add_edge("A", "B", cgr::rho(), "", "rho");
    bad.add_edge("A", "B", cgr::lambda(), "", "lambda");
    auto rep = cgr::check_commutes(bad, 2);
    REQUIRE(!rep.commutes());
    std::ostringstream os;
    cgr::write_violations_csv(os, bad, rep);
    std::string text = os.str();
    CHECK(text.find("path_a") != std::string::npos);
    CHECK(text.find("rho") != std::string::npos);
    CHECK(text.find("lambda") != std::string::npos);
}

TEST_CASE("max_violations bounds the search and zero collects everything") {
    DiagramGraph bad;
    bad.add_node("A");
    bad.add_node("B");
    bad.add_node("C");
    bad.add_edge("A", "B", cgr::rho(), "", "rho");
    bad.add_edge("A", "B", cgr::lambda(), "", "lambda");
    bad.add_edge("A", "C", cgr::alpha(), "", "alpha");
    bad.add_edge("A", "C", cgr::identity_map(), "", "id");
    CHECK(cgr::check_commutes(bad, 2, 1).violations.size() == 1);
    CHECK(cgr::check_commutes(bad, 2, 0).violations.size() == 2);
}

TEST_CASE("diagram text files round-trip") {
    DiagramGraph d = cgr::build_figure1();
    std::ostringstream os;
    cgr::write_diagram(os, d);

    std::istringstream is(os.str());
    DiagramGraph back = cgr::read_diagram(is);
    REQUIRE(back.nodes == d.nodes);
    REQUIRE(back.edges.size() == d.edges.size());
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
        CHECK(back.edges[i].source == d.edges[i].source);
        CHECK(back.edges[i].target == d.edges[i].target);
        CHECK(back.edges[i].color == d.edges[i].color);
        CHECK(back.edges[i].name == d.edges[i].name);
        CHECK(cgr::equal(back.edges[i].label, d.edges[i].label));
    }
}

TEST_CASE("diagram parsing reports the offending line") {
    auto line_of = [](const std::string& text) -> unsigned long {
        std::istringstream is(text);
        try {
            cgr::read_diagram(is);
        } catch (const cgr::ParseError& e) {
            return e.line_no;
        }
        return 0;
    };
    CHECK(line_of("node A\nnode A\n") == 2);
    CHECK(line_of("node A\nedge A Z red rho\n") == 2);
    CHECK(line_of("node A\nnode B\nedge A B red\n") == 3);
    CHECK(line_of("vertex A\n") == 1);
    CHECK(line_of("node A\nnode B\nedge A B red nosuchmapfile\n") == 3);
    CHECK(line_of("# comment only\nnode A\n") == 0);
}

TEST_CASE("comments and blank lines are tolerated in diagram files") {
    std::istringstream is(
        "# the smallest honest diagram\n"
        "node A\n"
        "\n"
        "node B   # endpoint\n"
        "edge A B red compose(lambda,inverse(rho))\n");
    DiagramGraph d = cgr::read_diagram(is);
    CHECK(d.nodes.size() == 2);
    REQUIRE(d.edges.size() == 1);
    CHECK(cgr::equal(d.edges[0].label, cgr::alpha()));
}
