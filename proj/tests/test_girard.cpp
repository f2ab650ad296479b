// The interleave family: star, mu3, mu_k, the naturality laws, and the
// planar-tree term language with its freeness probe.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "cgr/catalogue.hpp"
#include "cgr/girard.hpp"
#include "cgr/randmap.hpp"
#include "oracle.hpp"

using cgr::BigInt;
using cgr::CongruentialMap;
using cgr::PlanarTree;
using oracle::make_map;
using oracle::same_table;

namespace {

std::vector<CongruentialMap> small_catalogue() {
    return {cgr::identity(), cgr::rho(), cgr::lambda(), cgr::alpha()};
}

CongruentialMap x1_table() {
    return make_map(8, {{1, 0, 1},
                        {2, -1, 1},
                        {1, 0, 1},
                        {1, 2, 1},
                        {1, 0, 1},
                        {2, -1, 1},
                        {1, 0, 1},
                        {1, -1, 2}});
}

}  // namespace

TEST_CASE("star interleaves onto evens and odds") {
    auto cat = small_catalogue();
    std::mt19937_64 rng(21);
    for (int extra = 0; extra < 20; ++extra) cat.push_back(cgr::random_bijection(rng));

    for (std::size_t i = 0; i < cat.size(); ++i)
        for (std::size_t j = 0; j < cat.size(); ++j) {
            CongruentialMap s = cgr::star(cat[i], cat[j]);
            for (BigInt n = 0; n <= 300; ++n) {
                REQUIRE(s(2 * n) == 2 * cat[i](n));
                REQUIRE(s(2 * n + 1) == 2 * cat[j](n) + 1);
            }
        }
}

TEST_CASE("star of identities is the identity; star(id, alpha) is the frozen table") {
    CHECK(same_table(cgr::star(cgr::identity(), cgr::identity()), cgr::identity()));
    CHECK(same_table(cgr::normalize(cgr::star(cgr::identity(), cgr::alpha())), x1_table()));

    // spot values of the four-case description: fixed on evens, 2n-1 on
    // 1 mod 4, n+2 on 3 mod 8, (n-1)/2 on 7 mod 8
    CongruentialMap x1 = cgr::star(cgr::identity(), cgr::alpha());
    CHECK(x1(6) == 6);
    CHECK(x1(5) == 9);
    CHECK(x1(3) == 5);
    CHECK(x1(7) == 3);
}

TEST_CASE("mu3 interleaves onto the three classes mod 3") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 15; ++t) {
        CongruentialMap f = cgr::random_bijection(rng);
        CongruentialMap g = cgr::random_bijection(rng);
        CongruentialMap h = cgr::random_bijection(rng);
        CongruentialMap m = cgr::mu3(f, g, h);
        for (BigInt n = 0; n <= 300; ++n) {
            REQUIRE(m(3 * n) == 3 * f(n));
            REQUIRE(m(3 * n + 1) == 3 * g(n) + 1);
            REQUIRE(m(3 * n + 2) == 3 * h(n) + 2);
        }
    }
    CHECK(cgr::mu3(cgr::alpha(), cgr::identity(), cgr::identity())(3) == 6);
}

TEST_CASE("mu_k obeys the closed interleave formula for every arity") {
    std::mt19937_64 rng(23);
    for (unsigned long k = 1; k <= 6; ++k) {
        std::vector<CongruentialMap> fs;
        for (unsigned long i = 0; i < k; ++i) fs.push_back(cgr::random_bijection(rng));
        CongruentialMap m = cgr::mu_k(fs);
        for (BigInt n = 0; n <= 200; ++n)
            for (unsigned long i = 0; i < k; ++i)
                REQUIRE(m(k * n + i) == BigInt(k) * fs[i](n) + i);
    }
    CHECK_THROWS_AS(cgr::mu_k({}), std::invalid_argument);
}

TEST_CASE("mu_k coincides with the argument, star, and mu3 at k = 1, 2, 3") {
    auto cat = small_catalogue();
    for (const auto& f : cat) {
        CHECK(cgr::equal(cgr::mu_k({f}), f));
        for (const auto& g : cat) {
            CHECK(cgr::equal(cgr::mu_k({f, g}), cgr::star(f, g)));
            for (const auto& h : cat) CHECK(cgr::equal(cgr::mu_k({f, g, h}), cgr::mu3(f, g, h)));
        }
    }
}

TEST_CASE("interleaving is a homomorphism in each coordinate") {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 25; ++t) {
        CongruentialMap a = cgr::random_bijection(rng);
        CongruentialMap b = cgr::random_bijection(rng);
        CongruentialMap c = cgr::random_bijection(rng);
        CongruentialMap d = cgr::random_bijection(rng);
        CHECK(cgr::equal(cgr::star(cgr::compose(a, c), cgr::compose(b, d)),
                         cgr::compose(cgr::star(a, b), cgr::star(c, d))));
    }
    for (unsigned long k = 3; k <= 5; ++k) {
        std::vector<CongruentialMap> fs, gs, fg;
        for (unsigned long i = 0; i < k; ++i) {
            fs.push_back(cgr::random_bijection(rng));
            gs.push_back(cgr::random_bijection(rng));
            fg.push_back(cgr::compose(fs.back(), gs.back()));
        }
        CHECK(cgr::equal(cgr::mu_k(fg), cgr::compose(cgr::mu_k(fs), cgr::mu_k(gs))));
    }
}

TEST_CASE("interleaving preserves bijectivity") {
    std::mt19937_64 rng(25);
    for (int t = 0; t < 15; ++t) {
        CongruentialMap f = cgr::random_bijection(rng);
        CongruentialMap g = cgr::random_bijection(rng);
        CHECK(cgr::certificate(cgr::is_bijection(cgr::star(f, g))) != nullptr);
    }
    // and not when an argument is not bijective
    CongruentialMap bad = cgr::star(make_map(1, {{2, 0, 1}}), cgr::identity());
    CHECK(cgr::refusal(cgr::is_bijection(bad)) != nullptr);
}

TEST_CASE("the associator intertwines the two bracketings") {
    auto cat = small_catalogue();
    for (const auto& f : cat)
        for (const auto& g : cat)
            for (const auto& h : cat) REQUIRE(cgr::check_alpha_naturality(f, g, h));

    std::mt19937_64 rng(26);
    for (int t = 0; t < 30; ++t)
        REQUIRE(cgr::check_alpha_naturality(cgr::random_bijection(rng),
                                            cgr::random_bijection(rng),
                                            cgr::random_bijection(rng)));
}

TEST_CASE("rho and lambda intertwine the flat ternary interleave") {
    auto cat = small_catalogue();
    for (const auto& f : cat)
        for (const auto& g : cat)
            for (const auto& h : cat) {
                REQUIRE(cgr::check_rho_naturality(f, g, h));
                REQUIRE(cgr::check_lambda_naturality(f, g, h));
            }

    std::mt19937_64 rng(27);
    for (int t = 0; t < 30; ++t) {
        CongruentialMap f = cgr::random_bijection(rng);
        CongruentialMap g = cgr::random_bijection(rng);
        CongruentialMap h = cgr::random_bijection(rng);
        REQUIRE(cgr::check_rho_naturality(f, g, h));
        REQUIRE(cgr::check_lambda_naturality(f, g, h));
    }
}

TEST_CASE("tree parsing and formatting round-trip") {
    for (const char* text : {"_", "(* _ _)", "(* _ (* _ _))", "(* (* _ _) _)", "(#3 _ _ _)",
                             "(#1 _)", "(* (#3 _ _ _) (* _ _))"}) {
        PlanarTree t = cgr::parse_tree(text);
        CHECK(cgr::parse_tree(cgr::format_tree(t)) == t);
    }
    CHECK(cgr::format_tree(cgr::parse_tree("(#2 _ _)")) == "(* _ _)");
    CHECK(cgr::parse_tree("  (* _ _)  ") == PlanarTree::node({PlanarTree::leaf(), PlanarTree::leaf()}));
}

TEST_CASE("malformed trees are rejected") {
    for (const char* text : {"", "()", "(*)", "(* _)", "(#3 _ _)", "(#0)", "(* _ _", "_ _",
                             "(* _ _) junk", "(* (#1 _) _)", "(& _ _)", "leaf"}) {
        CHECK_THROWS_AS(cgr::parse_tree(text), std::invalid_argument);
    }
}

TEST_CASE("tree evaluation applies the interleave at every node") {
    const CongruentialMap f = cgr::alpha(), g = cgr::rho(), h = cgr::lambda();

    CHECK(cgr::equal(cgr::eval_tree(cgr::parse_tree("_"), {f}), f));
    CHECK(cgr::equal(cgr::eval_tree(cgr::parse_tree("(#1 _)"), {f}), f));
    CHECK(cgr::equal(cgr::eval_tree(cgr::parse_tree("(* _ _)"), {f, g}), cgr::star(f, g)));
    CHECK(cgr::equal(cgr::eval_tree(cgr::parse_tree("(* _ (* _ _))"), {f, g, h}),
                     cgr::star(f, cgr::star(g, h))));
    CHECK(cgr::equal(cgr::eval_tree(cgr::parse_tree("(#3 _ _ _)"), {f, g, h}),
                     cgr::mu3(f, g, h)));

    CHECK_THROWS_AS(cgr::eval_tree(cgr::parse_tree("(* _ _)"), {f}), std::invalid_argument);
    CHECK_THROWS_AS(cgr::eval_tree(cgr::parse_tree("_"), {f, g}), std::invalid_argument);
}

TEST_CASE("tree enumeration counts 1, 1, 3, 10, 38 by leaf count") {
    const std::size_t by_leaves[] = {0, 1, 1, 3, 10, 38};
    std::size_t seen[6] = {};
    auto trees = cgr::enumerate_trees(5);
    CHECK(trees.size() == 53);
    for (const PlanarTree& t : trees) {
        REQUIRE(t.leaf_count() <= 5);
        ++seen[t.leaf_count()];
    }
    for (int l = 1; l <= 5; ++l) CHECK(seen[l] == by_leaves[l]);

    // no duplicates as terms
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (std::size_t j = i + 1; j < trees.size(); ++j) REQUIRE(!(trees[i] == trees[j]));
}

TEST_CASE("trees evaluated on the associator are pairwise distinct") {
    auto rep = cgr::freeness_probe(5, cgr::alpha());
    CHECK(rep.tree_count == 53);
    CHECK(rep.all_distinct);
    CHECK(rep.collision_a.empty());
}

TEST_CASE("the identity probe collapses distinct trees, so the probe matters") {
    auto rep = cgr::freeness_probe(3, cgr::identity());
    CHECK(rep.tree_count == 5);
    CHECK(!rep.all_distinct);
    CHECK(!rep.collision_a.empty());
    CHECK(rep.collision_a != rep.collision_b);
}
