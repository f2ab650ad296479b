// Orbit iteration, cycle detection against the naive oracle, extrema
// tracking, CSV streaming, the structure checks for alpha and the successor
// conjugation, and the checkpointed twin campaign.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "cgr/catalogue.hpp"
#include "cgr/orbit.hpp"
#include "oracle.hpp"

using cgr::BigInt;
using cgr::CongruentialMap;
using cgr::OrbitOptions;
using cgr::OrbitRecord;
using oracle::make_map;

namespace {

std::string temp_path(const char* tag) {
    return std::string("cgr_test_") + tag + "_" + std::to_string(::getpid()) + ".ckpt";
}

struct FileGuard {
    std::string path;
    ~FileGuard() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("small orbits of rho land in the known cycles") {
    struct Expect {
        long seed;
        unsigned long length;
        std::vector<BigInt> values;
    };
    const Expect table[] = {
        {0, 1, {0}},
        {1, 1, {1}},
        {2, 2, {2, 3}},
        {3, 2, {3, 2}},
        {4, 5, {4, 5, 7, 9, 6}},
        {6, 5, {6, 4, 5, 7, 9}},
        {9, 5, {9, 6, 4, 5, 7}},
    };
    OrbitOptions opts;
    opts.store_values = true;
    for (const Expect& e : table) {
        OrbitRecord rec = cgr::orbit(cgr::rho(), e.seed, opts);
        const auto* c = rec.cycle();
        REQUIRE(c != nullptr);
        CHECK(c->length == e.length);
        CHECK(c->entry_step == 0);
        CHECK(rec.steps == e.length);
        REQUIRE(rec.values.has_value());
        CHECK(*rec.values == e.values);
    }
}

TEST_CASE("every seed below 10 except 8 is cyclic under rho, and the cycles are exact") {
    std::set<std::vector<long>> cycles;
    for (long seed = 0; seed < 10; ++seed) {
        if (seed == 8) continue;
        OrbitOptions opts;
        opts.step_bound = 1000;
        OrbitRecord rec = cgr::orbit(cgr::rho(), seed, opts);
        REQUIRE(rec.cycle() != nullptr);

        auto naive = oracle::naive_cycle(cgr::rho(), seed, 1000);
        REQUIRE(naive.found);
        CHECK(rec.cycle()->length == naive.length);
        CHECK(rec.cycle()->entry_step == naive.entry);

        // canonical rotation: smallest element first
        std::vector<long> cyc;
        BigInt x = seed;
        for (unsigned long i = 0; i < rec.cycle()->length; ++i) {
            cyc.push_back(x.get_si());
            x = cgr::rho()(x);
        }
        std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
        cycles.insert(cyc);
    }
    CHECK(cycles == std::set<std::vector<long>>{{0}, {1}, {2, 3}, {4, 5, 7, 9, 6}});
}

TEST_CASE("the orbit of 8 stays open and matches direct iteration") {
    OrbitOptions opts;
    opts.step_bound = 10000;
    opts.value_bound.reset();
    OrbitRecord rec = cgr::orbit(cgr::rho(), 8, opts);
    REQUIRE(rec.open() != nullptr);
    CHECK(rec.open()->hit == cgr::BoundKind::step_bound);
    CHECK(rec.steps == 10000);

    BigInt x = 8;
    for (int i = 0; i < 10000; ++i) x = cgr::rho()(x);
    CHECK(rec.final_value == x);

    // no repetition in the prefix: rho is a bijection, so a repeat would
    // have had to close at the seed and end the orbit early
    auto naive = oracle::naive_cycle(cgr::rho(), 8, 3000);
    CHECK(!naive.found);
}

TEST_CASE("a value bound stops growth honestly") {
    OrbitOptions opts;
    opts.step_bound = 100000;
    opts.value_bound = cgr::pow2(64);
    OrbitRecord rec = cgr::orbit(cgr::rho(), 8, opts);
    REQUIRE(rec.open() != nullptr);
    CHECK(rec.open()->hit == cgr::BoundKind::value_bound);
    CHECK(rec.final_value > *opts.value_bound);
    CHECK(rec.steps < 100000);
}

TEST_CASE("orbit runs are deterministic") {
    OrbitOptions opts;
    opts.step_bound = 3000;
    opts.value_bound.reset();
    OrbitRecord a = cgr::orbit(cgr::rho(), 8, opts);
    OrbitRecord b = cgr::orbit(cgr::rho(), 8, opts);
    CHECK(a.steps == b.steps);
    CHECK(a.final_value == b.final_value);
    CHECK(a.digest == b.digest);
    CHECK(a.extrema == b.extrema);
}

TEST_CASE("recorded extrema are exactly the strict local extrema of the trajectory") {
    OrbitOptions opts;
    opts.step_bound = 2000;
    opts.value_bound.reset();
    opts.store_values = true;
    OrbitRecord rec = cgr::orbit(cgr::rho(), 8, opts);
    REQUIRE(rec.values.has_value());
    const auto& v = *rec.values;
    REQUIRE(v.size() == rec.steps + 1);

    std::vector<cgr::Extremum> expected;
    cgr::ExtremaDigest digest;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i - 1] > v[i] && v[i] < v[i + 1]) {
            expected.push_back({static_cast<unsigned long>(i), v[i], true});
            digest.fold(expected.back());
        } else if (v[i - 1] < v[i] && v[i] > v[i + 1]) {
            expected.push_back({static_cast<unsigned long>(i), v[i], false});
            digest.fold(expected.back());
        }
    }
    CHECK(rec.extrema == expected);
    CHECK(rec.digest == digest);
    CHECK(rec.digest.minima_count + rec.digest.maxima_count == expected.size());
}

TEST_CASE("the extrema list is capped but the digest keeps counting") {
    OrbitOptions opts;
    opts.step_bound = 2000;
    opts.value_bound.reset();
    opts.extrema_cap = 10;
    OrbitRecord rec = cgr::orbit(cgr::rho(), 8, opts);
    CHECK(rec.extrema.size() == 10);
    CHECK(rec.digest.minima_count + rec.digest.maxima_count > 10);
}

TEST_CASE("non-bijections with a pre-period are pinned down exactly") {
    // halving-ish map: f(even) = (n+2)/2, f(odd) = (n+1)/2; collapses to the
    // fixed point 1 from everywhere
    CongruentialMap f = make_map(2, {{1, 2, 2}, {1, 1, 2}});
    REQUIRE(cgr::refusal(cgr::is_bijection(f)) != nullptr);

    // the last seed takes ~40 halvings to come down, so Brent has to relocate
    // a deep entry point when the window is off
    const std::vector<BigInt> seeds = {100, 77, 1, 0, cgr::pow2(40) + 5};
    for (const BigInt& seed : seeds) {
        auto naive = oracle::naive_cycle(f, seed, 1000);
        REQUIRE(naive.found);

        OrbitOptions opts;
        OrbitRecord rec = cgr::orbit(f, seed, opts);
        REQUIRE(rec.cycle() != nullptr);
        CHECK(rec.cycle()->length == naive.length);
        CHECK(rec.cycle()->entry_step == naive.entry);
        CHECK(rec.steps == naive.entry + naive.length);

        // same with the hash window disabled, forcing the slow detector
        opts.hash_window = 0;
        OrbitRecord brent = cgr::orbit(f, seed, opts);
        REQUIRE(brent.cycle() != nullptr);
        CHECK(brent.cycle()->length == naive.length);
        CHECK(brent.cycle()->entry_step == naive.entry);
    }
}

TEST_CASE("mixed trajectory shapes survive every detector configuration") {
    CongruentialMap f = make_map(12, {{1, 2, 1},
                                      {1, 2, 1},
                                      {1, 1, 1},
                                      {1, -1, 1},
                                      {1, -1, 1},
                                      {1, -1, 1},
                                      {1, -1, 1},
                                      {1, -1, 1},
                                      {1, -1, 1},
                                      {1, -1, 1},
                                      {1, -1, 1},
                                      {1, -1, 1}});
    for (long seed : {50, 13, 4, 3}) {
        auto naive = oracle::naive_cycle(f, seed, 1000);
        REQUIRE(naive.found);
        for (std::size_t window : {std::size_t(1) << 15, std::size_t(4), std::size_t(0)}) {
            OrbitOptions opts;
            opts.hash_window = window;
            OrbitRecord rec = cgr::orbit(f, seed, opts);
            REQUIRE(rec.cycle() != nullptr);
            CHECK(rec.cycle()->length == naive.length);
            CHECK(rec.cycle()->entry_step == naive.entry);
        }
    }
}

TEST_CASE("CSV streaming emits one row per position with extrema flags") {
    std::ostringstream os;
    cgr::orbit_csv(cgr::rho(), 4, 7, os);
    CHECK(os.str() ==
          "step,bits,is_local_min,is_local_max\n"
          "0,3,0,0\n"
          "1,3,0,0\n"
          "2,3,0,0\n"
          "3,4,0,1\n"
          "4,3,0,0\n"
          "5,3,1,0\n"
          "6,3,0,0\n"
          "7,3,0,0\n");

    std::ostringstream single;
    cgr::orbit_csv(cgr::rho(), 0, 0, single);
    CHECK(single.str() == "step,bits,is_local_min,is_local_max\n0,1,0,0\n");
}

TEST_CASE("pulling back through alpha is structured: odd up, even down, zero fixed") {
    auto rep = cgr::verify_alpha_orbit_structure(2000);
    CHECK(rep.all_hold());
    CHECK(rep.checked_up_to == 2000);

    CongruentialMap back = cgr::inverse(cgr::alpha());
    CHECK(back(0) == 0);
    CHECK(back(7) == 15);
    CHECK(back(4) == 2);

    // every even seed descends strictly until the trajectory turns odd, then
    // ascends strictly forever
    for (long seed = 2; seed <= 600; seed += 2) {
        BigInt x = seed;
        bool went_odd = (cgr::floor_mod(x, 2) == 1);
        for (int k = 0; k < 60; ++k) {
            BigInt next = back(x);
            if (went_odd) {
                REQUIRE(next > x);
            } else if (cgr::floor_mod(next, 2) == 1) {
                went_odd = true;
                REQUIRE(next < x);
            } else {
                REQUIRE(next < x);
                REQUIRE(next != 0);
            }
            x = next;
        }
    }
}

TEST_CASE("iterating lambda is iterating rho one step up") {
    auto rep = cgr::verify_succ_naturality(100, 500);
    CHECK(rep.all_hold());
    CHECK(rep.k_max == 100);

    // direct spot check at depth 1000 from one seed
    BigInt left = 7, right = 8;
    for (int k = 0; k < 1000; ++k) {
        left = cgr::lambda()(left);
        right = cgr::rho()(right);
        REQUIRE(left == right - 1);
    }
}

TEST_CASE("the campaign detects the short cycles immediately") {
    cgr::CampaignOptions opts;
    opts.seed = 2;
    opts.step_bound = 100;
    cgr::CampaignResult res = cgr::occ_campaign(opts);
    REQUIRE(res.record.cycle() != nullptr);
    CHECK(res.record.cycle()->length == 2);
    CHECK(res.record.final_value == 2);
    CHECK(res.linkage_verified);

    opts.seed = 1;
    res = cgr::occ_campaign(opts);
    REQUIRE(res.record.cycle() != nullptr);
    CHECK(res.record.cycle()->length == 1);
}

TEST_CASE("the campaign keeps the twin trajectory exactly one below") {
    cgr::CampaignOptions opts;
    opts.seed = 8;
    opts.step_bound = 1500;
    cgr::CampaignResult res = cgr::occ_campaign(opts);
    REQUIRE(res.record.open() != nullptr);
    CHECK(res.record.steps == 1500);
    CHECK(res.linkage_verified);
    CHECK(res.twin_final == res.record.final_value - 1);

    BigInt x = 8;
    for (int i = 0; i < 1500; ++i) x = cgr::rho()(x);
    CHECK(res.record.final_value == x);
}

TEST_CASE("a resumed campaign is indistinguishable from a straight run") {
    FileGuard ckpt{temp_path("resume")};

    cgr::CampaignOptions straight;
    straight.seed = 8;
    straight.step_bound = 3000;
    cgr::CampaignResult whole = cgr::occ_campaign(straight);

    cgr::CampaignOptions first;
    first.seed = 8;
    first.step_bound = 1000;
    first.checkpoint_path = ckpt.path;
    first.checkpoint_every = 400;
    cgr::CampaignResult part = cgr::occ_campaign(first);
    CHECK(part.record.steps == 1000);

    cgr::CampaignOptions second = first;
    second.step_bound = 3000;
    second.resume = true;
    cgr::CampaignResult rest = cgr::occ_campaign(second);
    CHECK(rest.resumed_from == 1000);
    CHECK(rest.record.steps == 3000);
    CHECK(rest.record.final_value == whole.record.final_value);
    CHECK(rest.twin_final == whole.twin_final);
    CHECK(rest.record.digest == whole.record.digest);
    CHECK(rest.linkage_verified);

    // resume with no file present starts from scratch
    cgr::CampaignOptions fresh;
    fresh.seed = 8;
    fresh.step_bound = 50;
    fresh.checkpoint_path = temp_path("absent");
    fresh.resume = true;
    FileGuard absent{fresh.checkpoint_path};
    cgr::CampaignResult scratch = cgr::occ_campaign(fresh);
    CHECK(scratch.resumed_from == 0);
    CHECK(scratch.record.steps == 50);
}

TEST_CASE("corrupt or mismatched checkpoints are refused with a diagnostic") {
    FileGuard ckpt{temp_path("corrupt")};

    cgr::CampaignOptions opts;
    opts.seed = 8;
    opts.step_bound = 200;
    opts.checkpoint_path = ckpt.path;
    opts.checkpoint_every = 100;
    cgr::occ_campaign(opts);

    cgr::CampaignOptions resume = opts;
    resume.resume = true;
    resume.step_bound = 300;

    SUBCASE("wrong header") {
        write_text(ckpt.path, "not a checkpoint\n");
        CHECK_THROWS_AS(cgr::occ_campaign(resume), cgr::CheckpointError);
    }
    SUBCASE("seed mismatch") {
        resume.seed = 9;
        CHECK_THROWS_AS(cgr::occ_campaign(resume), cgr::CheckpointError);
    }
    SUBCASE("tampered twin value breaks the linkage check") {
        std::ifstream in(ckpt.path);
        std::string text((std::istreambuf_iterator<char>(in)), {});
        in.close();
        auto pos = text.find("twin_value ");
        REQUIRE(pos != std::string::npos);
        text.insert(pos + std::string("twin_value ").size(), "9");
        write_text(ckpt.path, text);
        CHECK_THROWS_AS(cgr::occ_campaign(resume), cgr::CheckpointError);
    }
    SUBCASE("missing key") {
        write_text(ckpt.path, "occ-checkpoint v1\nseed 8\nstep 100\n");
        CHECK_THROWS_AS(cgr::occ_campaign(resume), cgr::CheckpointError);
    }
    SUBCASE("unparsable number") {
        write_text(ckpt.path,
                   "occ-checkpoint v1\nseed 8\nstep banana\nvalue 3\ntwin_value 2\nprev -\n"
                   "minima_count 0\nmaxima_count 0\nmin_pos 0\nmin_value -\nmax_pos 0\n"
                   "max_value -\nstream_hash 1\n");
        CHECK_THROWS_AS(cgr::occ_campaign(resume), cgr::CheckpointError);
    }
    SUBCASE("duplicate key") {
        std::ifstream in(ckpt.path);
        std::string text((std::istreambuf_iterator<char>(in)), {});
        in.close();
        write_text(ckpt.path, text + "seed 8\n");
        CHECK_THROWS_AS(cgr::occ_campaign(resume), cgr::CheckpointError);
    }
}

TEST_CASE("campaign seeds must leave room for the twin") {
    cgr::CampaignOptions opts;
    opts.seed = 0;
    CHECK_THROWS_AS(cgr::occ_campaign(opts), std::invalid_argument);
}
