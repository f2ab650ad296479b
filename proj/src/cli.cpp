#include "cgr/cli.hpp"

#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cgr/catalogue.hpp"
#include "cgr/diagram.hpp"
#include "cgr/girard.hpp"
#include "cgr/mapspec.hpp"
#include "cgr/orbit.hpp"
#include "cgr/randmap.hpp"
#include "cgr/serialize.hpp"
#include "cgr/thompson.hpp"

namespace cgr {

namespace {

using nlohmann::json;

CongruentialMap resolve(const std::string& spec) {
    if (spec == "-") return read_map(std::cin);
    return resolve_map_spec(spec);
}

BigInt parse_nat(const std::string& s, const char* what) {
    auto v = parse_bigint(s);
    if (!v || *v < 0)
        throw CLI::ValidationError(std::string(what) + " must be a non-negative integer, got '" +
                                   s + "'");
    return *v;
}

void emit_map(const CongruentialMap& m, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        write_map(out, m);
    else
        write_map_file(out_path, m);
}

json outcome_json(const OrbitRecord& rec) {
    json j;
    j["seed"] = rec.seed.get_str();
    j["steps"] = rec.steps;
    if (const CycleOutcome* c = rec.cycle()) {
        j["outcome"] = {{"kind", "cycle"}, {"length", c->length}, {"entry", c->entry_step}};
    } else {
        j["outcome"] = {
            {"kind", "open"},
            {"bound", rec.open()->hit == BoundKind::step_bound ? "step" : "value"}};
    }
    j["final_value"] = rec.final_value.get_str();
    j["final_bits"] = mpz_sizeinbase(rec.final_value.get_mpz_t(), 2);
    j["minima"] = rec.digest.minima_count;
    j["maxima"] = rec.digest.maxima_count;
    if (rec.digest.minima_count) j["smallest_min"] = rec.digest.smallest_value.get_str();
    if (rec.digest.maxima_count) j["largest_max"] = rec.digest.largest_value.get_str();
    return j;
}

void print_cycle_values(const CongruentialMap& f, const OrbitRecord& rec, std::ostream& out) {
    const CycleOutcome* c = rec.cycle();
    if (!c || c->entry_step + c->length > 1000) return;  // keep the listing sane
    BigInt x = rec.seed;
    out << "trajectory: " << x.get_str();
    for (unsigned long i = 0; i < c->entry_step + c->length; ++i) {
        x = f(x);
        out << " -> " << x.get_str();
    }
    out << "\n";
}

void print_orbit_summary(const OrbitRecord& rec, std::ostream& out) {
    out << "seed " << rec.seed.get_str() << "\n";
    out << "steps " << rec.steps << "\n";
    if (const CycleOutcome* c = rec.cycle())
        out << "outcome cycle length=" << c->length << " entry=" << c->entry_step << "\n";
    else
        out << "outcome open ("
            << (rec.open()->hit == BoundKind::step_bound ? "step bound" : "value bound")
            << " reached)\n";
    out << "final value bits " << mpz_sizeinbase(rec.final_value.get_mpz_t(), 2) << "\n";
    out << "local minima " << rec.digest.minima_count << ", local maxima "
        << rec.digest.maxima_count << "\n";
}

// The six maps every verification suite quantifies over by default.
const std::vector<std::pair<std::string, CongruentialMap>>& verification_catalogue() {
    static const std::vector<std::pair<std::string, CongruentialMap>> cat = [] {
        std::vector<std::pair<std::string, CongruentialMap>> v;
        v.emplace_back("id", identity());
        v.emplace_back("rho", rho());
        v.emplace_back("lambda", lambda());
        v.emplace_back("alpha", alpha());
        v.emplace_back("rho^-1", inverse(rho()));
        v.emplace_back("lambda^-1", inverse(lambda()));
        return v;
    }();
    return cat;
}

struct VerifyResult {
    bool ok = true;
    json report;
    std::string text;
};

int finish_verify(const VerifyResult& r, bool as_json, std::ostream& out) {
    if (as_json) {
        json j = r.report;
        j["verified"] = r.ok;
        out << j.dump(2) << "\n";
    } else {
        out << r.text;
        out << (r.ok ? "verified\n" : "FAILED\n");
    }
    return r.ok ? 0 : 1;
}

VerifyResult do_pentagon() {
    VerifyResult r;
    r.ok = check_pentagon();
    r.report["check"] = "pentagon";
    r.text = "alpha^2 against (alpha*Id) o alpha o (Id*alpha): " +
             std::string(r.ok ? "equal" : "NOT equal") + "\n";
    return r;
}

VerifyResult do_relations(unsigned long max_index) {
    VerifyResult r;
    RelationReport rep = verify_relations(max_index);
    r.ok = rep.all_hold();
    r.report["check"] = "relations";
    r.report["max_index"] = max_index;
    r.report["checked"] = rep.checked;
    std::ostringstream os;
    os << "x_j = x_i x_{j+1} x_i^-1 for 0 <= i < j <= " << max_index << ": " << rep.checked
       << " instances\n";
    json fails = json::array();
    for (const RelationFailure& f : rep.failures) {
        os << "  FAILS at i=" << f.i << " j=" << f.j << ", witness n=" << f.witness.get_str()
           << "\n";
        fails.push_back({{"i", f.i}, {"j", f.j}, {"witness", f.witness.get_str()}});
    }
    r.report["failures"] = fails;
    r.text = os.str();
    return r;
}

VerifyResult do_naturality(unsigned long trials, unsigned long rng_seed) {
    VerifyResult r;
    const auto& cat = verification_catalogue();
    std::ostringstream os;
    json fails = json::array();
    unsigned long checked = 0;

    for (const auto& [nf, f] : cat)
        for (const auto& [ng, g] : cat)
            for (const auto& [nh, h] : cat) {
                ++checked;
                if (!check_alpha_naturality(f, g, h)) {
                    r.ok = false;
                    os << "  associator naturality FAILS at (" << nf << ", " << ng << ", " << nh
                       << ")\n";
                    fails.push_back({{"triple", {nf, ng, nh}}, {"law", "alpha"}});
                }
                if (!check_rho_naturality(f, g, h) || !check_lambda_naturality(f, g, h)) {
                    r.ok = false;
                    os << "  ternary-interleave naturality FAILS at (" << nf << ", " << ng << ", "
                       << nh << ")\n";
                    fails.push_back({{"triple", {nf, ng, nh}}, {"law", "rho/lambda"}});
                }
            }
    os << "catalogue triples checked: " << checked << " (x3 laws)\n";

    std::mt19937_64 rng(rng_seed);
    for (unsigned long t = 0; t < trials; ++t) {
        CongruentialMap f = random_bijection(rng);
        CongruentialMap g = random_bijection(rng);
        CongruentialMap h = random_bijection(rng);
        if (!check_alpha_naturality(f, g, h) || !check_rho_naturality(f, g, h) ||
            !check_lambda_naturality(f, g, h)) {
            r.ok = false;
            os << "  naturality FAILS on random triple, trial " << t << "\n";
            fails.push_back({{"trial", t}});
        }
    }
    os << "random bijection triples checked: " << trials << "\n";

    r.report["check"] = "naturality";
    r.report["catalogue_triples"] = checked;
    r.report["random_trials"] = trials;
    r.report["failures"] = fails;
    r.text = os.str();
    return r;
}

VerifyResult do_figure1(std::size_t max_path_len) {
    VerifyResult r;
    Figure1Report rep = verify_figure1(max_path_len);
    r.ok = rep.all_hold();
    std::ostringstream os;
    json items = json::array();
    for (const auto& i : rep.red_factorizations) {
        os << (i.holds ? "  ok    " : "  BROKEN ") << i.what << "\n";
        items.push_back({{"what", i.what}, {"holds", i.holds}});
    }
    for (const auto& i : rep.blue_triangles) {
        os << (i.holds ? "  ok    " : "  BROKEN ") << i.what << "\n";
        items.push_back({{"what", i.what}, {"holds", i.holds}});
    }
    os << "path pairs compared: " << rep.commutation.paths_compared << " across "
       << rep.commutation.pairs_checked << " node pairs\n";
    DiagramGraph d = build_figure1();
    for (const PathViolation& v : rep.commutation.violations)
        os << "  violation: " << v.describe(d) << "\n";
    r.report["check"] = "figure1";
    r.report["items"] = items;
    r.report["pairs_checked"] = rep.commutation.pairs_checked;
    r.report["paths_compared"] = rep.commutation.paths_compared;
    r.report["violations"] = rep.commutation.violations.size();
    r.text = os.str();
    return r;
}

VerifyResult do_k3() {
    VerifyResult r;
    K3Report rep = verify_k3();
    r.ok = rep.all_hold();
    r.report["check"] = "k3";
    r.report["commutes"] = rep.commutes;
    r.report["lambda_factors"] = rep.lambda_factors;
    r.text = std::string("two-edge diagram commutes: ") + (rep.commutes ? "yes" : "NO") +
             "\nlambda = alpha o rho: " + (rep.lambda_factors ? "yes" : "NO") + "\n";
    return r;
}

VerifyResult do_alpha_orbits(const BigInt& n_max) {
    VerifyResult r;
    AlphaOrbitReport rep = verify_alpha_orbit_structure(n_max);
    r.ok = rep.all_hold();
    std::ostringstream os;
    os << "pullback structure through alpha for n <= " << n_max.get_str() << "\n";
    json fails = json::array();
    for (const auto& [n, why] : rep.failures) {
        os << "  FAILS at n=" << n.get_str() << ": " << why << "\n";
        fails.push_back({{"n", n.get_str()}, {"why", why}});
    }
    r.report["check"] = "alpha-orbits";
    r.report["n_max"] = n_max.get_str();
    r.report["failures"] = fails;
    r.text = os.str();
    return r;
}

VerifyResult do_succ(unsigned long k_max, const BigInt& n_max) {
    VerifyResult r;
    SuccNaturalityReport rep = verify_succ_naturality(k_max, n_max);
    r.ok = rep.all_hold();
    std::ostringstream os;
    os << "lambda^k(n) = rho^k(n+1) - 1 for k <= " << k_max << ", n <= " << n_max.get_str()
       << "\n";
    if (rep.first_mismatch)
        os << "  FAILS first at k=" << rep.first_mismatch->first
           << ", n=" << rep.first_mismatch->second.get_str() << "\n";
    r.report["check"] = "succ";
    r.report["k_max"] = k_max;
    r.report["n_max"] = n_max.get_str();
    if (rep.first_mismatch) {
        r.report["first_mismatch"] = {{"k", rep.first_mismatch->first},
                                      {"n", rep.first_mismatch->second.get_str()}};
    }
    r.text = os.str();
    return r;
}

VerifyResult do_freeness(std::size_t max_leaves) {
    VerifyResult r;
    FreenessReport rep = freeness_probe(max_leaves, alpha());
    r.ok = rep.all_distinct;
    std::ostringstream os;
    os << rep.tree_count << " trees with up to " << max_leaves << " leaves, arities {2,3}\n";
    if (!rep.all_distinct)
        os << "  COLLISION: " << rep.collision_a << " equals " << rep.collision_b << "\n";
    r.report["check"] = "freeness";
    r.report["tree_count"] = rep.tree_count;
    r.report["all_distinct"] = rep.all_distinct;
    if (!rep.all_distinct) {
        r.report["collision"] = {rep.collision_a, rep.collision_b};
    }
    r.text = os.str();
    return r;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact algebra of congruential bijections of N"};
    app.require_subcommand(1);

    // eval
    auto* c_eval = app.add_subcommand("eval", "apply a map to one value");
    std::string eval_map, eval_n;
    bool eval_json = false;
    c_eval->add_option("--map", eval_map, "map spec (builtin, file, or expression)")->required();
    c_eval->add_option("--n", eval_n, "input value (decimal)")->required();
    c_eval->add_flag("--json", eval_json, "machine-readable output");

    // compose
    auto* c_compose = app.add_subcommand("compose", "compose maps right-to-left");
    std::vector<std::string> compose_specs;
    std::string compose_out;
    c_compose->add_option("specs", compose_specs, "map specs, outermost first")->required();
    c_compose->add_option("--out", compose_out, "write the result to a file");

    // invert
    auto* c_invert = app.add_subcommand("invert", "invert a bijection or report why not");
    std::string invert_spec, invert_out;
    bool invert_json = false;
    c_invert->add_option("spec", invert_spec, "map spec")->required();
    c_invert->add_option("--out", invert_out, "write the result to a file");
    c_invert->add_flag("--json", invert_json, "machine-readable output");

    // normalize
    auto* c_norm = app.add_subcommand("normalize", "canonical smallest-modulus form");
    std::string norm_spec, norm_out;
    c_norm->add_option("spec", norm_spec, "map spec")->required();
    c_norm->add_option("--out", norm_out, "write the result to a file");

    // equal
    auto* c_equal = app.add_subcommand("equal", "decide extensional equality");
    std::vector<std::string> equal_specs;
    bool equal_json = false;
    c_equal->add_option("specs", equal_specs, "two map specs")->expected(2);
    c_equal->add_flag("--json", equal_json, "machine-readable output");

    // solve-agree
    auto* c_agree = app.add_subcommand("solve-agree", "solve f(n) = g(n) exactly");
    std::vector<std::string> agree_specs;
    bool agree_json = false;
    c_agree->add_option("specs", agree_specs, "two map specs")->expected(2);
    c_agree->add_flag("--json", agree_json, "machine-readable output");

    // star
    auto* c_star = app.add_subcommand("star", "interleave two maps on even/odd");
    std::vector<std::string> star_specs;
    std::string star_out;
    c_star->add_option("specs", star_specs, "two map specs")->expected(2);
    c_star->add_option("--out", star_out, "write the result to a file");

    // mu
    auto* c_mu = app.add_subcommand("mu", "k-ary interleave");
    std::vector<std::string> mu_specs;
    std::string mu_out;
    unsigned long mu_kk = 0;
    c_mu->add_option("--k", mu_kk, "arity (defaults to the number of maps)");
    c_mu->add_option("specs", mu_specs, "map specs")->required();
    c_mu->add_option("--out", mu_out, "write the result to a file");

    // tree-eval
    auto* c_tree = app.add_subcommand("tree-eval", "evaluate a planar tree of interleaves");
    std::string tree_text, tree_out;
    std::vector<std::string> tree_specs;
    c_tree->add_option("--tree", tree_text, "term like '(* _ (* _ _))' or '(#3 _ _ _)'")
        ->required();
    c_tree->add_option("specs", tree_specs, "one map spec per leaf");
    c_tree->add_option("--out", tree_out, "write the result to a file");

    // word-eval
    auto* c_weval = app.add_subcommand("word-eval", "evaluate a word in the generators");
    std::vector<std::string> weval_words;
    std::string weval_out;
    c_weval->add_option("word", weval_words, "letters like x0 x1' (quoted or separate)");
    c_weval->add_option("--out", weval_out, "write the result to a file");

    // word-equal
    auto* c_wequal = app.add_subcommand("word-equal", "decide the word problem");
    std::vector<std::string> wequal_words;
    bool wequal_json = false;
    c_wequal->add_option("words", wequal_words, "two words (quote each)")->expected(2);
    c_wequal->add_flag("--json", wequal_json, "machine-readable output");

    // orbit
    auto* c_orbit = app.add_subcommand("orbit", "iterate a map and detect cycles");
    std::string orbit_map, orbit_seed, orbit_vbound = "";
    unsigned long orbit_steps = 1000000;
    bool orbit_nobound = false, orbit_csv_flag = false, orbit_json = false, orbit_store = false;
    c_orbit->add_option("--map", orbit_map, "map spec")->required();
    c_orbit->add_option("--seed", orbit_seed, "starting value")->required();
    c_orbit->add_option("--steps", orbit_steps, "step bound (default 10^6)");
    c_orbit->add_option("--value-bound", orbit_vbound, "stop when values exceed this (default 2^4096)");
    c_orbit->add_flag("--no-value-bound", orbit_nobound, "iterate regardless of value size");
    c_orbit->add_flag("--store-values", orbit_store, "keep the whole trajectory in memory");
    c_orbit->add_flag("--csv", orbit_csv_flag, "stream per-step CSV stats instead of a summary");
    c_orbit->add_flag("--json", orbit_json, "machine-readable output");

    // campaign
    auto* c_camp = app.add_subcommand("campaign", "long-running twin-orbit exploration");
    std::string camp_seed = "8", camp_checkpoint, camp_vbound = "";
    unsigned long camp_steps = 1000000, camp_every = 100000;
    bool camp_resume = false, camp_json = false;
    c_camp->add_option("--seed", camp_seed, "main seed (default 8; twin runs from seed-1)");
    c_camp->add_option("--steps", camp_steps, "step bound (default 10^6)");
    c_camp->add_option("--checkpoint", camp_checkpoint, "checkpoint file path");
    c_camp->add_option("--checkpoint-every", camp_every, "steps between checkpoints");
    c_camp->add_flag("--resume", camp_resume, "continue from the checkpoint file");
    c_camp->add_option("--value-bound", camp_vbound, "optional value bound (default none)");
    c_camp->add_flag("--json", camp_json, "machine-readable output");

    // verify family
    auto* c_verify = app.add_subcommand("verify", "verification suites");
    c_verify->require_subcommand(1);
    bool verify_json = false;
    c_verify->add_flag("--json", verify_json, "machine-readable output");

    auto* v_pentagon = c_verify->add_subcommand("pentagon", "the coherence identity for alpha");
    auto* v_relations = c_verify->add_subcommand("relations", "generator conjugation relations");
    unsigned long rel_max = 6;
    v_relations->add_option("--max-index", rel_max, "check 0 <= i < j <= this (default 6)");
    auto* v_nat = c_verify->add_subcommand("naturality", "interleave naturality laws");
    unsigned long nat_trials = 100, nat_rng = 20250815;
    v_nat->add_option("--trials", nat_trials, "random bijection triples (default 100)");
    v_nat->add_option("--rng-seed", nat_rng, "seed for the random triples");
    auto* v_fig1 = c_verify->add_subcommand("figure1", "the full pentagram diagram");
    std::size_t fig1_cap = 6;
    v_fig1->add_option("--max-path-len", fig1_cap, "path length cap (default 6)");
    auto* v_k3 = c_verify->add_subcommand("k3", "the two-edge bracketing diagram");
    auto* v_alpha = c_verify->add_subcommand("alpha-orbits", "pullback structure through alpha");
    std::string alpha_nmax = "100000";
    v_alpha->add_option("--n-max", alpha_nmax, "check n up to this (default 10^5)");
    auto* v_succ = c_verify->add_subcommand("succ", "successor conjugation of the two bijections");
    unsigned long succ_kmax = 100;
    std::string succ_nmax = "1000";
    v_succ->add_option("--k-max", succ_kmax, "iterate up to this power (default 100)");
    v_succ->add_option("--n-max", succ_nmax, "check n up to this (default 10^3)");
    auto* v_free = c_verify->add_subcommand("freeness", "pairwise distinctness of tree composites");
    std::size_t free_leaves = 5;
    v_free->add_option("--max-leaves", free_leaves, "tree size cap (default 5)");
    for (auto* sub : {v_pentagon, v_relations, v_nat, v_fig1, v_k3, v_alpha, v_succ, v_free})
        sub->fallthrough();

    // diagram-check
    auto* c_diag = app.add_subcommand("diagram-check", "check a diagram file for commutation");
    std::string diag_file;
    std::size_t diag_cap = 6, diag_maxv = 8;
    bool diag_csv = false, diag_json = false;
    c_diag->add_option("--file", diag_file, "diagram description ('-' for stdin)")->required();
    c_diag->add_option("--max-path-len", diag_cap, "path length cap (default 6)");
    c_diag->add_option("--max-violations", diag_maxv, "stop after this many findings");
    c_diag->add_flag("--csv", diag_csv, "emit violations as CSV");
    c_diag->add_flag("--json", diag_json, "machine-readable output");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        const CLI::App* where = &app;
        while (!where->get_subcommands().empty()) where = where->get_subcommands().front();
        out << where->help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (c_eval->parsed()) {
            CongruentialMap m = resolve(eval_map);
            BigInt n = parse_nat(eval_n, "--n");
            BigInt v = m(n);
            if (eval_json)
                out << json{{"n", n.get_str()}, {"value", v.get_str()}}.dump() << "\n";
            else
                out << v.get_str() << "\n";
            return 0;
        }
        if (c_compose->parsed()) {
            CongruentialMap acc = resolve(compose_specs.back());
            for (std::size_t i = compose_specs.size() - 1; i-- > 0;)
                acc = compose(resolve(compose_specs[i]), acc);
            emit_map(acc, compose_out, out);
            return 0;
        }
        if (c_invert->parsed()) {
            CongruentialMap m = resolve(invert_spec);
            BijectionOutcome outcome = is_bijection(m);
            if (const BijectionRefusal* r = refusal(outcome)) {
                if (invert_json)
                    out << json{{"bijection", false},
                                {"reason", r->reason},
                                {"witness", r->witness.get_str()}}
                               .dump()
                        << "\n";
                else
                    out << "not a bijection: " << r->reason << " (witness " << r->witness.get_str()
                        << ")\n";
                return 1;
            }
            emit_map(inverse(m), invert_out, out);
            return 0;
        }
        if (c_norm->parsed()) {
            emit_map(normalize(resolve(norm_spec)), norm_out, out);
            return 0;
        }
        if (c_equal->parsed()) {
            CongruentialMap f = resolve(equal_specs[0]);
            CongruentialMap g = resolve(equal_specs[1]);
            auto witness = first_disagreement(f, g);
            if (equal_json) {
                json j{{"equal", !witness.has_value()}};
                if (witness) j["witness"] = witness->get_str();
                out << j.dump() << "\n";
            } else if (witness) {
                out << "different at n = " << witness->get_str() << "\n";
            } else {
                out << "equal\n";
            }
            return witness ? 1 : 0;
        }
        if (c_agree->parsed()) {
            AgreementSolution sol =
                solve_agreement(resolve(agree_specs[0]), resolve(agree_specs[1]));
            if (agree_json) {
                json j;
                j["class_modulus"] = sol.class_modulus.get_str();
                j["class_residues"] = json::array();
                for (const BigInt& r : sol.class_residues)
                    j["class_residues"].push_back(r.get_str());
                j["points"] = json::array();
                for (const BigInt& p : sol.points) j["points"].push_back(p.get_str());
                out << j.dump() << "\n";
            } else {
                out << sol.to_string() << "\n";
            }
            return 0;
        }
        if (c_star->parsed()) {
            emit_map(star(resolve(star_specs[0]), resolve(star_specs[1])), star_out, out);
            return 0;
        }
        if (c_mu->parsed()) {
            if (mu_kk != 0 && mu_kk != mu_specs.size())
                throw std::invalid_argument("--k is " + std::to_string(mu_kk) + " but " +
                                            std::to_string(mu_specs.size()) + " maps were given");
            std::vector<CongruentialMap> maps;
            maps.reserve(mu_specs.size());
            for (const std::string& s : mu_specs) maps.push_back(resolve(s));
            emit_map(mu_k(maps), mu_out, out);
            return 0;
        }
        if (c_tree->parsed()) {
            PlanarTree t = parse_tree(tree_text);
            std::vector<CongruentialMap> maps;
            maps.reserve(tree_specs.size());
            for (const std::string& s : tree_specs) maps.push_back(resolve(s));
            emit_map(eval_tree(t, maps), tree_out, out);
            return 0;
        }
        if (c_weval->parsed()) {
            std::string joined;
            for (const std::string& w : weval_words) joined += w + " ";
            emit_map(eval_word(parse_word(joined)), weval_out, out);
            return 0;
        }
        if (c_wequal->parsed()) {
            CongruentialMap f = eval_word(parse_word(wequal_words[0]));
            CongruentialMap g = eval_word(parse_word(wequal_words[1]));
            auto witness = first_disagreement(f, g);
            if (wequal_json) {
                json j{{"equal", !witness.has_value()}};
                if (witness) j["witness"] = witness->get_str();
                out << j.dump() << "\n";
            } else if (witness) {
                out << "different at n = " << witness->get_str() << "\n";
            } else {
                out << "equal\n";
            }
            return witness ? 1 : 0;
        }
        if (c_orbit->parsed()) {
            CongruentialMap m = resolve(orbit_map);
            BigInt seed = parse_nat(orbit_seed, "--seed");
            if (orbit_csv_flag) {
                orbit_csv(m, seed, orbit_steps, out);
                return 0;
            }
            OrbitOptions opts;
            opts.step_bound = orbit_steps;
            opts.store_values = orbit_store;
            if (orbit_nobound)
                opts.value_bound.reset();
            else if (!orbit_vbound.empty())
                opts.value_bound = parse_nat(orbit_vbound, "--value-bound");
            OrbitRecord rec = orbit(m, seed, opts);
            if (orbit_json) {
                out << outcome_json(rec).dump(2) << "\n";
            } else {
                print_orbit_summary(rec, out);
                print_cycle_values(m, rec, out);
            }
            return 0;
        }
        if (c_camp->parsed()) {
            CampaignOptions opts;
            opts.seed = parse_nat(camp_seed, "--seed");
            opts.step_bound = camp_steps;
            opts.checkpoint_path = camp_checkpoint;
            opts.checkpoint_every = camp_every;
            opts.resume = camp_resume;
            if (!camp_vbound.empty()) opts.value_bound = parse_nat(camp_vbound, "--value-bound");
            CampaignResult res = occ_campaign(opts);
            const bool closed = res.record.cycle() != nullptr;
            if (camp_json) {
                json j = outcome_json(res.record);
                j["twin_final"] = res.twin_final.get_str();
                j["resumed_from"] = res.resumed_from;
                j["linkage_verified"] = res.linkage_verified;
                out << j.dump(2) << "\n";
            } else {
                if (res.resumed_from)
                    out << "resumed from step " << res.resumed_from << "\n";
                print_orbit_summary(res.record, out);
                out << "twin (lambda from " << BigInt(opts.seed - 1).get_str()
                    << ") stays at main - 1: " << (res.linkage_verified ? "yes" : "NO") << "\n";
                if (closed) {
                    out << "*** CYCLE FOUND: the orbit of " << opts.seed.get_str()
                        << " is finite, length " << res.record.cycle()->length
                        << " (for seed 8 this would settle the open conjecture) ***\n";
                    print_cycle_values(rho(), res.record, out);
                }
            }
            return closed ? 1 : 0;
        }
        if (c_verify->parsed()) {
            if (v_pentagon->parsed()) return finish_verify(do_pentagon(), verify_json, out);
            if (v_relations->parsed())
                return finish_verify(do_relations(rel_max), verify_json, out);
            if (v_nat->parsed())
                return finish_verify(do_naturality(nat_trials, nat_rng), verify_json, out);
            if (v_fig1->parsed()) return finish_verify(do_figure1(fig1_cap), verify_json, out);
            if (v_k3->parsed()) return finish_verify(do_k3(), verify_json, out);
            if (v_alpha->parsed())
                return finish_verify(do_alpha_orbits(parse_nat(alpha_nmax, "--n-max")),
                                     verify_json, out);
            if (v_succ->parsed())
                return finish_verify(do_succ(succ_kmax, parse_nat(succ_nmax, "--n-max")),
                                     verify_json, out);
            if (v_free->parsed()) return finish_verify(do_freeness(free_leaves), verify_json, out);
        }
        if (c_diag->parsed()) {
            DiagramGraph d =
                diag_file == "-" ? read_diagram(std::cin) : read_diagram_file(diag_file);
            CommutationReport rep = check_commutes(d, diag_cap, diag_maxv);
            if (diag_csv) {
                write_violations_csv(out, d, rep);
            } else if (diag_json) {
                json j;
                j["commutes"] = rep.commutes();
                j["pairs_checked"] = rep.pairs_checked;
                j["paths_compared"] = rep.paths_compared;
                j["violations"] = json::array();
                for (const PathViolation& v : rep.violations)
                    j["violations"].push_back(v.describe(d));
                out << j.dump(2) << "\n";
            } else {
                out << "pairs checked: " << rep.pairs_checked
                    << ", composites compared: " << rep.paths_compared << "\n";
                for (const PathViolation& v : rep.violations)
                    out << "violation: " << v.describe(d) << "\n";
                out << (rep.commutes() ? "commutes\n" : "DOES NOT COMMUTE\n");
            }
            return rep.commutes() ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CheckpointError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    err << "error: no subcommand handled\n";
    return 2;
}

}  // namespace cgr
