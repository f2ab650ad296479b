#include "cgr/orbit.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <unordered_map>

#include "cgr/catalogue.hpp"

namespace cgr {

void ExtremaDigest::fold(const Extremum& e) {
    if (e.is_minimum) {
        if (minima_count == 0 || e.value < smallest_value) {
            smallest_value = e.value;
            smallest_step = e.step;
        }
        ++minima_count;
    } else {
        if (maxima_count == 0 || e.value > largest_value) {
            largest_value = e.value;
            largest_step = e.step;
        }
        ++maxima_count;
    }
    stream_hash = (stream_hash ^ e.step) * 0x100000001b3ull;
    stream_hash = (stream_hash ^ e.value.get_ui()) * 0x100000001b3ull;
    stream_hash = (stream_hash ^ (e.is_minimum ? 2u : 3u)) * 0x100000001b3ull;
}

namespace {

// Feeds consecutive trajectory values and records strict local extrema; the
// endpoints never qualify because they lack a neighbour.
struct ExtremaTracker {
    std::optional<BigInt> prev;
    std::size_t cap;
    std::vector<Extremum>& list;
    ExtremaDigest& digest;

    // cur sits at trajectory position pos, next right after it.
    void observe(unsigned long pos, const BigInt& cur, const BigInt& next) {
        if (prev) {
            if (*prev > cur && cur < next)
                record({pos, cur, true});
            else if (*prev < cur && cur > next)
                record({pos, cur, false});
        }
        prev = cur;
    }

    void record(Extremum e) {
        digest.fold(e);
        if (list.size() < cap) list.push_back(std::move(e));
    }
};

BigInt advance(const CongruentialMap& f, BigInt x, unsigned long steps) {
    for (unsigned long i = 0; i < steps; ++i) x = f(x);
    return x;
}

// A detected cycle is only reported after walking it once more and checking
// closure and minimality of the length.
void verify_cycle(const CongruentialMap& f, const BigInt& seed, const CycleOutcome& c) {
    BigInt entry = advance(f, seed, c.entry_step);
    BigInt x = entry;
    for (unsigned long i = 1; i < c.length; ++i) {
        x = f(x);
        if (x == entry) throw std::logic_error("cycle length is not minimal");
    }
    if (f(x) != entry) throw std::logic_error("reported cycle does not close");
}

}  // namespace

OrbitRecord orbit(const CongruentialMap& f, const BigInt& seed, const OrbitOptions& opts) {
    if (opts.step_bound < 1) throw std::invalid_argument("step_bound must be >= 1");
    if (seed < 0) throw std::invalid_argument("orbit seeds live in N");
    OrbitRecord rec;
    rec.seed = seed;
    if (opts.store_values) rec.values.emplace().push_back(seed);

    // For a certified bijection the first repeated value must be the seed
    // itself, which gives an O(1)-memory exact detector. Everything else
    // falls back to the hash window plus Brent.
    const bool seed_return = certificate(is_bijection(f)) != nullptr;

    std::unordered_map<BigInt, unsigned long, BigIntHash> window;
    if (!seed_return && opts.hash_window > 0) window.emplace(seed, 0);

    ExtremaTracker extrema{std::nullopt, opts.extrema_cap, rec.extrema, rec.digest};

    BigInt cur = seed;
    BigInt tortoise = seed;  // Brent state
    unsigned long tortoise_at = 0;
    unsigned long power = 1;

    std::optional<OrbitOutcome> outcome;
    unsigned long step = 0;
    while (step < opts.step_bound) {
        BigInt next = f(cur);
        ++step;

        std::optional<unsigned long> entry;
        bool via_brent = false;
        if (seed_return) {
            if (next == seed) entry = 0;
        } else if (opts.hash_window > 0) {
            auto it = window.find(next);
            if (it != window.end()) entry = it->second;
        }
        if (!entry && !seed_return && next == tortoise) {
            // Brent found a period; locate the entry with two cursors one
            // period apart, then report the canonical prefix length.
            unsigned long period = step - tortoise_at;
            BigInt slow = seed;
            BigInt fast = advance(f, seed, period);
            unsigned long at = 0;
            while (slow != fast) {
                slow = f(slow);
                fast = f(fast);
                ++at;
            }
            entry = at;
            step = at + period;
            via_brent = true;
        }
        if (entry) {
            if (!via_brent) extrema.observe(step - 1, cur, next);
            outcome = CycleOutcome{step - *entry, *entry};
            rec.final_value = next;
            if (opts.store_values && rec.values->size() > step)
                rec.values->resize(step);  // detection overshot: keep prefix + one period
            break;
        }

        extrema.observe(step - 1, cur, next);
        if (opts.value_bound && next > *opts.value_bound) {
            outcome = OpenOutcome{BoundKind::value_bound};
            rec.final_value = next;
            if (opts.store_values) rec.values->push_back(next);
            break;
        }

        if (opts.store_values) rec.values->push_back(next);
        if (!seed_return && window.size() < opts.hash_window) window.emplace(next, step);
        if (step - tortoise_at == power) {
            tortoise = next;
            tortoise_at = step;
            power *= 2;
        }
        cur = std::move(next);
    }

    rec.steps = step;
    if (!outcome) {
        outcome = OpenOutcome{BoundKind::step_bound};
        rec.final_value = cur;
    }
    rec.outcome = *outcome;
    if (const CycleOutcome* c = rec.cycle()) verify_cycle(f, seed, *c);
    return rec;
}

void orbit_csv(const CongruentialMap& f, const BigInt& seed, unsigned long steps,
               std::ostream& out) {
    out << "step,bits,is_local_min,is_local_max\n";
    auto bits = [](const BigInt& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); };
    BigInt prev, cur = seed;
    for (unsigned long t = 0; t <= steps; ++t) {
        if (t == 0) {
            out << "0," << bits(cur) << ",0,0\n";
            if (steps == 0) break;
            prev = cur;
            cur = f(cur);
            continue;
        }
        if (t == steps) {
            out << t << "," << bits(cur) << ",0,0\n";
            break;
        }
        BigInt next = f(cur);
        bool is_min = prev > cur && cur < next;
        bool is_max = prev < cur && cur > next;
        out << t << "," << bits(cur) << "," << (is_min ? 1 : 0) << "," << (is_max ? 1 : 0) << "\n";
        prev = std::move(cur);
        cur = std::move(next);
    }
}

AlphaOrbitReport verify_alpha_orbit_structure(const BigInt& n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    AlphaOrbitReport rep;
    rep.checked_up_to = n_max;
    const CongruentialMap back = inverse(alpha());
    for (BigInt n = 0; n <= n_max; ++n) {
        BigInt v = back(n);
        if (n == 0) {
            if (v != 0)
                rep.failures.emplace_back(n, "0 is not fixed, pulls back to " + v.get_str());
        } else if (floor_mod(n, 2) == 1) {
            if (v != 2 * n + 1)
                rep.failures.emplace_back(n, "odd n pulls back to " + v.get_str() +
                                                 ", not 2n+1 = " + BigInt(2 * n + 1).get_str());
        } else {
            if (v >= n)
                rep.failures.emplace_back(
                    n, "even n pulls back to " + v.get_str() + ", not below n");
            else if (v == 0)
                rep.failures.emplace_back(n, "even n > 0 pulls back to 0");
        }
    }
    return rep;
}

SuccNaturalityReport verify_succ_naturality(unsigned long k_max, const BigInt& n_max) {
    SuccNaturalityReport rep;
    rep.k_max = k_max;
    rep.n_max = n_max;
    const CongruentialMap& r = rho();
    const CongruentialMap& l = lambda();
    for (BigInt n = 0; n <= n_max; ++n) {
        BigInt left = n;
        BigInt right = n + 1;
        for (unsigned long k = 1; k <= k_max; ++k) {
            left = l(left);
            right = r(right);
            if (left != right - 1) {
                rep.first_mismatch = {k, n};
                return rep;
            }
        }
    }
    return rep;
}

namespace {

struct CheckpointState {
    BigInt seed;
    unsigned long step = 0;
    BigInt value;
    BigInt twin_value;
    std::optional<BigInt> prev;  // value at step - 1, for seamless extrema on resume
    ExtremaDigest digest;
};

void write_checkpoint(const std::string& path, const CheckpointState& s) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw CheckpointError("cannot write checkpoint: " + tmp);
        out << "occ-checkpoint v1\n";
        out << "seed " << s.seed.get_str() << "\n";
        out << "step " << s.step << "\n";
        out << "value " << s.value.get_str() << "\n";
        out << "twin_value " << s.twin_value.get_str() << "\n";
        out << "prev " << (s.prev ? s.prev->get_str() : "-") << "\n";
        out << "minima_count " << s.digest.minima_count << "\n";
        out << "maxima_count " << s.digest.maxima_count << "\n";
        out << "min_pos " << s.digest.smallest_step << "\n";
        out << "min_value "
            << (s.digest.minima_count ? s.digest.smallest_value.get_str() : std::string("-"))
            << "\n";
        out << "max_pos " << s.digest.largest_step << "\n";
        out << "max_value "
            << (s.digest.maxima_count ? s.digest.largest_value.get_str() : std::string("-"))
            << "\n";
        out << "stream_hash " << s.digest.stream_hash << "\n";
        if (!out) throw CheckpointError("short write on checkpoint: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw CheckpointError("cannot move checkpoint into place: " + path);
}

CheckpointState read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot open checkpoint: " + path);
    std::string line;
    unsigned long line_no = 1;
    if (!std::getline(in, line) || line != "occ-checkpoint v1")
        throw CheckpointError(path + ":1: expected 'occ-checkpoint v1' header");

    std::unordered_map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw CheckpointError(path + ":" + std::to_string(line_no) + ": malformed line '" +
                                  line + "'");
        std::string key = line.substr(0, sp);
        if (!kv.emplace(key, line.substr(sp + 1)).second)
            throw CheckpointError(path + ":" + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
    }

    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw CheckpointError(path + ": missing key '" + key + "'");
        return it->second;
    };
    auto need_int = [&](const std::string& key) {
        auto v = parse_bigint(need(key));
        if (!v) throw CheckpointError(path + ": bad number for '" + key + "': " + need(key));
        return *v;
    };

    CheckpointState s;
    s.seed = need_int("seed");
    s.step = to_ulong(need_int("step"), "checkpoint step");
    s.value = need_int("value");
    s.twin_value = need_int("twin_value");
    if (need("prev") != "-") s.prev = need_int("prev");
    s.digest.minima_count = to_ulong(need_int("minima_count"), "minima_count");
    s.digest.maxima_count = to_ulong(need_int("maxima_count"), "maxima_count");
    s.digest.smallest_step = to_ulong(need_int("min_pos"), "min_pos");
    if (s.digest.minima_count) s.digest.smallest_value = need_int("min_value");
    s.digest.largest_step = to_ulong(need_int("max_pos"), "max_pos");
    if (s.digest.maxima_count) s.digest.largest_value = need_int("max_value");
    {
        BigInt v = need_int("stream_hash");
        if (v < 0 || !v.fits_ulong_p()) throw CheckpointError(path + ": bad stream_hash");
        s.digest.stream_hash = v.get_ui();
    }
    if (s.value < 0 || s.twin_value < 0 || s.seed < 1)
        throw CheckpointError(path + ": negative trajectory value");
    if (s.twin_value != s.value - 1)
        throw CheckpointError(path + ": twin linkage broken in file (twin_value != value - 1)");
    return s;
}

}  // namespace

CampaignResult occ_campaign(const CampaignOptions& opts) {
    if (opts.seed < 1)
        throw std::invalid_argument("campaign seed must be >= 1 so the twin seed - 1 exists");
    const CongruentialMap& r = rho();
    const CongruentialMap& l = lambda();
    if (!certificate(is_bijection(r)))
        throw std::logic_error("rho lost its bijection certificate");

    CampaignResult res;
    CheckpointState st;
    st.seed = opts.seed;
    st.value = opts.seed;
    st.twin_value = opts.seed - 1;

    if (opts.resume && !opts.checkpoint_path.empty()) {
        if (std::ifstream probe(opts.checkpoint_path); probe.good()) {
            st = read_checkpoint(opts.checkpoint_path);
            if (st.seed != opts.seed)
                throw CheckpointError(opts.checkpoint_path + ": checkpoint is for seed " +
                                      st.seed.get_str() + ", not " + opts.seed.get_str());
            res.resumed_from = st.step;
        }
    }

    OrbitRecord rec;
    rec.seed = opts.seed;
    rec.digest = st.digest;
    ExtremaTracker extrema{st.prev, 1024, rec.extrema, rec.digest};

    res.linkage_verified = true;
    auto checkpoint_now = [&](unsigned long step, const BigInt& main, const BigInt& twin,
                              const std::optional<BigInt>& prev) {
        if (twin != main - 1) {
            res.linkage_verified = false;
            throw std::logic_error("successor linkage broke at step " + std::to_string(step) +
                                   ": twin " + twin.get_str() + " vs main " + main.get_str());
        }
        if (opts.checkpoint_path.empty()) return;
        write_checkpoint(opts.checkpoint_path,
                         CheckpointState{opts.seed, step, main, twin, prev, rec.digest});
    };

    BigInt main = st.value;
    BigInt twin = st.twin_value;
    std::optional<BigInt> prev = st.prev;
    unsigned long step = st.step;
    std::optional<OrbitOutcome> outcome;

    // rho is a certified bijection, so a recurrence can only happen at the
    // seed; comparing against it is an exact cycle test.
    while (step < opts.step_bound) {
        BigInt next = r(main);
        BigInt tnext = l(twin);
        ++step;

        extrema.observe(step - 1, main, next);
        const bool closed = next == opts.seed;
        const bool too_big = !closed && opts.value_bound && next > *opts.value_bound;
        prev = std::move(main);
        main = std::move(next);
        twin = std::move(tnext);

        if (closed) {
            outcome = CycleOutcome{step, 0};
            break;
        }
        if (too_big) {
            outcome = OpenOutcome{BoundKind::value_bound};
            break;
        }
        if (opts.checkpoint_every > 0 && step % opts.checkpoint_every == 0)
            checkpoint_now(step, main, twin, prev);
    }

    rec.steps = step;
    rec.final_value = main;
    rec.outcome = outcome ? *outcome : OrbitOutcome{OpenOutcome{BoundKind::step_bound}};
    if (const CycleOutcome* c = rec.cycle()) verify_cycle(r, opts.seed, *c);
    checkpoint_now(step, main, twin, prev);

    res.record = std::move(rec);
    res.twin_final = twin;
    return res;
}

}  // namespace cgr
