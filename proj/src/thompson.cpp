#include "cgr/thompson.hpp"

#include <deque>
#include <mutex>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cgr/catalogue.hpp"
#include "cgr/girard.hpp"
#include "cgr/serialize.hpp"

namespace cgr {

namespace {

// Generators and their inverses, extended on demand. References handed out
// stay valid because deques never relocate elements.
struct Tower {
    std::mutex lock;
    std::deque<CongruentialMap> gens;
    std::deque<CongruentialMap> invs;

    const CongruentialMap& get(unsigned long j, bool inv) {
        std::scoped_lock guard(lock);
        while (gens.size() <= j) {
            if (gens.empty())
                gens.push_back(alpha());
            else
                gens.push_back(star(identity(), gens.back()));
            invs.push_back(inverse(gens.back()));
        }
        return inv ? invs[j] : gens[j];
    }
};

Tower& tower() {
    static Tower t;
    return t;
}

}  // namespace

const CongruentialMap& generator(unsigned long j) { return tower().get(j, false); }

GroupWord parse_word(const std::string& text) {
    GroupWord w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok.size() < 2 || tok[0] != 'x')
            throw std::invalid_argument("bad word letter '" + tok + "', expected x<j> or x<j>'");
        bool inv = tok.back() == '\'';
        std::string digits = tok.substr(1, tok.size() - 1 - (inv ? 1 : 0));
        if (digits.empty())
            throw std::invalid_argument("bad word letter '" + tok + "', missing index");
        for (char c : digits)
            if (c < '0' || c > '9')
                throw std::invalid_argument("bad word letter '" + tok + "', index not a number");
        w.letters.push_back({std::stoul(digits), inv});
    }
    return w;
}

std::string format_word(const GroupWord& w) {
    std::string s;
    for (const WordLetter& l : w.letters) {
        if (!s.empty()) s += ' ';
        s += 'x' + std::to_string(l.index);
        if (l.inverse) s += '\'';
    }
    return s;
}

GroupWord free_reduce(GroupWord w) {
    std::vector<WordLetter> out;
    for (const WordLetter& l : w.letters) {
        if (!out.empty() && out.back().index == l.index && out.back().inverse != l.inverse)
            out.pop_back();
        else
            out.push_back(l);
    }
    return GroupWord{std::move(out)};
}

CongruentialMap eval_word(const GroupWord& w) {
    CongruentialMap acc = identity_map();
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        acc = compose(tower().get(it->index, it->inverse), acc);
    return normalize(acc);
}

bool words_equal(const GroupWord& u, const GroupWord& v) {
    return equal(eval_word(u), eval_word(v));
}

bool check_pentagon() {
    const CongruentialMap& a = alpha();
    CongruentialMap lhs = compose(a, a);
    CongruentialMap rhs = compose(star(a, identity()), compose(a, star(identity(), a)));
    return equal(lhs, rhs);
}

bool check_brown_conjugation(const GroupWord& a, const GroupWord& b, const GroupWord& c) {
    CongruentialMap fa = eval_word(a);
    CongruentialMap fb = eval_word(b);
    CongruentialMap fc = eval_word(c);
    CongruentialMap left_bracket = star(star(fa, fb), fc);
    CongruentialMap conjugated =
        compose(generator(0), compose(star(fa, star(fb, fc)), tower().get(0, true)));
    return equal(left_bracket, conjugated);
}

RelationReport verify_relations(unsigned long max_index) {
    RelationReport rep;
    rep.max_index = max_index;
    for (unsigned long i = 0; i < max_index; ++i) {
        for (unsigned long j = i + 1; j <= max_index; ++j) {
            CongruentialMap rhs =
                compose(compose(generator(i), generator(j + 1)), tower().get(i, true));
            ++rep.checked;
            if (!equal(generator(j), rhs)) {
                auto witness = first_disagreement(generator(j), rhs);
                rep.failures.push_back({i, j, witness ? *witness : BigInt(-1)});
            }
        }
    }
    return rep;
}

std::optional<GroupWord> find_word_for_map(const CongruentialMap& target, std::size_t max_len) {
    CongruentialMap goal = normalize(target);
    if (equal(goal, identity())) return GroupWord{};

    struct Entry {
        CongruentialMap map;
        GroupWord word;
    };
    const WordLetter alphabet[4] = {{0, false}, {0, true}, {1, false}, {1, true}};

    std::unordered_set<std::string> seen;
    seen.insert(map_to_string(identity()));
    std::queue<Entry> frontier;
    frontier.push({identity(), GroupWord{}});

    while (!frontier.empty()) {
        Entry cur = std::move(frontier.front());
        frontier.pop();
        if (cur.word.letters.size() == max_len) continue;
        for (const WordLetter& l : alphabet) {
            CongruentialMap next = compose(tower().get(l.index, l.inverse), cur.map);
            std::string key = map_to_string(next);
            if (!seen.insert(std::move(key)).second) continue;
            GroupWord w;
            w.letters.reserve(cur.word.letters.size() + 1);
            w.letters.push_back(l);
            w.letters.insert(w.letters.end(), cur.word.letters.begin(), cur.word.letters.end());
            if (equal(next, goal)) return w;
            frontier.push({std::move(next), std::move(w)});
        }
    }
    return std::nullopt;
}

}  // namespace cgr
