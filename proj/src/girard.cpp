#include "cgr/girard.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "cgr/catalogue.hpp"

namespace cgr {

CongruentialMap star(const CongruentialMap& f, const CongruentialMap& g) {
    // On 2n, substitute n = m/2 into f and double; on 2n+1, substitute
    // n = (m-1)/2 into g, double, add one. Classes of m modulo 2*lcm pick
    // the right piece of f or g.
    const BigInt half = big_lcm(f.modulus(), g.modulus());
    const BigInt modulus = 2 * half;
    const unsigned long kf = f.pieces().size();
    const unsigned long kg = g.pieces().size();
    const unsigned long mu = to_ulong(modulus, "interleave modulus");

    std::vector<AffinePiece> pieces;
    pieces.reserve(mu);
    for (unsigned long r = 0; r < mu; ++r) {
        if (r % 2 == 0) {
            const AffinePiece& p = f.pieces()[(r / 2) % kf];
            pieces.emplace_back(p.a, 2 * p.b, p.c);
        } else {
            const AffinePiece& p = g.pieces()[((r - 1) / 2) % kg];
            pieces.emplace_back(p.a, 2 * p.b - p.a + p.c, p.c);
        }
    }
    return normalize(CongruentialMap(modulus, std::move(pieces)));
}

CongruentialMap mu3(const CongruentialMap& f, const CongruentialMap& g, const CongruentialMap& h) {
    const BigInt third = big_lcm(big_lcm(f.modulus(), g.modulus()), h.modulus());
    const BigInt modulus = 3 * third;
    const unsigned long mu = to_ulong(modulus, "interleave modulus");

    std::vector<AffinePiece> pieces;
    pieces.reserve(mu);
    for (unsigned long r = 0; r < mu; ++r) {
        switch (r % 3) {
            case 0: {
                const AffinePiece& p = f.pieces()[(r / 3) % f.pieces().size()];
                pieces.emplace_back(p.a, 3 * p.b, p.c);
                break;
            }
            case 1: {
                const AffinePiece& p = g.pieces()[((r - 1) / 3) % g.pieces().size()];
                pieces.emplace_back(p.a, 3 * p.b + p.c - p.a, p.c);
                break;
            }
            default: {
                const AffinePiece& p = h.pieces()[((r - 2) / 3) % h.pieces().size()];
                pieces.emplace_back(p.a, 3 * p.b + 2 * (p.c - p.a), p.c);
                break;
            }
        }
    }
    return normalize(CongruentialMap(modulus, std::move(pieces)));
}

CongruentialMap mu_k(const std::vector<CongruentialMap>& fs) {
    if (fs.empty()) throw std::invalid_argument("mu_k needs at least one map");
    const BigInt k = fs.size();
    BigInt common = 1;
    for (const CongruentialMap& f : fs) common = big_lcm(common, f.modulus());
    const BigInt modulus = k * common;
    const unsigned long mu = to_ulong(modulus, "interleave modulus");
    const unsigned long ku = fs.size();

    // m = k n + i lands in the class of f_i at n = (m - i)/k; the value
    // k f_i(n) + i expands to (a m + (k b + i (c - a))) / c.
    std::vector<AffinePiece> pieces;
    pieces.reserve(mu);
    for (unsigned long r = 0; r < mu; ++r) {
        const unsigned long i = r % ku;
        const CongruentialMap& f = fs[i];
        const AffinePiece& p = f.pieces()[((r - i) / ku) % f.pieces().size()];
        pieces.emplace_back(p.a, k * p.b + BigInt(i) * (p.c - p.a), p.c);
    }
    return normalize(CongruentialMap(modulus, std::move(pieces)));
}

bool check_alpha_naturality(const CongruentialMap& f, const CongruentialMap& g,
                            const CongruentialMap& h) {
    const CongruentialMap& a = alpha();
    return equal(compose(a, star(f, star(g, h))), compose(star(star(f, g), h), a));
}

bool check_rho_naturality(const CongruentialMap& f, const CongruentialMap& g,
                          const CongruentialMap& h) {
    return equal(compose(rho(), mu3(f, g, h)), compose(star(f, star(g, h)), rho()));
}

bool check_lambda_naturality(const CongruentialMap& f, const CongruentialMap& g,
                             const CongruentialMap& h) {
    return equal(compose(lambda(), mu3(f, g, h)), compose(star(star(f, g), h), lambda()));
}

std::size_t PlanarTree::leaf_count() const {
    if (is_leaf()) return 1;
    std::size_t n = 0;
    for (const PlanarTree& c : children) n += c.leaf_count();
    return n;
}

namespace {

struct TreeParser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("tree syntax at position " + std::to_string(pos) + ": " + msg);
    }

    PlanarTree term(bool at_root) {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of term");
        if (text[pos] == '_') {
            ++pos;
            return PlanarTree::leaf();
        }
        if (text[pos] != '(') fail(std::string("expected '_' or '(', got '") + text[pos] + "'");
        ++pos;
        skip_ws();

        std::size_t declared = 0;  // 0 = '*', arity taken from child count
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
        } else if (pos < text.size() && text[pos] == '#') {
            ++pos;
            std::size_t start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            if (pos == start) fail("expected arity digits after '#'");
            declared = std::stoul(text.substr(start, pos - start));
            if (declared == 0) fail("arity 0 is not a tree");
        } else {
            fail("expected '*' or '#k' after '('");
        }

        std::vector<PlanarTree> kids;
        while (true) {
            skip_ws();
            if (pos >= text.size()) fail("missing ')'");
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            kids.push_back(term(false));
        }
        if (declared != 0 && kids.size() != declared)
            fail("node '#" + std::to_string(declared) + "' has " + std::to_string(kids.size()) +
                 " children");
        if (kids.empty()) fail("node with no children");
        if (kids.size() == 1 && !at_root) fail("unary nodes are only allowed as the whole term");
        if (declared == 0 && kids.size() < 2) fail("'*' nodes need at least 2 children");
        return PlanarTree::node(std::move(kids));
    }
};

void format_into(const PlanarTree& t, std::ostringstream& os) {
    if (t.is_leaf()) {
        os << "_";
        return;
    }
    if (t.children.size() == 2)
        os << "(*";
    else
        os << "(#" << t.children.size();
    for (const PlanarTree& c : t.children) {
        os << " ";
        format_into(c, os);
    }
    os << ")";
}

CongruentialMap eval_rec(const PlanarTree& t, const std::vector<CongruentialMap>& args,
                         std::size_t& next_leaf) {
    if (t.is_leaf()) return args[next_leaf++];
    std::vector<CongruentialMap> parts;
    parts.reserve(t.children.size());
    for (const PlanarTree& c : t.children) parts.push_back(eval_rec(c, args, next_leaf));
    return mu_k(parts);
}

}  // namespace

PlanarTree parse_tree(const std::string& text) {
    TreeParser p{text};
    PlanarTree t = p.term(true);
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters after term");
    return t;
}

std::string format_tree(const PlanarTree& t) {
    std::ostringstream os;
    format_into(t, os);
    return os.str();
}

CongruentialMap eval_tree(const PlanarTree& t, const std::vector<CongruentialMap>& args) {
    if (t.leaf_count() != args.size())
        throw std::invalid_argument("tree has " + std::to_string(t.leaf_count()) +
                                    " leaves but got " + std::to_string(args.size()) + " maps");
    std::size_t next_leaf = 0;
    return eval_rec(t, args, next_leaf);
}

namespace {

using TreeMemo = std::map<std::size_t, std::vector<PlanarTree>>;

const std::vector<PlanarTree>& trees_with(std::size_t n, TreeMemo& memo);

// Extends prefix with every way to fill the remaining slots of a node with
// `remaining` leaves split into positive parts.
void fill_slots(std::size_t arity, std::size_t slot, std::size_t remaining,
                std::vector<PlanarTree>& prefix, TreeMemo& memo, std::vector<PlanarTree>& out) {
    if (slot + 1 == arity) {
        for (const PlanarTree& t : trees_with(remaining, memo)) {
            prefix.push_back(t);
            out.push_back(PlanarTree::node(prefix));
            prefix.pop_back();
        }
        return;
    }
    for (std::size_t take = 1; take + (arity - slot - 1) <= remaining; ++take) {
        for (const PlanarTree& t : trees_with(take, memo)) {
            prefix.push_back(t);
            fill_slots(arity, slot + 1, remaining - take, prefix, memo, out);
            prefix.pop_back();
        }
    }
}

const std::vector<PlanarTree>& trees_with(std::size_t n, TreeMemo& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    std::vector<PlanarTree> out;
    if (n == 1) {
        out.push_back(PlanarTree::leaf());
    } else {
        for (std::size_t arity : {std::size_t{2}, std::size_t{3}}) {
            if (n < arity) continue;
            std::vector<PlanarTree> prefix;
            fill_slots(arity, 0, n, prefix, memo, out);
        }
    }
    return memo.emplace(n, std::move(out)).first->second;
}

}  // namespace

std::vector<PlanarTree> enumerate_trees(std::size_t max_leaves) {
    TreeMemo memo;
    std::vector<PlanarTree> all;
    for (std::size_t n = 1; n <= max_leaves; ++n) {
        const auto& layer = trees_with(n, memo);
        all.insert(all.end(), layer.begin(), layer.end());
    }
    return all;
}

FreenessReport freeness_probe(std::size_t max_leaves, const CongruentialMap& probe) {
    std::vector<PlanarTree> trees = enumerate_trees(max_leaves);
    std::vector<CongruentialMap> values;
    values.reserve(trees.size());
    for (const PlanarTree& t : trees)
        values.push_back(eval_tree(t, std::vector<CongruentialMap>(t.leaf_count(), probe)));

    FreenessReport rep;
    rep.tree_count = trees.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (equal(values[i], values[j])) {
                rep.collision_a = format_tree(trees[i]);
                rep.collision_b = format_tree(trees[j]);
                return rep;
            }
        }
    }
    rep.all_distinct = true;
    return rep;
}

}  // namespace cgr
