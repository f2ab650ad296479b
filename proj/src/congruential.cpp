#include "cgr/congruential.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cgr {

namespace {

std::string piece_context(const BigInt& j) {
    return "residue class " + j.get_str();
}

}  // namespace

AffinePiece::AffinePiece(BigInt slope, BigInt offset, BigInt den)
    : a(std::move(slope)), b(std::move(offset)), c(std::move(den)) {
    if (c == 0) throw std::invalid_argument("affine piece with zero denominator");
    if (c < 0) {  // keep the denominator positive
        a = -a;
        b = -b;
        c = -c;
    }
    if (a < 0) throw std::invalid_argument("affine piece with negative slope: " + a.get_str());
    BigInt g = big_gcd(big_gcd(a, abs(b)), c);
    if (g > 1) {
        a = divexact(a, g);
        b = divexact(b, g);
        c = divexact(c, g);
    }
}

CongruentialMap::CongruentialMap(BigInt modulus, std::vector<AffinePiece> pieces)
    : modulus_(std::move(modulus)), pieces_(std::move(pieces)) {
    unsigned long k = to_ulong(modulus_, "map modulus");
    if (k == 0) throw std::invalid_argument("map modulus must be positive");
    if (pieces_.size() != k)
        throw std::invalid_argument("expected " + std::to_string(k) + " pieces, got " +
                                    std::to_string(pieces_.size()));
    BigInt j = 0;
    for (const AffinePiece& p : pieces_) {
        // (a*n + b)/c must be a non-negative integer for every n = K*m + j,
        // i.e. c | a*K (step) and c | a*j + b (anchor), with anchor value >= 0.
        if (!divisible(p.a * modulus_, p.c))
            throw std::invalid_argument("denominator does not divide slope*modulus on " +
                                        piece_context(j));
        BigInt head = p.a * j + p.b;
        if (!divisible(head, p.c))
            throw std::invalid_argument("denominator does not divide the class head on " +
                                        piece_context(j));
        if (head < 0)
            throw std::invalid_argument("map leaves the natural numbers on " + piece_context(j));
        ++j;
    }
}

BigInt CongruentialMap::operator()(const BigInt& n) const {
    if (n < 0) throw std::domain_error("congruential maps act on n >= 0, got " + n.get_str());
    const AffinePiece& p = piece_for(n);
    return divexact(p.a * n + p.b, p.c);
}

CongruentialMap identity_map() {
    return CongruentialMap(1, {AffinePiece(1, 0, 1)});
}

CongruentialMap normalize(const CongruentialMap& f) {
    const auto& ps = f.pieces();
    const unsigned long k = ps.size();
    for (unsigned long d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        bool periodic = true;
        for (unsigned long r = d; r < k && periodic; ++r)
            periodic = ps[r] == ps[r - d];
        if (periodic) {
            if (d == k) return f;
            return CongruentialMap(d, std::vector<AffinePiece>(ps.begin(), ps.begin() + d));
        }
    }
    return f;  // unreachable, d == k always succeeds
}

CongruentialMap compose(const CongruentialMap& f, const CongruentialMap& g) {
    const BigInt& kf = f.modulus();
    const BigInt& kg = g.modulus();
    const unsigned long kg_u = to_ulong(kg, "inner modulus");

    // Refine the domain of g until g is affine on each class and the image of
    // each class lands inside a single residue class of f. Class j of g maps
    // onto a progression of step s_j = a_j*kg/c_j, which is constant modulo
    // kf once the class is split into kf/gcd(s_j, kf) parts.
    BigInt depth = 1;
    for (unsigned long j = 0; j < kg_u; ++j) {
        const AffinePiece& p = g.pieces()[j];
        BigInt step = divexact(p.a * kg, p.c);
        depth = big_lcm(depth, divexact(kf, big_gcd(step, kf)));
    }
    BigInt refined = kg * depth;
    const unsigned long refined_u = to_ulong(refined, "composed modulus");

    std::vector<AffinePiece> pieces;
    pieces.reserve(refined_u);
    BigInt r = 0;
    for (unsigned long ru = 0; ru < refined_u; ++ru, ++r) {
        const AffinePiece& pg = g.pieces()[ru % kg_u];
        const AffinePiece& pf = f.piece_for(g(r));
        pieces.emplace_back(pf.a * pg.a, pf.a * pg.b + pf.b * pg.c, pf.c * pg.c);
    }
    return normalize(CongruentialMap(refined, std::move(pieces)));
}

bool equal(const CongruentialMap& f, const CongruentialMap& g) {
    // Reduced pieces are canonical: distinct reduced triples denote distinct
    // affine functions, and distinct affine functions agree on at most one
    // point of an (infinite) residue class. So classwise piece identity over
    // the common modulus decides extensional equality.
    const unsigned long kf = f.pieces().size();
    const unsigned long kg = g.pieces().size();
    const unsigned long l = to_ulong(big_lcm(f.modulus(), g.modulus()), "comparison modulus");
    for (unsigned long r = 0; r < l; ++r)
        if (!(f.pieces()[r % kf] == g.pieces()[r % kg])) return false;
    return true;
}

std::optional<BigInt> first_disagreement(const CongruentialMap& f, const CongruentialMap& g) {
    const unsigned long kf = f.pieces().size();
    const unsigned long kg = g.pieces().size();
    const BigInt l = big_lcm(f.modulus(), g.modulus());
    const unsigned long lu = to_ulong(l, "comparison modulus");
    for (unsigned long r = 0; r < lu; ++r) {
        if (f.pieces()[r % kf] == g.pieces()[r % kg]) continue;
        BigInt n = r;
        if (f(n) != g(n)) return n;
        return n + l;  // distinct affine forms agree at most once per class
    }
    return std::nullopt;
}

namespace {

std::vector<ImageProgression> image_progressions(const CongruentialMap& f) {
    std::vector<ImageProgression> out;
    out.reserve(f.pieces().size());
    BigInt j = 0;
    for (const AffinePiece& p : f.pieces()) {
        out.push_back({divexact(p.a * f.modulus(), p.c), divexact(p.a * j + p.b, p.c)});
        ++j;
    }
    return out;
}

// Smallest n lying on both progressions; caller guarantees the congruences
// t_i (mod s_i) and t_j (mod s_j) are compatible.
BigInt crt_overlap_witness(const ImageProgression& pi, const ImageProgression& pj) {
    BigInt g = big_gcd(pi.step, pj.step);
    BigInt si = divexact(pi.step, g);
    BigInt sj = divexact(pj.step, g);
    BigInt diff = divexact(pj.offset - pi.offset, g);
    BigInt inv;
    if (sj == 1) {
        inv = 0;
    } else if (mpz_invert(inv.get_mpz_t(), si.get_mpz_t(), sj.get_mpz_t()) == 0) {
        throw std::logic_error("progressions not coprime after gcd split");
    }
    BigInt u = floor_mod(diff * inv, sj);
    return pi.offset + pi.step * u;
}

constexpr unsigned long kSieveLimit = 1ul << 21;

}  // namespace

BijectionOutcome is_bijection(const CongruentialMap& f) {
    std::vector<ImageProgression> prog = image_progressions(f);

    BigInt j = 0;
    BigInt image_lcm = 1;
    for (const ImageProgression& p : prog) {
        if (p.step == 0)
            return BijectionRefusal{"piece collapses its class to the single value " +
                                        p.offset.get_str(),
                                    j};
        if (p.offset >= p.step)
            return BijectionRefusal{
                "image progression on class " + j.get_str() + " starts at " + p.offset.get_str() +
                    ", at or above its step " + p.step.get_str() +
                    ", leaving a hole below it that no other class can fill",
                j};
        image_lcm = big_lcm(image_lcm, p.step);
        ++j;
    }

    if (image_lcm <= kSieveLimit) {
        // Exact cover check by sieving residues modulo lcm of the steps.
        const unsigned long l = image_lcm.get_ui();
        std::vector<unsigned long> owner(l, 0);  // 1-based class index, 0 = free
        for (unsigned long cls = 0; cls < prog.size(); ++cls) {
            const unsigned long step = to_ulong(prog[cls].step, "image step");
            const unsigned long off = to_ulong(prog[cls].offset, "image offset");
            for (unsigned long v = off; v < l; v += step) {
                if (owner[v] != 0)
                    return BijectionRefusal{"classes " + std::to_string(owner[v] - 1) + " and " +
                                                std::to_string(cls) + " both reach " +
                                                std::to_string(v),
                                            BigInt(v)};
                owner[v] = cls + 1;
            }
        }
        for (unsigned long v = 0; v < l; ++v)
            if (owner[v] == 0)
                return BijectionRefusal{
                    "no class reaches " + std::to_string(v) + " (mod " + std::to_string(l) + ")",
                    BigInt(v)};
        return BijectionCertificate{std::move(prog)};
    }

    // Large lcm: pairwise disjointness plus exact density 1. Disjoint
    // progressions occupy sum(L/s_j) residues modulo L, so density 1 makes
    // the cover exact without materializing it.
    for (std::size_t i = 0; i < prog.size(); ++i) {
        for (std::size_t k2 = i + 1; k2 < prog.size(); ++k2) {
            BigInt g = big_gcd(prog[i].step, prog[k2].step);
            if (floor_mod(prog[i].offset - prog[k2].offset, g) == 0)
                return BijectionRefusal{"classes " + std::to_string(i) + " and " +
                                            std::to_string(k2) + " overlap",
                                        crt_overlap_witness(prog[i], prog[k2])};
        }
    }
    mpq_class density = 0;
    for (const ImageProgression& p : prog) density += mpq_class(1, p.step);
    density.canonicalize();
    if (density != 1)
        return BijectionRefusal{"image density is " + density.get_str() + ", not 1", BigInt(-1)};
    return BijectionCertificate{std::move(prog)};
}

CongruentialMap inverse(const CongruentialMap& f) {
    BijectionOutcome outcome = is_bijection(f);
    if (const BijectionRefusal* r = refusal(outcome))
        throw std::domain_error("not a bijection: " + r->reason);
    const auto& prog = certificate(outcome)->progressions;

    BigInt modulus = 1;
    for (const ImageProgression& p : prog) modulus = big_lcm(modulus, p.step);
    const unsigned long l = to_ulong(modulus, "inverse modulus");

    // Class t_j (mod s_j) of the image pulls back through n -> (c*n - b)/a.
    std::vector<AffinePiece> table(l, AffinePiece(0, 0, 1));
    for (std::size_t cls = 0; cls < prog.size(); ++cls) {
        const AffinePiece& p = f.pieces()[cls];
        AffinePiece inv(p.c, -p.b, p.a);
        const unsigned long step = prog[cls].step.get_ui();
        for (unsigned long v = prog[cls].offset.get_ui(); v < l; v += step) table[v] = inv;
    }
    return normalize(CongruentialMap(modulus, std::move(table)));
}

bool AgreementSolution::contains(const BigInt& n) const {
    BigInt r = floor_mod(n, class_modulus);
    if (std::binary_search(class_residues.begin(), class_residues.end(), r)) return true;
    return std::binary_search(points.begin(), points.end(), n);
}

std::string AgreementSolution::to_string() const {
    if (empty()) return "empty";
    if (covers_all()) return "all of N";
    std::ostringstream os;
    const char* sep = "";
    for (const BigInt& r : class_residues) {
        os << sep << "n = " << r.get_str() << " (mod " << class_modulus.get_str() << ")";
        sep = ", ";
    }
    for (const BigInt& p : points) {
        os << sep << "n = " << p.get_str();
        sep = ", ";
    }
    return os.str();
}

AgreementSolution solve_agreement(const CongruentialMap& f, const CongruentialMap& g) {
    const unsigned long kf = f.pieces().size();
    const unsigned long kg = g.pieces().size();
    const BigInt m = big_lcm(f.modulus(), g.modulus());
    const unsigned long mu = to_ulong(m, "agreement modulus");

    // On each common class, (a1 n + b1)/c1 = (a2 n + b2)/c2 cross-multiplies
    // to a single linear equation with no, one, or all solutions.
    std::vector<bool> whole(mu, false);
    std::set<BigInt> points;
    bool any_class = false;
    BigInt r = 0;
    for (unsigned long ru = 0; ru < mu; ++ru, ++r) {
        const AffinePiece& p = f.pieces()[ru % kf];
        const AffinePiece& q = g.pieces()[ru % kg];
        BigInt lin = p.a * q.c - q.a * p.c;
        BigInt cst = q.b * p.c - p.b * q.c;
        if (lin == 0) {
            if (cst == 0) {
                whole[ru] = true;
                any_class = true;
            }
            continue;
        }
        if (!divisible(cst, lin)) continue;
        BigInt n0 = divexact(cst, lin);
        if (n0 >= 0 && floor_mod(n0, m) == r) points.insert(n0);
    }

    AgreementSolution sol;
    if (any_class) {
        // Canonicalize the union of classes to the smallest modulus at which
        // the membership pattern is periodic.
        unsigned long period = mu;
        for (unsigned long d = 1; d < mu; ++d) {
            if (mu % d != 0) continue;
            bool ok = true;
            for (unsigned long v = d; v < mu && ok; ++v) ok = whole[v] == whole[v - d];
            if (ok) {
                period = d;
                break;
            }
        }
        sol.class_modulus = period;
        for (unsigned long v = 0; v < period; ++v)
            if (whole[v]) sol.class_residues.push_back(v);
    }
    for (const BigInt& p : points)
        if (!any_class || !std::binary_search(sol.class_residues.begin(), sol.class_residues.end(),
                                              floor_mod(p, sol.class_modulus)))
            sol.points.push_back(p);
    return sol;
}

}  // namespace cgr
