#pragma once

// Exact algebra of congruential maps on the natural numbers.
//
// A congruential map is a total function N -> N given by one affine piece per
// residue class modulo K: for n == j (mod K),
//
//     f(n) = (a_j * n + b_j) / c_j
//
// with a_j >= 0, c_j > 0 and the division exact for every n in the class.
// The classic Collatz bijections, their inverses, and everything generated
// from them under composition and interleaving live in this representation,
// which is closed under all of those operations.
//
// Maps are immutable values; every operation is pure and returns a fresh map.
// Equality of maps (as functions on N) is decidable and `equal` decides it.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cgr/bigint.hpp"

namespace cgr {

// One affine piece n -> (a*n + b) / c. Stored gcd-reduced, so a piece is a
// canonical representation of the rational-affine form it denotes.
struct AffinePiece {
    BigInt a;  // slope numerator, >= 0
    BigInt b;  // offset numerator, any sign
    BigInt c;  // denominator, > 0

    AffinePiece(BigInt slope, BigInt offset, BigInt den);

    bool operator==(const AffinePiece&) const = default;
};

class CongruentialMap {
  public:
    // Validates the representation invariants:
    //   * pieces.size() == modulus >= 1,
    //   * c_j | a_j*K and c_j | a_j*j + b_j  (integrality on the class),
    //   * a_j*j + b_j >= 0                   (values stay in N).
    // Throws std::invalid_argument with the offending residue otherwise.
    CongruentialMap(BigInt modulus, std::vector<AffinePiece> pieces);

    const BigInt& modulus() const { return modulus_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }

    const AffinePiece& piece_for(const BigInt& n) const {
        return pieces_[mpz_fdiv_ui(n.get_mpz_t(), pieces_.size())];
    }

    // f(n); exact, arbitrary precision. n must be >= 0.
    BigInt operator()(const BigInt& n) const;

  private:
    BigInt modulus_;
    std::vector<AffinePiece> pieces_;
};

inline BigInt eval(const CongruentialMap& f, const BigInt& n) { return f(n); }

CongruentialMap identity_map();

// f after g: compose(f, g)(n) = f(g(n)). Right-to-left everywhere in this
// library. The result is normalized.
CongruentialMap compose(const CongruentialMap& f, const CongruentialMap& g);

// Canonical representative: the smallest modulus d | K at which the piece
// table is d-periodic. Two maps are extensionally equal iff their normal
// forms are structurally identical.
CongruentialMap normalize(const CongruentialMap& f);

// Extensional equality on N, decided by lifting both maps to the common
// modulus lcm(K_f, K_g) and comparing reduced pieces classwise.
bool equal(const CongruentialMap& f, const CongruentialMap& g);

// Smallest-class witness of inequality: some n with f(n) != g(n), or nullopt
// when the maps are equal. Two distinct affine forms agree in at most one
// point, so per differing class it suffices to probe the class head and the
// next element.
std::optional<BigInt> first_disagreement(const CongruentialMap& f, const CongruentialMap& g);

// The image of piece j is the arithmetic progression {step*m + offset}.
struct ImageProgression {
    BigInt step;    // s_j = a_j*K / c_j
    BigInt offset;  // t_j = (a_j*j + b_j) / c_j

    bool operator==(const ImageProgression&) const = default;
};

// Proof object that f is a bijection of N: the image progressions, one per
// residue class of the domain, forming an exact covering system of N.
struct BijectionCertificate {
    std::vector<ImageProgression> progressions;  // indexed by residue class j
};

struct BijectionRefusal {
    std::string reason;
    BigInt witness;  // residue class or value witnessing the violation; -1 if none found
};

using BijectionOutcome = std::variant<BijectionCertificate, BijectionRefusal>;

// Decides bijectivity. f is a bijection of N iff every slope is positive,
// every image offset satisfies 0 <= t_j < s_j, and the progressions tile N.
// Disjointness plus total density 1 is equivalent to exact cover: modulo
// L = lcm(s_j), progression j occupies exactly L/s_j residues, so disjoint
// progressions with sum(1/s_j) = 1 occupy all L of them. The t_j < s_j
// requirement is forced: a progression starting above its step leaves a hole
// in its own residue class that no other progression can plug without
// colliding with it further up.
BijectionOutcome is_bijection(const CongruentialMap& f);

inline const BijectionCertificate* certificate(const BijectionOutcome& o) {
    return std::get_if<BijectionCertificate>(&o);
}
inline const BijectionRefusal* refusal(const BijectionOutcome& o) {
    return std::get_if<BijectionRefusal>(&o);
}

// f^-1 for certified bijections. The piece of f^-1 on class t_j (mod s_j) is
// n -> (c_j*n - b_j) / a_j. Throws std::domain_error when is_bijection
// refuses.
CongruentialMap inverse(const CongruentialMap& f);

// Exact solution set of f(n) = g(n) over N: a finite union of whole residue
// classes (modulo class_modulus) and isolated points, both canonicalized.
struct AgreementSolution {
    BigInt class_modulus = 1;           // classes are {class_modulus*m + r}
    std::vector<BigInt> class_residues; // sorted residues r < class_modulus
    std::vector<BigInt> points;         // sorted isolated solutions

    bool empty() const { return class_residues.empty() && points.empty(); }
    bool covers_all() const { return class_modulus == 1 && class_residues.size() == 1; }
    bool contains(const BigInt& n) const;
    std::string to_string() const;

    bool operator==(const AgreementSolution&) const = default;
};

AgreementSolution solve_agreement(const CongruentialMap& f, const CongruentialMap& g);

}  // namespace cgr
