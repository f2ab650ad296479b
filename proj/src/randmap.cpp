#include "cgr/randmap.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace cgr {

namespace {

// Exact cover of N by progressions {step*m + offset}, refined by splitting:
// (s, t) becomes (2s, t), (2s, t+s), or the analogous three thirds.
std::vector<std::pair<BigInt, BigInt>> random_cover(std::mt19937_64& rng, unsigned long classes) {
    std::vector<std::pair<BigInt, BigInt>> cover{{1, 0}};
    while (cover.size() < classes) {
        const std::size_t pick = rng() % cover.size();
        const BigInt step = cover[pick].first;
        const BigInt off = cover[pick].second;
        const bool by_three = cover.size() + 2 <= classes && rng() % 2 == 0;
        const BigInt factor = by_three ? 3 : 2;
        cover[pick] = {factor * step, off};
        cover.push_back({factor * step, off + step});
        if (by_three) cover.push_back({factor * step, off + 2 * step});
    }
    return cover;
}

}  // namespace

CongruentialMap random_bijection(std::mt19937_64& rng, unsigned long min_classes,
                                 unsigned long max_classes) {
    unsigned long classes = min_classes + rng() % (max_classes - min_classes + 1);
    auto cover = random_cover(rng, classes);
    std::shuffle(cover.begin(), cover.end(), rng);

    // Class j (mod K) onto progression (s, t): K m + j -> s m + t, i.e.
    // (s n + (t K - s j)) / K.
    const BigInt k = cover.size();
    std::vector<AffinePiece> pieces;
    pieces.reserve(cover.size());
    for (std::size_t j = 0; j < cover.size(); ++j)
        pieces.emplace_back(cover[j].first, cover[j].second * k - cover[j].first * BigInt(j), k);
    return CongruentialMap(k, std::move(pieces));
}

CongruentialMap random_map(std::mt19937_64& rng) {
    CongruentialMap m = random_bijection(rng);
    const unsigned long flavor = rng() % 3;
    if (flavor == 0) return m;

    const BigInt k = m.modulus();
    std::vector<AffinePiece> pieces = m.pieces();
    const std::size_t j = rng() % pieces.size();
    if (flavor == 1) {
        pieces[j] = AffinePiece(0, rng() % 50, 1);  // collapse one class
    } else {
        const std::size_t i = rng() % pieces.size();
        const AffinePiece& src = pieces[i];
        // Send class j onto the progression class i uses: duplicates i's
        // image unless i == j.
        BigInt step = divexact(src.a * k, src.c);
        BigInt off = divexact(src.a * BigInt(i) + src.b, src.c);
        pieces[j] = AffinePiece(step, off * k - step * BigInt(j), k);
    }
    return CongruentialMap(k, std::move(pieces));
}

}  // namespace cgr
