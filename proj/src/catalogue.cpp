#include "cgr/catalogue.hpp"

namespace cgr {

const CongruentialMap& rho() {
    static const CongruentialMap m(3, {
                                          AffinePiece(2, 0, 3),
                                          AffinePiece(4, -1, 3),
                                          AffinePiece(4, 1, 3),
                                      });
    return m;
}

const CongruentialMap& lambda() {
    static const CongruentialMap m(3, {
                                          AffinePiece(4, 0, 3),
                                          AffinePiece(4, 2, 3),
                                          AffinePiece(2, -1, 3),
                                      });
    return m;
}

const CongruentialMap& alpha() {
    static const CongruentialMap m(4, {
                                          AffinePiece(2, 0, 1),
                                          AffinePiece(1, 1, 1),
                                          AffinePiece(2, 0, 1),
                                          AffinePiece(1, -1, 2),
                                      });
    return m;
}

const CongruentialMap& identity() {
    static const CongruentialMap m = identity_map();
    return m;
}

std::optional<CongruentialMap> builtin_map(const std::string& name) {
    if (name == "rho") return rho();
    if (name == "lambda") return lambda();
    if (name == "alpha") return alpha();
    if (name == "id" || name == "identity") return identity();
    return std::nullopt;
}

}  // namespace cgr
