#include "cgr/serialize.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace cgr {

namespace {

// Strips the comment tail and surrounding whitespace.
std::string clean(const std::string& raw) {
    std::string s = raw.substr(0, raw.find('#'));
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct LineReader {
    std::istream& in;
    unsigned long line_no = 0;

    // Next non-empty payload line, or nullopt at end of input.
    std::optional<std::string> next() {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string s = clean(raw);
            if (!s.empty()) return s;
        }
        return std::nullopt;
    }
};

BigInt parse_int_token(std::istringstream& is, unsigned long line, const char* what) {
    std::string tok;
    if (!(is >> tok)) throw ParseError(line, std::string("missing ") + what);
    auto v = parse_bigint(tok);
    if (!v) throw ParseError(line, std::string("bad ") + what + ": '" + tok + "'");
    return *v;
}

}  // namespace

CongruentialMap read_map(std::istream& in) {
    LineReader r{in};

    auto header = r.next();
    if (!header) throw ParseError(r.line_no == 0 ? 1 : r.line_no, "empty input");
    if (*header != "congruential v1")
        throw ParseError(r.line_no, "expected 'congruential v1', got '" + *header + "'");

    auto mod_line = r.next();
    if (!mod_line) throw ParseError(r.line_no, "missing 'modulus' line");
    std::istringstream ms(*mod_line);
    std::string kw;
    ms >> kw;
    if (kw != "modulus") throw ParseError(r.line_no, "expected 'modulus', got '" + kw + "'");
    BigInt modulus = parse_int_token(ms, r.line_no, "modulus value");
    if (modulus < 1) throw ParseError(r.line_no, "modulus must be >= 1");
    unsigned long k = to_ulong(modulus, "map modulus");

    std::vector<std::optional<AffinePiece>> table(k);
    for (unsigned long seen = 0; seen < k; ++seen) {
        auto line = r.next();
        if (!line)
            throw ParseError(r.line_no, "expected " + std::to_string(k) + " pieces, found " +
                                            std::to_string(seen));
        std::istringstream ps(*line);
        ps >> kw;
        if (kw != "piece") throw ParseError(r.line_no, "expected 'piece', got '" + kw + "'");
        std::string idx_tok;
        if (!(ps >> idx_tok)) throw ParseError(r.line_no, "missing piece index");
        if (!idx_tok.empty() && idx_tok.back() == ':') idx_tok.pop_back();
        auto idx = parse_bigint(idx_tok);
        if (!idx || *idx < 0 || *idx >= modulus)
            throw ParseError(r.line_no, "piece index '" + idx_tok + "' out of range for modulus " +
                                            modulus.get_str());
        unsigned long j = idx->get_ui();
        if (table[j]) throw ParseError(r.line_no, "duplicate piece " + std::to_string(j));

        BigInt a = parse_int_token(ps, r.line_no, "slope");
        BigInt b = parse_int_token(ps, r.line_no, "offset");
        BigInt c = parse_int_token(ps, r.line_no, "denominator");
        std::string extra;
        if (ps >> extra) throw ParseError(r.line_no, "trailing token '" + extra + "'");
        try {
            table[j] = AffinePiece(std::move(a), std::move(b), std::move(c));
        } catch (const std::invalid_argument& e) {
            throw ParseError(r.line_no, e.what());
        }
    }
    if (auto stray = r.next()) throw ParseError(r.line_no, "unexpected line '" + *stray + "'");

    std::vector<AffinePiece> pieces;
    pieces.reserve(k);
    for (auto& p : table) pieces.push_back(std::move(*p));
    try {
        return CongruentialMap(std::move(modulus), std::move(pieces));
    } catch (const std::invalid_argument& e) {
        throw ParseError(r.line_no, e.what());
    }
}

CongruentialMap read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file: " + path);
    return read_map(in);
}

void write_map(std::ostream& out, const CongruentialMap& f) {
    out << "congruential v1\n";
    out << "modulus " << f.modulus().get_str() << "\n";
    for (std::size_t j = 0; j < f.pieces().size(); ++j) {
        const AffinePiece& p = f.pieces()[j];
        out << "piece " << j << ": " << p.a.get_str() << " " << p.b.get_str() << " "
            << p.c.get_str() << "\n";
    }
}

void write_map_file(const std::string& path, const CongruentialMap& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    write_map(out, f);
}

std::string map_to_string(const CongruentialMap& f) {
    std::ostringstream os;
    write_map(os, f);
    return os.str();
}

}  // namespace cgr
