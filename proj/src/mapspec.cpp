#include "cgr/mapspec.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

#include "cgr/catalogue.hpp"
#include "cgr/girard.hpp"
#include "cgr/serialize.hpp"
#include "cgr/thompson.hpp"

namespace cgr {

namespace {

std::optional<CongruentialMap> named_map(const std::string& name) {
    if (auto m = builtin_map(name)) return m;
    // Generator tower: x0, x1, ... or the explicit form xk:<j>.
    std::string digits;
    if (name.size() >= 2 && name[0] == 'x' && name.find(':') == std::string::npos)
        digits = name.substr(1);
    else if (name.rfind("xk:", 0) == 0)
        digits = name.substr(3);
    if (!digits.empty()) {
        for (char c : digits)
            if (c < '0' || c > '9') return std::nullopt;
        return generator(std::stoul(digits));
    }
    return std::nullopt;
}

struct SpecParser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("map spec '" + text + "' at position " +
                                    std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    std::string atom() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ',' &&
               text[pos] != ' ' && text[pos] != '\t')
            ++pos;
        if (pos == start) fail("expected a name");
        return text.substr(start, pos - start);
    }

    CongruentialMap expr() {
        std::string head = atom();
        skip_ws();
        if (pos >= text.size() || text[pos] != '(') {
            if (auto m = named_map(head)) return *m;
            return read_map_file(head);
        }
        ++pos;  // consume '('
        std::vector<CongruentialMap> args;
        while (true) {
            skip_ws();
            if (pos >= text.size()) fail("missing ')'");
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            args.push_back(expr());
            skip_ws();
            if (pos < text.size() && text[pos] == ',') ++pos;
        }
        return apply(head, std::move(args));
    }

    CongruentialMap apply(const std::string& fn, std::vector<CongruentialMap> args) {
        if (fn == "compose") {
            if (args.empty()) fail("compose needs at least one argument");
            CongruentialMap acc = args.back();
            for (std::size_t i = args.size() - 1; i-- > 0;) acc = compose(args[i], acc);
            return acc;
        }
        if (fn == "inverse") {
            if (args.size() != 1) fail("inverse takes exactly one argument");
            return inverse(args[0]);
        }
        if (fn == "star") {
            if (args.size() != 2) fail("star takes exactly two arguments");
            return star(args[0], args[1]);
        }
        if (fn == "mu") {
            if (args.empty()) fail("mu needs at least one argument");
            return mu_k(args);
        }
        if (fn == "normalize") {
            if (args.size() != 1) fail("normalize takes exactly one argument");
            return normalize(args[0]);
        }
        fail("unknown operation '" + fn + "'");
    }
};

}  // namespace

CongruentialMap resolve_map_spec(const std::string& spec) {
    SpecParser p{spec};
    CongruentialMap m = p.expr();
    p.skip_ws();
    if (p.pos != spec.size()) p.fail("trailing characters");
    return m;
}

}  // namespace cgr
