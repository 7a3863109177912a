#include "klpoly/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace klpoly {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool try_consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!try_consume(c))
            throw ParseError(std::string("expected '") + c + "' (" + what + ") at position " +
                                 std::to_string(pos),
                             pos);
    }
    bool try_keyword(const std::string& kw) {
        skip_ws();
        if (text.compare(pos, kw.size(), kw) == 0) {
            pos += kw.size();
            return true;
        }
        return false;
    }
    double number(const char* what) {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                text[pos] == 'e' || text[pos] == 'E' ||
                ((text[pos] == '-' || text[pos] == '+') && pos > start &&
                 (text[pos - 1] == 'e' || text[pos - 1] == 'E'))))
            ++pos;
        double v = 0;
        const auto r = std::from_chars(text.data() + start, text.data() + pos, v);
        if (r.ec != std::errc{} || r.ptr != text.data() + pos || pos == start)
            throw ParseError(std::string("expected a decimal literal (") + what +
                                 ") at position " + std::to_string(start),
                             start);
        return v;
    }
    int integer(const char* what) {
        const double v = number(what);
        const int k = static_cast<int>(v);
        if (k != v || k < 0)
            throw ParseError(std::string("expected a non-negative integer (") + what + ")", pos);
        return k;
    }
};

FunctionExpr parse_term(Cursor& c);

FunctionExpr parse_exp_tail(Cursor& c) {
    // after "exp": (-A*x) or (-A*x^2)
    c.expect('(', "exp argument");
    c.expect('-', "decay sign");
    const double a = c.number("decay rate A");
    c.expect('*', "exp form");
    if (!c.try_consume('x'))
        throw ParseError("expected 'x' in exp(-A*x...) at position " + std::to_string(c.pos),
                         c.pos);
    bool square = false;
    if (c.try_consume('^')) {
        const int e = c.integer("exponent");
        if (e != 2)
            throw ParseError("only x^2 is valid inside exp(...)", c.pos);
        square = true;
    }
    c.expect(')', "exp closing");
    return square ? FunctionExpr::gaussian(a) : FunctionExpr::exp_decay(a);
}

FunctionExpr parse_primary(Cursor& c) {
    c.skip_ws();
    if (c.try_keyword("exp")) return parse_exp_tail(c);
    if (c.try_keyword("indicator")) {
        c.expect('(', "indicator arguments");
        const double lo = c.number("indicator lower edge L");
        c.expect(',', "indicator separator");
        const double hi = c.number("indicator upper edge H");
        c.expect(')', "indicator closing");
        if (!(lo >= 0) || !(hi > lo))
            throw ParseError("indicator requires 0 <= L < H", c.pos);
        return FunctionExpr::indicator(lo, hi);
    }
    if (c.try_keyword("table:")) {
        c.skip_ws();
        std::size_t start = c.pos;
        while (c.pos < c.text.size() && c.text[c.pos] != '+' &&
               !std::isspace(static_cast<unsigned char>(c.text[c.pos])))
            ++c.pos;
        const std::string path = c.text.substr(start, c.pos - start);
        if (path.empty()) throw ParseError("expected a CSV path after 'table:'", start);
        return FunctionExpr::tabulated(load_curve_csv(path), path);
    }
    if (c.peek() == 'x') {
        ++c.pos;
        c.expect('^', "power form x^K");
        const int k = c.integer("power K");
        c.expect('*', "power-exponential form");
        if (!c.try_keyword("exp"))
            throw ParseError("x^K must multiply exp(-A*x)", c.pos);
        const FunctionExpr e = parse_exp_tail(c);
        const auto* d = std::get_if<FunctionExpr::ExpDecay>(&e.node());
        if (!d) throw ParseError("x^K pairs with exp(-A*x), not a gaussian", c.pos);
        return FunctionExpr::pow_exp(k, d->a);
    }
    throw ParseError("expected exp(...), x^K*exp(...), indicator(...), table:<path>, or "
                     "C*<expr> at position " +
                         std::to_string(c.pos),
                     c.pos);
}

FunctionExpr parse_term(Cursor& c) {
    c.skip_ws();
    const char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '+') {
        const double coef = c.number("scale factor C");
        c.expect('*', "scale");
        return FunctionExpr::scaled(coef, parse_term(c));
    }
    return parse_primary(c);
}

} // namespace

FunctionExpr parse_function(const std::string& text) {
    Cursor c{text};
    FunctionExpr e = parse_term(c);
    while (c.try_consume('+')) e = FunctionExpr::sum(std::move(e), parse_term(c));
    if (!c.eof())
        throw ParseError("unexpected trailing input at position " + std::to_string(c.pos),
                         c.pos);
    return e;
}

namespace {
std::string shortest(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}
} // namespace

std::string render_function(const FunctionExpr& expr) {
    using FE = FunctionExpr;
    return std::visit(
        [&expr](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FE::ExpDecay>) {
                return "exp(-" + shortest(n.a) + "*x)";
            } else if constexpr (std::is_same_v<T, FE::PowExp>) {
                return "x^" + std::to_string(n.k) + "*exp(-" + shortest(n.a) + "*x)";
            } else if constexpr (std::is_same_v<T, FE::Gaussian>) {
                return "exp(-" + shortest(n.a) + "*x^2)";
            } else if constexpr (std::is_same_v<T, FE::Indicator>) {
                return "indicator(" + shortest(n.lo) + "," + shortest(n.hi) + ")";
            } else if constexpr (std::is_same_v<T, FE::Scaled>) {
                if (std::holds_alternative<FE::Sum>(n.inner->node())) {
                    // the grammar has no parentheses: distribute the scale
                    const auto& s = std::get<FE::Sum>(n.inner->node());
                    return render_function(FE::sum(FE::scaled(n.c, *s.left),
                                                   FE::scaled(n.c, *s.right)));
                }
                return shortest(n.c) + "*" + render_function(*n.inner);
            } else if constexpr (std::is_same_v<T, FE::Sum>) {
                return render_function(*n.left) + "+" + render_function(*n.right);
            } else {
                if (n.source.empty())
                    throw DomainError("tabulated expression has no source path to render");
                return "table:" + n.source;
            }
        },
        expr.node());
}

GridSpec parse_grid(const std::string& text) {
    Cursor c{text};
    const double lo = c.number("grid lo");
    c.expect(':', "grid separator");
    const double hi = c.number("grid hi");
    c.expect(':', "grid separator");
    const int n = c.integer("grid n");
    bool log = false;
    if (c.try_consume(':')) {
        if (!c.try_keyword("log"))
            throw ParseError("expected 'log' after third ':' in grid spec", c.pos);
        log = true;
    }
    if (!c.eof()) throw ParseError("unexpected trailing input in grid spec", c.pos);
    return log ? GridSpec::log_uniform(lo, hi, n) : GridSpec::uniform(lo, hi, n);
}

std::string render_grid(const GridSpec& g) {
    std::string s = shortest(g.lo) + ":" + shortest(g.hi) + ":" + std::to_string(g.n);
    if (g.kind == GridSpec::Kind::log_uniform) s += ":log";
    return s;
}

} // namespace klpoly
