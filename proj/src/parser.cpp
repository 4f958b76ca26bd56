#include "latticerect/parser.hpp"

#include <cctype>

#include "latticerect/errors.hpp"

namespace latticerect {

namespace {

struct Tok {
    enum class Kind { integer, ident, plus, minus, star, slash, caret, lparen, rparen, end };
    Kind kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Tok& peek() const { return cur_; }
    Tok take() {
        Tok t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) bump();
        int line = line_, col = col_;
        if (pos_ >= s_.size()) {
            cur_ = {Tok::Kind::end, "", line, col};
            return;
        }
        char c = s_[pos_];
        if (std::isdigit((unsigned char)c)) {
            std::string num;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
                num += s_[pos_];
                bump();
            }
            cur_ = {Tok::Kind::integer, num, line, col};
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
                id += s_[pos_];
                bump();
            }
            cur_ = {Tok::Kind::ident, id, line, col};
            return;
        }
        Tok::Kind k;
        switch (c) {
            case '+': k = Tok::Kind::plus; break;
            case '-': k = Tok::Kind::minus; break;
            case '*': k = Tok::Kind::star; break;
            case '/': k = Tok::Kind::slash; break;
            case '^': k = Tok::Kind::caret; break;
            case '(': k = Tok::Kind::lparen; break;
            case ')': k = Tok::Kind::rparen; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        bump();
        cur_ = {k, std::string(1, c), line, col};
    }
    void bump() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Tok cur_{Tok::Kind::end, "", 1, 1};
};

class Parser {
public:
    Parser(const std::string& text, BaseField field, const std::vector<std::string>& vars)
        : lex_(text), field_(field), vars_(vars) {}

    Poly expression() {
        bool neg = false;
        if (lex_.peek().kind == Tok::Kind::minus) {
            lex_.take();
            neg = true;
        }
        Poly acc = term();
        if (neg) acc = -acc;
        while (lex_.peek().kind == Tok::Kind::plus || lex_.peek().kind == Tok::Kind::minus) {
            Tok op = lex_.take();
            Poly rhs = term();
            acc = op.kind == Tok::Kind::plus ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    Poly atom() {
        Tok t = lex_.take();
        switch (t.kind) {
            case Tok::Kind::integer:
                return Poly::constant(field_, (int)vars_.size(), mpq_class(t.text));
            case Tok::Kind::ident: {
                for (size_t i = 0; i < vars_.size(); ++i)
                    if (vars_[i] == t.text)
                        return Poly::variable(field_, (int)vars_.size(), (int)i);
                throw ParseError("unknown variable '" + t.text + "'", t.line, t.col);
            }
            case Tok::Kind::lparen: {
                Poly inner = expression();
                expect(Tok::Kind::rparen, ")");
                return inner;
            }
            default:
                throw ParseError("expected integer, variable or '('", t.line, t.col);
        }
    }

    void expect(Tok::Kind k, const std::string& what) {
        Tok t = lex_.take();
        if (t.kind != k) throw ParseError("expected '" + what + "'", t.line, t.col);
    }

    void expect_end() {
        const Tok& t = lex_.peek();
        if (t.kind == Tok::Kind::slash)
            throw ParseError("division is only allowed once, between two atoms at top level",
                             t.line, t.col);
        if (t.kind != Tok::Kind::end) throw ParseError("trailing input", t.line, t.col);
    }

    bool at_slash() const { return lex_.peek().kind == Tok::Kind::slash; }
    void take_slash() { lex_.take(); }
    bool at_atom_start() const {
        auto k = lex_.peek().kind;
        return k == Tok::Kind::integer || k == Tok::Kind::ident || k == Tok::Kind::lparen;
    }

private:
    Lexer lex_;
    Poly term() {
        Poly acc = factor();
        while (lex_.peek().kind == Tok::Kind::star) {
            lex_.take();
            acc = acc * factor();
        }
        return acc;
    }
    Poly factor() {
        Poly base = atom();
        if (lex_.peek().kind == Tok::Kind::caret) {
            Tok caret = lex_.take();
            Tok e = lex_.take();
            if (e.kind != Tok::Kind::integer)
                throw ParseError("expected a nonnegative integer exponent", e.line, e.col);
            unsigned long exp = std::stoul(e.text);
            (void)caret;
            return base.pow((unsigned)exp);
        }
        return base;
    }
    BaseField field_;
    const std::vector<std::string>& vars_;
};

}  // namespace

Poly parse_poly(const std::string& text, BaseField field,
                const std::vector<std::string>& variables) {
    Parser p(text, field, variables);
    Poly r = p.expression();
    p.expect_end();
    return r;
}

FieldElem parse_field_elem(const std::string& text, BaseField field,
                           const std::vector<std::string>& variables) {
    // top := expression | atom '/' atom
    size_t depth = 0;
    long slash_at = -1;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') {
            if (depth == 0) break;  // parser reports the position
            --depth;
        }
        if (text[i] == '/' && depth == 0) {
            slash_at = (long)i;
            break;
        }
    }
    if (slash_at < 0) return FieldElem::from_poly(parse_poly(text, field, variables));
    Parser pn(text, field, variables);
    Poly num = pn.atom();
    if (!pn.at_slash()) {
        // the slash was not directly after a single atom
        Parser full(text, field, variables);
        full.expression();
        full.expect_end();  // raises the grammar error with position
        throw ParseError("malformed division", 1, (int)slash_at + 1);
    }
    pn.take_slash();
    Poly den = pn.atom();
    pn.expect_end();
    if (den.is_zero()) throw ParseError("division by zero", 1, (int)slash_at + 1);
    return FieldElem(num, den);
}

}  // namespace latticerect
