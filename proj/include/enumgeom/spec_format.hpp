#pragma once

#include "enumgeom/quotient.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace enumgeom {

struct SourcePos {
    int line = 1;
    int column = 1;
};

/// Malformed text: position plus the set of tokens that would have been accepted.
class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, std::string found, std::vector<std::string> expected)
        : std::runtime_error(compose(pos, found, expected)),
          pos_(pos),
          found_(std::move(found)),
          expected_(std::move(expected)) {}

    SourcePos position() const noexcept { return pos_; }
    const std::string& found() const noexcept { return found_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string compose(SourcePos pos, const std::string& found, const std::vector<std::string>& expected) {
        std::string msg = "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
                          ": expected ";
        if (expected.size() > 1) msg += "one of ";
        for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
        return msg + ", found " + found;
    }

    SourcePos pos_;
    std::string found_;
    std::vector<std::string> expected_;
};

/// Well-formed text that does not describe a valid object (undeclared names,
/// duplicate declarations, missing statements).
class SemanticError : public std::runtime_error {
public:
    SemanticError(SourcePos pos, const std::string& what)
        : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " +
                             what),
          pos_(pos) {}
    SourcePos position() const noexcept { return pos_; }

private:
    SourcePos pos_;
};

// ---------------------------------------------------------------- lexer

enum class TokenKind { Name, Int, Plus, Minus, Star, Caret, Slash, LParen, RParen, Colon, Equals, End };

struct Token {
    TokenKind kind;
    std::string text;
    SourcePos pos;
};

inline std::string describe(TokenKind k) {
    switch (k) {
        case TokenKind::Name: return "name";
        case TokenKind::Int: return "integer";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Caret: return "'^'";
        case TokenKind::Slash: return "'/'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Equals: return "'='";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

inline std::string describe(const Token& t) {
    if (t.kind == TokenKind::Name || t.kind == TokenKind::Int) return "'" + t.text + "'";
    return describe(t.kind);
}

namespace detail {

constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

inline bool name_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
inline bool name_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    SourcePos pos;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j, ++i) {
            unsigned char c = static_cast<unsigned char>(text[i]);
            if (c == '\n') {
                ++pos.line;
                pos.column = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++pos.column;
            }
        }
    };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        SourcePos start = pos;
        if (text.substr(i, kUnicodeMinus.size()) == kUnicodeMinus) {
            out.push_back({TokenKind::Minus, "-", start});
            advance(kUnicodeMinus.size());
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({TokenKind::Int, std::string(text.substr(i, j - i)), start});
            advance(j - i);
            continue;
        }
        if (name_start(c)) {
            std::size_t j = i;
            while (j < text.size() && name_char(static_cast<unsigned char>(text[j])) &&
                   text.substr(j, kUnicodeMinus.size()) != kUnicodeMinus)
                ++j;
            out.push_back({TokenKind::Name, std::string(text.substr(i, j - i)), start});
            advance(j - i);
            continue;
        }
        TokenKind k;
        switch (c) {
            case '+': k = TokenKind::Plus; break;
            case '-': k = TokenKind::Minus; break;
            case '*': k = TokenKind::Star; break;
            case '^': k = TokenKind::Caret; break;
            case '/': k = TokenKind::Slash; break;
            case '(': k = TokenKind::LParen; break;
            case ')': k = TokenKind::RParen; break;
            case ':': k = TokenKind::Colon; break;
            case '=': k = TokenKind::Equals; break;
            default: {
                std::size_t len = 1;
                if (c >= 0x80)
                    while (i + len < text.size() && (static_cast<unsigned char>(text[i + len]) & 0xC0) == 0x80) ++len;
                throw ParseError(start, "'" + std::string(text.substr(i, len)) + "'", {"a token"});
            }
        }
        out.push_back({k, std::string(1, static_cast<char>(c)), start});
        advance(1);
    }
    out.push_back({TokenKind::End, "", pos});
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------- syntax tree

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Unresolved polynomial expression; names are bound later against a context.
struct Expr {
    enum class Kind { Number, Name, Sum, Product, Power };
    Kind kind;
    SourcePos pos;
    Rational number;                 // Number
    std::string name;                // Name
    std::vector<ExprPtr> children;   // Sum, Product, Power (one child)
    std::vector<int> signs;          // Sum: +1 / -1 per child
    unsigned exponent = 0;           // Power
};

struct VarDecl {
    std::string name;
    int weight = VariableContext::kDefaultWeight;
    SourcePos pos;
};

struct NamedExpr {
    std::string name;
    ExprPtr expr;
    SourcePos pos;
};

struct RingSpecDocument {
    std::optional<std::string> name;
    std::vector<VarDecl> vars;
    std::optional<int> top;
    SourcePos top_pos;
    std::optional<std::pair<ExprPtr, Rational>> ref;
    SourcePos ref_pos;
    std::vector<ExprPtr> rels;
    std::vector<NamedExpr> classes;
    SourcePos first_pos;
    bool empty() const { return !name && vars.empty() && !top && !ref && rels.empty() && classes.empty(); }
};

struct BlowupSpecDocument {
    RingSpecDocument base;
    RingSpecDocument center;
    bool has_base = false;
    bool has_center = false;
    std::vector<NamedExpr> maps;
    std::vector<NamedExpr> sections;
    std::optional<NamedExpr> chern;
    std::optional<NamedExpr> dual;
    std::optional<NamedExpr> exceptional;
    std::optional<NamedExpr> tangent;
};

using SpecDocument = std::variant<RingSpecDocument, BlowupSpecDocument>;

// ---------------------------------------------------------------- parser

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    ExprPtr expression() {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Sum;
        e->pos = peek().pos;
        int sign = 1;
        if (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            sign = next().kind == TokenKind::Minus ? -1 : 1;
        }
        e->children.push_back(term());
        e->signs.push_back(sign);
        while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            e->signs.push_back(next().kind == TokenKind::Minus ? -1 : 1);
            e->children.push_back(term());
        }
        if (e->children.size() == 1 && e->signs[0] == 1) return e->children[0];
        return e;
    }

    Rational rational(bool allow_sign) {
        int sign = 1;
        if (allow_sign && (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus))
            sign = next().kind == TokenKind::Minus ? -1 : 1;
        auto num = expect(TokenKind::Int, allow_sign ? std::vector<std::string>{"'+'", "'-'", "integer"}
                                                     : std::vector<std::string>{"integer"});
        Rational r = Rational::parse(num.text);
        if (peek().kind == TokenKind::Slash) {
            next();
            auto den = expect(TokenKind::Int, {"integer"});
            if (Rational::parse(den.text).is_zero()) throw ParseError(den.pos, "'0'", {"nonzero denominator"});
            r = r / Rational::parse(den.text);
        }
        return sign < 0 ? -r : r;
    }

    int integer() {
        auto t = expect(TokenKind::Int, {"integer"});
        if (t.text.size() > 9) throw ParseError(t.pos, describe(t), {"integer below 10^9"});
        return std::stoi(t.text);
    }

    std::string name(const std::vector<std::string>& expected = {"name"}) {
        return expect(TokenKind::Name, expected).text;
    }

    /// NAME ("-" (NAME|INT))* with no whitespace in between, e.g. conics-p3.
    std::string dashed_name() {
        auto first = expect(TokenKind::Name, {"name"});
        std::string out = first.text;
        auto adjacent = [](const Token& a, const Token& b) {
            return a.pos.line == b.pos.line && a.pos.column + static_cast<int>(a.text.size()) == b.pos.column;
        };
        while (i_ + 1 < toks_.size() && peek().kind == TokenKind::Minus && adjacent(toks_[i_ - 1], peek()) &&
               (toks_[i_ + 1].kind == TokenKind::Name || toks_[i_ + 1].kind == TokenKind::Int) &&
               adjacent(peek(), toks_[i_ + 1])) {
            next();
            out += "-" + next().text;
        }
        return out;
    }

    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    bool at_end() const { return peek().kind == TokenKind::End; }

    const Token& expect(TokenKind k, std::vector<std::string> expected) {
        if (peek().kind != k) throw ParseError(peek().pos, describe(peek()), std::move(expected));
        return next();
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(peek().pos, describe(peek()), std::move(expected));
    }

private:
    ExprPtr term() {
        auto first = factor();
        if (peek().kind != TokenKind::Star) return first;
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Product;
        e->pos = first->pos;
        e->children.push_back(first);
        while (peek().kind == TokenKind::Star) {
            next();
            e->children.push_back(factor());
        }
        return e;
    }

    ExprPtr factor() {
        auto b = base();
        if (peek().kind != TokenKind::Caret) return b;
        next();
        auto t = expect(TokenKind::Int, {"integer"});
        if (t.text.size() > 6) throw ParseError(t.pos, describe(t), {"exponent below 10^6"});
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Power;
        e->pos = b->pos;
        e->children.push_back(b);
        e->exponent = static_cast<unsigned>(std::stoul(t.text));
        return e;
    }

    ExprPtr base() {
        const auto& t = peek();
        if (t.kind == TokenKind::Int) {
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Number;
            e->pos = t.pos;
            e->number = rational(false);
            return e;
        }
        if (t.kind == TokenKind::Name) {
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Name;
            e->pos = t.pos;
            e->name = next().text;
            return e;
        }
        if (t.kind == TokenKind::LParen) {
            next();
            auto inner = expression();
            expect(TokenKind::RParen, {"')'", "'+'", "'-'", "'*'", "'^'"});
            return inner;
        }
        fail({"integer", "name", "'('"});
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

inline const std::vector<std::string>& ring_keywords() {
    static const std::vector<std::string> k{"ring", "var", "top", "ref", "rel", "class"};
    return k;
}
inline const std::vector<std::string>& blowup_keywords() {
    static const std::vector<std::string> k{"base", "center", "map", "section", "chern", "dual", "exceptional", "tangent"};
    return k;
}

inline std::vector<std::string> statement_expectations() {
    std::vector<std::string> out;
    for (const auto& k : ring_keywords()) out.push_back("'" + k + "'");
    for (const auto& k : blowup_keywords()) out.push_back("'" + k + "'");
    out.push_back("end of input");
    return out;
}

inline void ring_statement(Parser& p, const std::string& kw, SourcePos pos, RingSpecDocument& doc) {
    if (doc.empty()) doc.first_pos = pos;
    if (kw == "ring") {
        auto n = p.dashed_name();
        if (doc.name) throw SemanticError(pos, "ring name declared twice");
        doc.name = n;
    } else if (kw == "var") {
        VarDecl v;
        v.pos = p.peek().pos;
        v.name = p.name();
        if (p.peek().kind == TokenKind::Colon) {
            p.next();
            v.weight = p.integer();
        }
        doc.vars.push_back(std::move(v));
    } else if (kw == "top") {
        if (doc.top) throw SemanticError(pos, "top degree declared twice");
        doc.top_pos = pos;
        doc.top = p.integer();
    } else if (kw == "ref") {
        if (doc.ref) throw SemanticError(pos, "reference declared twice");
        doc.ref_pos = pos;
        auto e = p.expression();
        p.expect(TokenKind::Equals, {"'='", "'+'", "'-'", "'*'", "'^'"});
        doc.ref = std::make_pair(e, p.rational(true));
    } else if (kw == "rel") {
        doc.rels.push_back(p.expression());
    } else {  // class
        NamedExpr c;
        c.pos = p.peek().pos;
        c.name = p.name();
        p.expect(TokenKind::Equals, {"'='"});
        c.expr = p.expression();
        doc.classes.push_back(std::move(c));
    }
}

}  // namespace detail

/// Parses a single polynomial expression (the whole text must be consumed).
inline ExprPtr parse_expression(std::string_view text) {
    detail::Parser p(text);
    auto e = p.expression();
    if (!p.at_end()) p.fail({"'+'", "'-'", "'*'", "'^'", "end of input"});
    return e;
}

/// Ring-spec or blow-up-spec document. A document is a blow-up spec as soon
/// as it contains a `base`/`center` section or a blow-up statement.
inline SpecDocument parse_spec(std::string_view text) {
    detail::Parser p(text);
    RingSpecDocument top_level;
    BlowupSpecDocument blow;
    bool is_blowup = false;
    RingSpecDocument* current = &top_level;
    auto optional_once = [&](std::optional<NamedExpr>& slot, const std::string& kw, SourcePos pos, NamedExpr value) {
        if (slot) throw SemanticError(pos, "'" + kw + "' given twice");
        slot = std::move(value);
    };

    while (!p.at_end()) {
        const auto& t = p.peek();
        if (t.kind != TokenKind::Name) p.fail(detail::statement_expectations());
        std::string kw = t.text;
        SourcePos pos = t.pos;
        const auto& rk = detail::ring_keywords();
        const auto& bk = detail::blowup_keywords();
        if (std::find(rk.begin(), rk.end(), kw) != rk.end()) {
            p.next();
            detail::ring_statement(p, kw, pos, *current);
            continue;
        }
        if (std::find(bk.begin(), bk.end(), kw) == bk.end()) p.fail(detail::statement_expectations());
        p.next();
        is_blowup = true;
        if (kw == "base" || kw == "center") {
            bool& seen = kw == "base" ? blow.has_base : blow.has_center;
            if (seen) throw SemanticError(pos, "section '" + kw + "' given twice");
            seen = true;
            current = kw == "base" ? &blow.base : &blow.center;
        } else if (kw == "map" || kw == "section") {
            NamedExpr m;
            m.pos = p.peek().pos;
            m.name = p.name();
            p.expect(TokenKind::Equals, {"'='"});
            m.expr = p.expression();
            (kw == "map" ? blow.maps : blow.sections).push_back(std::move(m));
        } else if (kw == "exceptional") {
            NamedExpr e;
            e.pos = p.peek().pos;
            e.name = p.name();
            optional_once(blow.exceptional, kw, pos, std::move(e));
        } else {
            NamedExpr e;
            e.pos = pos;
            e.name = kw;
            e.expr = p.expression();
            optional_once(kw == "chern" ? blow.chern : kw == "dual" ? blow.dual : blow.tangent, kw, pos, std::move(e));
        }
    }
    if (!is_blowup) return top_level;
    if (!top_level.empty())
        throw SemanticError(top_level.first_pos, "ring statements must appear inside a 'base' or 'center' section");
    return blow;
}

// ---------------------------------------------------------------- binding

/// Extra names usable in expressions (named classes), bound to polynomials.
using SymbolTable = std::map<std::string, Polynomial, std::less<>>;

inline Polynomial to_polynomial(const Expr& e, const Context& ctx, const SymbolTable& symbols = {}) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return Polynomial::constant(ctx, e.number);
        case Expr::Kind::Name: {
            if (ctx->index_of(e.name)) return Polynomial::variable(ctx, e.name);
            if (auto it = symbols.find(e.name); it != symbols.end()) return it->second;
            throw SemanticError(e.pos, "undeclared name '" + e.name + "'");
        }
        case Expr::Kind::Sum: {
            Polynomial acc(ctx);
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                auto c = to_polynomial(*e.children[i], ctx, symbols);
                if (e.signs[i] < 0) acc -= c;
                else acc += c;
            }
            return acc;
        }
        case Expr::Kind::Product: {
            Polynomial acc = Polynomial::constant(ctx, Rational(1));
            for (const auto& c : e.children) acc = acc * to_polynomial(*c, ctx, symbols);
            return acc;
        }
        case Expr::Kind::Power:
            return to_polynomial(*e.children[0], ctx, symbols).pow(e.exponent);
    }
    return Polynomial(ctx);
}

inline Polynomial parse_polynomial(std::string_view text, const Context& ctx, const SymbolTable& symbols = {}) {
    return to_polynomial(*parse_expression(text), ctx, symbols);
}

/// A presented ring together with its named classes.
struct RingModel {
    Ring ring;
    std::vector<std::pair<std::string, Polynomial>> classes;

    SymbolTable symbols() const {
        SymbolTable t;
        for (const auto& [n, p] : classes) t.emplace(n, p);
        return t;
    }
};

inline Context context_of(const RingSpecDocument& doc) {
    std::vector<std::string> names;
    std::vector<int> weights;
    for (const auto& v : doc.vars) {
        if (std::find(names.begin(), names.end(), v.name) != names.end())
            throw SemanticError(v.pos, "variable '" + v.name + "' declared twice");
        if (v.weight <= 0) throw SemanticError(v.pos, "weight of '" + v.name + "' must be positive");
        names.push_back(v.name);
        weights.push_back(v.weight);
    }
    return make_context(std::move(names), std::move(weights));
}

/// Builds and validates the ring. Presentation failures surface as MathError.
inline RingModel build_ring(const RingSpecDocument& doc) {
    auto ctx = context_of(doc);
    if (!doc.top) throw SemanticError(doc.first_pos, "missing 'top' statement");
    std::vector<Polynomial> rels;
    for (const auto& r : doc.rels) {
        auto p = to_polynomial(*r, ctx);
        if (!p.is_homogeneous()) throw SemanticError(r->pos, "relation " + p.str() + " is not homogeneous");
        rels.push_back(std::move(p));
    }
    std::optional<Reference> ref;
    if (doc.ref) {
        auto m = to_polynomial(*doc.ref->first, ctx);
        if (m.size() != 1 || !m.terms().begin()->second.is_one())
            throw SemanticError(doc.ref_pos, "reference must be a single monomial");
        ref = Reference{m.terms().begin()->first, doc.ref->second};
    }
    RingModel model{make_presentation(ctx, std::move(rels), *doc.top, ref, doc.name.value_or("")), {}};
    for (const auto& c : doc.classes) {
        for (const auto& [n, _] : model.classes)
            if (n == c.name) throw SemanticError(c.pos, "class '" + c.name + "' declared twice");
        if (ctx->index_of(c.name)) throw SemanticError(c.pos, "class '" + c.name + "' shadows a variable");
        model.classes.emplace_back(c.name, to_polynomial(*c.expr, ctx));
    }
    return model;
}

// ---------------------------------------------------------------- printing

inline std::string format_ring_spec(const RingPresentation& ring,
                                    const std::vector<std::pair<std::string, Polynomial>>& classes = {}) {
    std::ostringstream out;
    const auto& ctx = *ring.context();
    if (!ring.name().empty()) out << "ring " << ring.name() << "\n";
    for (std::size_t i = 0; i < ctx.arity(); ++i) out << "var " << ctx.name(i) << ":" << ctx.weight(i) << "\n";
    out << "top " << ring.top_degree() << "\n";
    if (ring.reference())
        out << "ref " << Polynomial::term(ring.context(), ring.reference()->monomial, Rational(1)).str() << " = "
            << ring.reference()->value << "\n";
    for (const auto& r : ring.relations()) out << "rel " << r.str() << "\n";
    for (const auto& [n, p] : classes) out << "class " << n << " = " << p.str() << "\n";
    return out.str();
}

}  // namespace enumgeom
