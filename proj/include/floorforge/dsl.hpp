#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "floorforge/errors.hpp"
#include "floorforge/numeric.hpp"
#include "floorforge/radical.hpp"

namespace floorforge {

// Syntax error with 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column)
        : std::runtime_error(message + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Expression tree for floor identities:
//   expr   := term { ("+"|"-") term }
//   term   := factor { ("*"|"/") factor }
//   factor := integer | ident | "floor" "(" expr ")"
//           | "root" "(" integer "," expr ")" | "(" expr ")" | "-" factor
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
    enum class Kind { literal, variable, add, sub, mul, div, neg, floor, root };

    static ExprPtr literal(BigInt v) {
        auto e = std::make_shared<Expr>();
        e->kind_ = Kind::literal;
        e->literal_ = std::move(v);
        return e;
    }
    static ExprPtr variable(std::string name) {
        auto e = std::make_shared<Expr>();
        e->kind_ = Kind::variable;
        e->name_ = std::move(name);
        return e;
    }
    static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs) {
        auto e = std::make_shared<Expr>();
        e->kind_ = kind;
        e->lhs_ = std::move(lhs);
        e->rhs_ = std::move(rhs);
        return e;
    }
    static ExprPtr neg(ExprPtr child) {
        auto e = std::make_shared<Expr>();
        e->kind_ = Kind::neg;
        e->lhs_ = std::move(child);
        return e;
    }
    static ExprPtr floor_of(ExprPtr child) {
        auto e = std::make_shared<Expr>();
        e->kind_ = Kind::floor;
        e->lhs_ = std::move(child);
        return e;
    }
    static ExprPtr root_of(unsigned degree, ExprPtr child) {
        if (degree < 1) throw DomainError("root degree must be a positive integer");
        auto e = std::make_shared<Expr>();
        e->kind_ = Kind::root;
        e->degree_ = degree;
        e->lhs_ = std::move(child);
        return e;
    }

    Kind kind() const { return kind_; }
    const BigInt& literal_value() const { return literal_; }
    const std::string& name() const { return name_; }
    unsigned degree() const { return degree_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }

private:
    Kind kind_ = Kind::literal;
    BigInt literal_;
    std::string name_;
    unsigned degree_ = 1;
    ExprPtr lhs_;
    ExprPtr rhs_;
};

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case Expr::Kind::literal:
            return a->literal_value() == b->literal_value();
        case Expr::Kind::variable:
            return a->name() == b->name();
        case Expr::Kind::root:
            return a->degree() == b->degree() && expr_equal(a->lhs(), b->lhs());
        case Expr::Kind::neg:
        case Expr::Kind::floor:
            return expr_equal(a->lhs(), b->lhs());
        default:
            return expr_equal(a->lhs(), b->lhs()) && expr_equal(a->rhs(), b->rhs());
    }
}

struct Quantifier {
    std::string var;
    BigInt lo;
    BigInt hi;
};

// "forall v in lo..hi, ... : lhs = rhs"; every free variable of both sides
// is bound by exactly one quantifier.
struct IdentityStatement {
    std::vector<Quantifier> quantifiers;
    ExprPtr lhs;
    ExprPtr rhs;
};

namespace dsl_detail {

enum class TokKind {
    integer,
    ident,
    kw_forall,
    kw_in,
    kw_floor,
    kw_root,
    plus,
    minus,
    star,
    slash,
    lparen,
    rparen,
    comma,
    colon,
    dotdot,
    equals,
    end
};

struct Token {
    TokKind kind;
    std::string text;
    BigInt value;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= src_.size()) {
            current_.kind = TokKind::end;
            current_.text = "<end of input>";
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                bump();
            current_.kind = TokKind::integer;
            current_.text = std::string(src_.substr(start, pos_ - start));
            current_.value = BigInt(current_.text);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isalnum(static_cast<unsigned char>(src_[pos_])))
                bump();
            current_.text = std::string(src_.substr(start, pos_ - start));
            if (current_.text == "forall")
                current_.kind = TokKind::kw_forall;
            else if (current_.text == "in")
                current_.kind = TokKind::kw_in;
            else if (current_.text == "floor")
                current_.kind = TokKind::kw_floor;
            else if (current_.text == "root")
                current_.kind = TokKind::kw_root;
            else
                current_.kind = TokKind::ident;
            return;
        }
        if (c == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '.') {
            bump();
            bump();
            current_.kind = TokKind::dotdot;
            current_.text = "..";
            return;
        }
        bump();
        current_.text = std::string(1, c);
        switch (c) {
            case '+': current_.kind = TokKind::plus; return;
            case '-': current_.kind = TokKind::minus; return;
            case '*': current_.kind = TokKind::star; return;
            case '/': current_.kind = TokKind::slash; return;
            case '(': current_.kind = TokKind::lparen; return;
            case ')': current_.kind = TokKind::rparen; return;
            case ',': current_.kind = TokKind::comma; return;
            case ':': current_.kind = TokKind::colon; return;
            case '=': current_.kind = TokKind::equals; return;
            default:
                throw ParseError("unexpected character '" + std::string(1, c) + "'", line_,
                                 column_ - 1);
        }
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) {}

    IdentityStatement parse_statement() {
        IdentityStatement stmt;
        if (lexer_.peek().kind == TokKind::kw_forall) {
            lexer_.take();
            stmt.quantifiers.push_back(parse_binding());
            while (lexer_.peek().kind == TokKind::comma) {
                lexer_.take();
                stmt.quantifiers.push_back(parse_binding());
            }
            expect(TokKind::colon, "':'");
        }
        stmt.lhs = parse_expr();
        expect(TokKind::equals, "'='");
        stmt.rhs = parse_expr();
        if (lexer_.peek().kind != TokKind::end)
            throw error("expected end of statement, found '" + lexer_.peek().text + "'");
        validate(stmt);
        return stmt;
    }

private:
    Quantifier parse_binding() {
        Token name = expect(TokKind::ident, "quantifier variable");
        expect(TokKind::kw_in, "'in'");
        Quantifier q;
        q.var = name.text;
        q.lo = parse_signed_integer();
        expect(TokKind::dotdot, "'..'");
        q.hi = parse_signed_integer();
        if (q.lo > q.hi)
            throw ParseError("empty range: " + q.lo.str() + " > " + q.hi.str(), name.line,
                             name.column);
        return q;
    }

    BigInt parse_signed_integer() {
        bool negate = false;
        while (lexer_.peek().kind == TokKind::minus) {
            lexer_.take();
            negate = !negate;
        }
        Token t = expect(TokKind::integer, "integer");
        return negate ? BigInt(-t.value) : t.value;
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            TokKind k = lexer_.peek().kind;
            if (k != TokKind::plus && k != TokKind::minus) return e;
            lexer_.take();
            ExprPtr rhs = parse_term();
            e = Expr::binary(k == TokKind::plus ? Expr::Kind::add : Expr::Kind::sub,
                             std::move(e), std::move(rhs));
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            TokKind k = lexer_.peek().kind;
            if (k != TokKind::star && k != TokKind::slash) return e;
            lexer_.take();
            ExprPtr rhs = parse_factor();
            e = Expr::binary(k == TokKind::star ? Expr::Kind::mul : Expr::Kind::div,
                             std::move(e), std::move(rhs));
        }
    }

    ExprPtr parse_factor() {
        Token t = lexer_.take();
        switch (t.kind) {
            case TokKind::integer:
                return Expr::literal(t.value);
            case TokKind::ident:
                return Expr::variable(t.text);
            case TokKind::minus:
                return Expr::neg(parse_factor());
            case TokKind::lparen: {
                ExprPtr e = parse_expr();
                expect(TokKind::rparen, "')'");
                return e;
            }
            case TokKind::kw_floor: {
                expect(TokKind::lparen, "'('");
                ExprPtr e = parse_expr();
                expect(TokKind::rparen, "')'");
                return Expr::floor_of(std::move(e));
            }
            case TokKind::kw_root: {
                expect(TokKind::lparen, "'('");
                Token deg = expect(TokKind::integer, "root degree");
                if (deg.value < 1 || deg.value > 1000000)
                    throw ParseError("root degree must be in [1, 10^6]", deg.line, deg.column);
                expect(TokKind::comma, "','");
                ExprPtr e = parse_expr();
                expect(TokKind::rparen, "')'");
                return Expr::root_of(deg.value.convert_to<unsigned>(), std::move(e));
            }
            default:
                throw ParseError("expected an expression, found '" + t.text + "'", t.line,
                                 t.column);
        }
    }

    Token expect(TokKind kind, const std::string& what) {
        Token t = lexer_.take();
        if (t.kind != kind)
            throw ParseError("expected " + what + ", found '" + t.text + "'", t.line, t.column);
        return t;
    }

    ParseError error(const std::string& message) {
        return ParseError(message, lexer_.peek().line, lexer_.peek().column);
    }

    void validate(const IdentityStatement& stmt) {
        std::set<std::string> bound;
        for (const auto& q : stmt.quantifiers)
            if (!bound.insert(q.var).second)
                throw ParseError("variable '" + q.var + "' bound more than once", 1, 1);
        check_bound(stmt.lhs, bound);
        check_bound(stmt.rhs, bound);
    }

    void check_bound(const ExprPtr& e, const std::set<std::string>& bound) {
        if (!e) return;
        if (e->kind() == Expr::Kind::variable && !bound.count(e->name()))
            throw ParseError("unbound variable '" + e->name() + "'", 1, 1);
        check_bound(e->lhs(), bound);
        check_bound(e->rhs(), bound);
    }

    Lexer lexer_;
};

inline int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::add:
        case Expr::Kind::sub: return 1;
        case Expr::Kind::mul:
        case Expr::Kind::div: return 2;
        case Expr::Kind::neg: return 3;
        default: return 4;
    }
}

inline void pretty_expr(const ExprPtr& e, std::string& out, int parent_prec, bool right_side) {
    const int prec = precedence(e->kind());
    const bool parens = prec < parent_prec || (prec == parent_prec && right_side);
    if (parens) out += '(';
    switch (e->kind()) {
        case Expr::Kind::literal:
            out += e->literal_value().str();
            break;
        case Expr::Kind::variable:
            out += e->name();
            break;
        case Expr::Kind::add:
        case Expr::Kind::sub:
        case Expr::Kind::mul:
        case Expr::Kind::div: {
            const char* op = e->kind() == Expr::Kind::add   ? " + "
                             : e->kind() == Expr::Kind::sub ? " - "
                             : e->kind() == Expr::Kind::mul ? "*"
                                                            : "/";
            pretty_expr(e->lhs(), out, prec, false);
            out += op;
            pretty_expr(e->rhs(), out, prec, true);
            break;
        }
        case Expr::Kind::neg:
            out += '-';
            pretty_expr(e->lhs(), out, prec, true);
            break;
        case Expr::Kind::floor:
            out += "floor(";
            pretty_expr(e->lhs(), out, 0, false);
            out += ')';
            break;
        case Expr::Kind::root:
            out += "root(" + std::to_string(e->degree()) + ", ";
            pretty_expr(e->lhs(), out, 0, false);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace dsl_detail

inline IdentityStatement parse_statement(std::string_view src) {
    return dsl_detail::Parser(src).parse_statement();
}

inline std::string pretty(const ExprPtr& e) {
    std::string out;
    dsl_detail::pretty_expr(e, out, 0, false);
    return out;
}

inline std::string pretty(const IdentityStatement& stmt) {
    std::string out;
    if (!stmt.quantifiers.empty()) {
        out += "forall ";
        for (std::size_t i = 0; i < stmt.quantifiers.size(); ++i) {
            if (i) out += ", ";
            const auto& q = stmt.quantifiers[i];
            out += q.var + " in " + q.lo.str() + ".." + q.hi.str();
        }
        out += " : ";
    }
    out += pretty(stmt.lhs) + " = " + pretty(stmt.rhs);
    return out;
}

inline bool statement_equal(const IdentityStatement& a, const IdentityStatement& b) {
    if (a.quantifiers.size() != b.quantifiers.size()) return false;
    for (std::size_t i = 0; i < a.quantifiers.size(); ++i) {
        const auto& qa = a.quantifiers[i];
        const auto& qb = b.quantifiers[i];
        if (qa.var != qb.var || qa.lo != qb.lo || qa.hi != qb.hi) return false;
    }
    return expr_equal(a.lhs, b.lhs) && expr_equal(a.rhs, b.rhs);
}

// Statement files: UTF-8 text, one statement per non-blank line,
// '#' starts a comment running to end of line.
inline std::vector<IdentityStatement> parse_statement_file(std::string_view text) {
    std::vector<IdentityStatement> out;
    std::size_t start = 0;
    int line_no = 1;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        std::string_view stripped = line.substr(0, line.find('#'));
        bool blank = stripped.find_first_not_of(" \t\r") == std::string_view::npos;
        if (!blank) {
            try {
                out.push_back(parse_statement(stripped));
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()) + " (statement on line " +
                                     std::to_string(line_no) + ")",
                                 line_no, e.column());
            }
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
        ++line_no;
    }
    return out;
}

// Values the evaluator passes around: exact rationals, or radical sums for
// the decidable irrational fragment. A radical sum that is actually
// rational is demoted eagerly, so Rational-ness is visible in the type.
using EvalValue = std::variant<Rational, RadicalSum>;

using Env = std::map<std::string, BigInt>;

namespace dsl_detail {

inline EvalValue demote(RadicalSum s) {
    if (auto q = rational_value(s)) return *q;
    return EvalValue(std::move(s));
}

inline RadicalSum as_sum(const EvalValue& v) {
    if (std::holds_alternative<Rational>(v)) return RadicalSum(std::get<Rational>(v));
    return std::get<RadicalSum>(v);
}

}  // namespace dsl_detail

inline EvalValue eval_expr(const ExprPtr& e, const Env& env, const RefineOptions& opts = {}) {
    using Kind = Expr::Kind;
    switch (e->kind()) {
        case Kind::literal:
            return Rational(e->literal_value());
        case Kind::variable: {
            auto it = env.find(e->name());
            if (it == env.end()) throw DomainError("unbound variable '" + e->name() + "'");
            return Rational(it->second);
        }
        case Kind::neg: {
            EvalValue v = eval_expr(e->lhs(), env, opts);
            if (std::holds_alternative<Rational>(v)) return Rational(-std::get<Rational>(v));
            return EvalValue(-std::get<RadicalSum>(v));
        }
        case Kind::add:
        case Kind::sub: {
            EvalValue a = eval_expr(e->lhs(), env, opts);
            EvalValue b = eval_expr(e->rhs(), env, opts);
            if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b)) {
                const Rational& qa = std::get<Rational>(a);
                const Rational& qb = std::get<Rational>(b);
                return e->kind() == Kind::add ? Rational(qa + qb) : Rational(qa - qb);
            }
            RadicalSum sa = dsl_detail::as_sum(a);
            RadicalSum sb = dsl_detail::as_sum(b);
            return dsl_detail::demote(e->kind() == Kind::add ? sa + sb : sa - sb);
        }
        case Kind::mul: {
            EvalValue a = eval_expr(e->lhs(), env, opts);
            EvalValue b = eval_expr(e->rhs(), env, opts);
            if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
                return Rational(std::get<Rational>(a) * std::get<Rational>(b));
            if (std::holds_alternative<Rational>(a))
                return dsl_detail::demote(std::get<RadicalSum>(b) * std::get<Rational>(a));
            if (std::holds_alternative<Rational>(b))
                return dsl_detail::demote(std::get<RadicalSum>(a) * std::get<Rational>(b));
            throw UnsupportedError("product of two irrational values is not supported");
        }
        case Kind::div: {
            EvalValue a = eval_expr(e->lhs(), env, opts);
            EvalValue b = eval_expr(e->rhs(), env, opts);
            if (!std::holds_alternative<Rational>(b))
                throw UnsupportedError("division by an irrational value is not supported");
            const Rational& qb = std::get<Rational>(b);
            if (qb == 0) throw DomainError("division by zero");
            if (std::holds_alternative<Rational>(a)) return Rational(std::get<Rational>(a) / qb);
            return dsl_detail::demote(std::get<RadicalSum>(a) / qb);
        }
        case Kind::floor: {
            EvalValue v = eval_expr(e->lhs(), env, opts);
            if (std::holds_alternative<Rational>(v))
                return Rational(floor_rat(std::get<Rational>(v)));
            return Rational(floor_radical_sum(std::get<RadicalSum>(v), opts));
        }
        case Kind::root: {
            EvalValue v = eval_expr(e->lhs(), env, opts);
            if (!std::holds_alternative<Rational>(v))
                throw UnsupportedError("nested radicals are not supported");
            const Rational& q = std::get<Rational>(v);
            if (q < 0) throw DomainError("negative radicand");
            return dsl_detail::demote(
                RadicalSum(std::vector<RadicalTerm>{normalize_radical(Rational(1), q, e->degree())}));
        }
    }
    throw DomainError("eval_expr: unreachable");
}

}  // namespace floorforge
