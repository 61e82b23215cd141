#include "semcom/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

enum class Tok {
    Number,       // integer or decimal, optional exponent
    Ident,        // lowercase-initial identifier
    Var,          // uppercase-initial identifier
    ColonColon,   // ::
    If,           // :-
    Comma,
    LParen,
    RParen,
    Dot,          // clause terminator
    Compare,      // >= > <= < == !=
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    bool is_integer = false;
    std::int64_t int_value = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        skip_space_and_comments();
        current_ = Token{};
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= src_.size()) {
            current_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && pos_ + 1 < src_.size() &&
                                                            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            lex_identifier();
            return;
        }
        switch (c) {
            case ':':
                if (at(pos_ + 1) == ':') { take(2, Tok::ColonColon, "::"); return; }
                if (at(pos_ + 1) == '-') { take(2, Tok::If, ":-"); return; }
                fail("unexpected ':'");
            case ',': take(1, Tok::Comma, ","); return;
            case '(': take(1, Tok::LParen, "("); return;
            case ')': take(1, Tok::RParen, ")"); return;
            case '.': take(1, Tok::Dot, "."); return;
            case '>':
                if (at(pos_ + 1) == '=') { take(2, Tok::Compare, ">="); return; }
                take(1, Tok::Compare, ">");
                return;
            case '<':
                if (at(pos_ + 1) == '=') { take(2, Tok::Compare, "<="); return; }
                take(1, Tok::Compare, "<");
                return;
            case '=':
                if (at(pos_ + 1) == '=') { take(2, Tok::Compare, "=="); return; }
                fail("expected '==' ");
            case '!':
                if (at(pos_ + 1) == '=') { take(2, Tok::Compare, "!="); return; }
                fail("expected '!='");
            default:
                fail(std::string("unexpected character '") + c + "'");
        }
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                column_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                ++column_;
            } else {
                break;
            }
        }
    }

    char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

    void take(std::size_t n, Tok kind, const char* text) {
        current_.kind = kind;
        current_.text = text;
        pos_ += n;
        column_ += n;
    }

    void lex_number() {
        std::size_t start = pos_;
        if (src_[pos_] == '-') ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        bool is_int = true;
        // '.' is part of the number only when a digit follows; otherwise it
        // terminates the clause (the usual Prolog "75." ambiguity).
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
            is_int = false;
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
            if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
                is_int = false;
                pos_ = mark;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        std::string_view text = src_.substr(start, pos_ - start);
        current_.kind = Tok::Number;
        current_.text = std::string(text);
        current_.is_integer = is_int;
        if (is_int) {
            std::from_chars(text.data(), text.data() + text.size(), current_.int_value);
            current_.number = static_cast<double>(current_.int_value);
        } else {
            std::from_chars(text.data(), text.data() + text.size(), current_.number);
        }
        column_ += pos_ - start;
    }

    void lex_identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string_view text = src_.substr(start, pos_ - start);
        char first = text[0];
        current_.text = std::string(text);
        if (std::islower(static_cast<unsigned char>(first))) {
            current_.kind = Tok::Ident;
        } else if (std::isupper(static_cast<unsigned char>(first))) {
            current_.kind = Tok::Var;
        } else {
            fail("identifiers must start with a letter (got '" + std::string(text) + "')");
        }
        column_ += pos_ - start;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, column_); }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    Token current_;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Program parse_program() {
        Program p;
        while (lex_.peek().kind != Tok::End) p.clauses.push_back(parse_clause());
        return p;
    }

    Clause parse_clause() {
        Clause c;
        if (lex_.peek().kind == Tok::Number) {
            Token prob = lex_.next();
            expect(Tok::ColonColon, "'::' after probability");
            if (prob.number < 0.0 || prob.number > 1.0) throw ProbabilityRangeError(prob.number);
            c.prob = prob.number;
        }
        c.head = parse_atom();
        if (lex_.peek().kind == Tok::If) {
            lex_.next();
            c.body.push_back(parse_literal());
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                c.body.push_back(parse_literal());
            }
        }
        expect(Tok::Dot, "'.' at end of clause");
        check_range_restriction(c);
        return c;
    }

    Atom parse_query_atom() {
        Atom a = parse_atom();
        if (lex_.peek().kind == Tok::Dot) lex_.next();
        expect(Tok::End, "end of input after atom");
        return a;
    }

    bool at_end() { return lex_.peek().kind == Tok::End; }

  private:
    Atom parse_atom() {
        Token name = expect(Tok::Ident, "predicate name");
        Atom a;
        a.predicate = name.text;
        if (lex_.peek().kind == Tok::LParen) {
            lex_.next();
            a.args.push_back(parse_term());
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                a.args.push_back(parse_term());
            }
            expect(Tok::RParen, "')'");
        }
        return a;
    }

    Term parse_term() {
        Token t = lex_.next();
        switch (t.kind) {
            case Tok::Ident: return Term::constant(t.text);
            case Tok::Var: return Term::variable(t.text);
            case Tok::Number:
                if (!t.is_integer)
                    throw SyntaxError("only integer terms are supported", t.line, t.column);
                return Term::integer(t.int_value);
            default:
                throw SyntaxError("expected a term, got '" + t.text + "'", t.line, t.column);
        }
    }

    BodyLiteral parse_literal() {
        // A literal is an atom unless a comparison operator follows the
        // first term, as in "M >= S" or "75 >= S".
        if (lex_.peek().kind == Tok::Var || lex_.peek().kind == Tok::Number) {
            Term lhs = parse_term();
            return finish_comparison(lhs);
        }
        Atom a = parse_atom();
        if (lex_.peek().kind == Tok::Compare && a.args.empty())
            return finish_comparison(Term::constant(a.predicate));
        return a;
    }

    Comparison finish_comparison(Term lhs) {
        Token op = expect(Tok::Compare, "comparison operator");
        Comparison cmp;
        cmp.lhs = std::move(lhs);
        cmp.rhs = parse_term();
        if (op.text == ">=") cmp.op = CompareOp::Ge;
        else if (op.text == ">") cmp.op = CompareOp::Gt;
        else if (op.text == "<=") cmp.op = CompareOp::Le;
        else if (op.text == "<") cmp.op = CompareOp::Lt;
        else if (op.text == "==") cmp.op = CompareOp::Eq;
        else cmp.op = CompareOp::Ne;
        return cmp;
    }

    static void collect_variables(const Atom& a, std::set<std::string>& out) {
        for (const auto& t : a.args)
            if (t.kind == Term::Kind::Variable) out.insert(t.name);
    }

    // Every variable in the head or in a comparison must occur in a body atom.
    static void check_range_restriction(const Clause& c) {
        std::set<std::string> body_vars;
        for (const auto& lit : c.body)
            if (const auto* a = std::get_if<Atom>(&lit)) collect_variables(*a, body_vars);

        std::set<std::string> restricted;
        collect_variables(c.head, restricted);
        for (const auto& lit : c.body) {
            if (const auto* cmp = std::get_if<Comparison>(&lit)) {
                if (cmp->lhs.kind == Term::Kind::Variable) restricted.insert(cmp->lhs.name);
                if (cmp->rhs.kind == Term::Kind::Variable) restricted.insert(cmp->rhs.name);
            }
        }
        for (const auto& v : restricted)
            if (!body_vars.count(v)) throw RangeRestrictionError(v);
    }

    Token expect(Tok kind, const char* what) {
        Token t = lex_.next();
        if (t.kind != kind)
            throw SyntaxError("expected " + std::string(what) + ", got '" + t.text + "'", t.line, t.column);
        return t;
    }

    Lexer lex_;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).parse_program(); }

Clause parse_clause(std::string_view text) {
    Parser p(text);
    Clause c = p.parse_clause();
    if (!p.at_end()) throw SyntaxError("expected a single clause", 1, 1);
    return c;
}

Atom parse_atom(std::string_view text) { return Parser(text).parse_query_atom(); }

}  // namespace semcom
