#include "rpstl/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

namespace rpstl {

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }

    Token next() {
        Token t = cur_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        cur_ = Token{Tok::End, "", 0.0, line_, col_};
        if (pos_ >= text_.size()) return;
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                bump();
            cur_.kind = Tok::Ident;
            cur_.text = text_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                    text_[pos_] == 'e' || text_[pos_] == 'E' ||
                    ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
                     (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
                bump();
            cur_.kind = Tok::Number;
            cur_.text = text_.substr(start, pos_ - start);
            cur_.value = std::strtod(cur_.text.c_str(), nullptr);
            return;
        }
        if (c == '>' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
            cur_.kind = Tok::Symbol;
            cur_.text = ">=";
            bump();
            bump();
            return;
        }
        static const std::string singles = "!&|(){}[],;:<-";
        if (singles.find(c) != std::string::npos) {
            cur_.kind = Tok::Symbol;
            cur_.text = std::string(1, c);
            bump();
            return;
        }
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }

    void bump() {
        ++pos_;
        ++col_;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
};

class Parser {
  public:
    Parser(const std::string& text, const std::vector<int>& path_counts)
        : lex_(text), path_counts_(path_counts) {}

    FormulaPtr run() {
        FormulaPtr f = parse_until();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End) throw ParseError(t.line, t.col, "trailing input: '" + t.text + "'");
        return f;
    }

  private:
    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }

    Token expect_symbol(const std::string& s) {
        Token t = lex_.next();
        if (t.kind != Tok::Symbol || t.text != s)
            fail(t, "expected '" + s + "', found '" + t.text + "'");
        return t;
    }

    bool peek_symbol(const std::string& s) {
        return lex_.peek().kind == Tok::Symbol && lex_.peek().text == s;
    }

    double expect_number() {
        Token t = lex_.next();
        if (t.kind != Tok::Number) fail(t, "expected a number, found '" + t.text + "'");
        return t.value;
    }

    int expect_int() {
        Token t = lex_.next();
        if (t.kind != Tok::Number || t.value != static_cast<int>(t.value))
            fail(t, "expected an integer, found '" + t.text + "'");
        return static_cast<int>(t.value);
    }

    std::pair<double, double> parse_window() {
        Token open = expect_symbol("[");
        double a = expect_number();
        expect_symbol(",");
        double b = expect_number();
        expect_symbol("]");
        if (a > b) fail(open, "temporal interval has a > b");
        return {a, b};
    }

    FormulaPtr parse_until() {
        FormulaPtr left = parse_or();
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "U") {
            lex_.next();
            auto [a, b] = parse_window();
            FormulaPtr right = parse_until();  // right-associative
            return f_until(a, b, left, right);
        }
        return left;
    }

    FormulaPtr parse_or() {
        std::vector<FormulaPtr> cs{parse_and()};
        while (peek_symbol("|")) {
            lex_.next();
            cs.push_back(parse_and());
        }
        return f_or(std::move(cs));
    }

    FormulaPtr parse_and() {
        std::vector<FormulaPtr> cs{parse_unary()};
        while (peek_symbol("&")) {
            lex_.next();
            cs.push_back(parse_unary());
        }
        return f_and(std::move(cs));
    }

    FormulaPtr parse_unary() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Symbol && t.text == "!") {
            lex_.next();
            return f_not(parse_unary());
        }
        if (t.kind == Tok::Ident && (t.text == "F" || t.text == "G")) {
            bool eventually = t.text == "F";
            lex_.next();
            auto [a, b] = parse_window();
            FormulaPtr child = parse_unary();
            return eventually ? f_eventually(a, b, child) : f_always(a, b, child);
        }
        return parse_atom();
    }

    FormulaPtr parse_atom() {
        Token t = lex_.next();
        if (t.kind == Tok::Symbol && t.text == "(") {
            FormulaPtr f = parse_until();
            expect_symbol(")");
            return f;
        }
        if (t.kind == Tok::Ident && t.text == "true") return f_true();
        if (t.kind == Tok::Ident && t.text == "false") return f_false();
        if (t.kind == Tok::Ident && t.text == "count") return parse_count(t);
        if (t.kind == Tok::Ident && t.text == "prog") return parse_pred(t);
        fail(t, "expected a formula, found '" + t.text + "'");
    }

    FormulaPtr parse_count(const Token& at) {
        expect_symbol("(");
        int m = expect_int();
        expect_symbol(";");
        std::vector<FormulaPtr> cs{parse_until()};
        while (peek_symbol(",")) {
            lex_.next();
            cs.push_back(parse_until());
        }
        expect_symbol(")");
        if (m < 1 || m > static_cast<int>(cs.size()))
            fail(at, "count arity: need 1 <= m <= " + std::to_string(cs.size()) + ", got " +
                         std::to_string(m));
        return f_count(std::move(cs), m);
    }

    double parse_coef() {
        Token t = lex_.next();
        bool negative = false;
        if (t.kind == Tok::Symbol && t.text == "-") {
            negative = true;
            t = lex_.next();
        }
        if (t.kind == Tok::Ident && t.text == "INF") return negative ? -kInf : kInf;
        if (t.kind != Tok::Number) fail(t, "expected a coefficient, found '" + t.text + "'");
        return negative ? -t.value : t.value;
    }

    FormulaPtr parse_pred(const Token& at) {
        expect_symbol("(");
        int robot = expect_int();
        expect_symbol(")");
        if (robot < 1 || robot > static_cast<int>(path_counts_.size()))
            fail(at, "unknown robot " + std::to_string(robot));
        const int m_paths = path_counts_[robot - 1];

        Token op = lex_.next();
        bool geq;
        if (op.kind == Tok::Symbol && op.text == ">=")
            geq = true;
        else if (op.kind == Tok::Symbol && op.text == "<")
            geq = false;
        else
            fail(op, "expected '>=' or '<', found '" + op.text + "'");

        expect_symbol("{");
        std::map<int, double> entries;
        bool has_default = false;
        double default_coef = 0.0;
        while (true) {
            Token key = lex_.next();
            if (key.kind == Tok::Ident && key.text == "default") {
                expect_symbol(":");
                default_coef = parse_coef();
                has_default = true;
            } else if (key.kind == Tok::Number && key.value == static_cast<int>(key.value)) {
                int j = static_cast<int>(key.value);
                if (j < 1 || j > m_paths)
                    fail(key, "path index " + std::to_string(j) + " out of range for robot " +
                                  std::to_string(robot) + " (M=" + std::to_string(m_paths) + ")");
                if (entries.count(j - 1)) fail(key, "duplicate path index " + std::to_string(j));
                expect_symbol(":");
                entries[j - 1] = parse_coef();
            } else {
                fail(key, "expected a path index or 'default', found '" + key.text + "'");
            }
            if (peek_symbol(",")) {
                lex_.next();
                continue;
            }
            break;
        }
        expect_symbol("}");

        std::vector<double> coeffs(m_paths, 0.0);
        for (int j = 0; j < m_paths; ++j) {
            if (auto it = entries.find(j); it != entries.end()) {
                coeffs[j] = it->second;
            } else if (has_default) {
                coeffs[j] = default_coef;
            } else if (geq) {
                coeffs[j] = kInf;  // unselected paths make a bare Pred vacuously false
            } else {
                fail(at, "prog(..) < {..}: unlisted path indices need an explicit default");
            }
        }
        return geq ? f_pred(robot - 1, std::move(coeffs)) : f_negpred(robot - 1, std::move(coeffs));
    }

    Lexer lex_;
    const std::vector<int>& path_counts_;
};

}  // namespace

FormulaPtr parse(const std::string& text, const std::vector<int>& path_counts) {
    return Parser(text, path_counts).run();
}

}  // namespace rpstl
