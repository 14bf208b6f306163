#include "proofkit/syntax.hpp"

#include <cctype>
#include <vector>

namespace proofkit {

namespace {

enum class Tok {
    Ident, LParen, RParen, LAngle, RAngle, Comma, Semi, LBrace, RBrace, LBrack, RBrack,
    Colon, FatArrow, Arrow, Amp, Bar, Dot, Proj1, Proj2, End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

struct Lexer {
    const std::string& s;
    std::size_t i = 0;
    std::vector<Token> out;

    [[noreturn]] void fail(const std::string& msg) {
        throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(i));
    }

    bool starts(const char* lit) const { return s.compare(i, std::char_traits<char>::length(lit), lit) == 0; }

    void push(Tok k, std::string text, std::size_t len) {
        out.push_back({k, std::move(text), i});
        i += len;
    }

    std::vector<Token> run() {
        // Multi-byte spellings first.
        static const std::vector<std::pair<const char*, std::pair<Tok, const char*>>> unicode = {
            {"⊃", {Tok::Arrow, "->"}}, {"→", {Tok::Arrow, "->"}},  {"∧", {Tok::Amp, "&"}},
            {"∨", {Tok::Bar, "|"}},    {"⊥", {Tok::Ident, "bot"}}, {"∀", {Tok::Ident, "forall"}},
            {"λ", {Tok::Ident, "fun"}}, {"Λ", {Tok::Ident, "tfun"}}, {"⟨", {Tok::LAngle, "<"}},
            {"⟩", {Tok::RAngle, ">"}},
        };
        while (i < s.size()) {
            unsigned char c = static_cast<unsigned char>(s[i]);
            if (std::isspace(c)) {
                ++i;
                continue;
            }
            if (c == '#') {
                while (i < s.size() && s[i] != '\n') ++i;
                continue;
            }
            bool matched = false;
            for (const auto& [lit, tok] : unicode) {
                if (starts(lit)) {
                    push(tok.first, tok.second, std::char_traits<char>::length(lit));
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
            if (starts("=>")) { push(Tok::FatArrow, "=>", 2); continue; }
            if (starts("->")) { push(Tok::Arrow, "->", 2); continue; }
            if (c == '.') {
                if (i + 1 < s.size() && (s[i + 1] == '1' || s[i + 1] == '2') &&
                    (i + 2 >= s.size() || !ident_char(static_cast<unsigned char>(s[i + 2])))) {
                    push(s[i + 1] == '1' ? Tok::Proj1 : Tok::Proj2, s.substr(i, 2), 2);
                } else {
                    push(Tok::Dot, ".", 1);
                }
                continue;
            }
            if (ident_start(c)) {
                std::size_t j = i;
                while (j < s.size() && ident_char(static_cast<unsigned char>(s[j]))) ++j;
                push(Tok::Ident, s.substr(i, j - i), j - i);
                continue;
            }
            switch (c) {
            case '(': push(Tok::LParen, "(", 1); continue;
            case ')': push(Tok::RParen, ")", 1); continue;
            case '<': push(Tok::LAngle, "<", 1); continue;
            case '>': push(Tok::RAngle, ">", 1); continue;
            case ',': push(Tok::Comma, ",", 1); continue;
            case ';': push(Tok::Semi, ";", 1); continue;
            case '{': push(Tok::LBrace, "{", 1); continue;
            case '}': push(Tok::RBrace, "}", 1); continue;
            case '[': push(Tok::LBrack, "[", 1); continue;
            case ']': push(Tok::RBrack, "]", 1); continue;
            case ':': push(Tok::Colon, ":", 1); continue;
            case '&': push(Tok::Amp, "&", 1); continue;
            case '|': push(Tok::Bar, "|", 1); continue;
            default: fail(std::string("unexpected character '") + s[i] + "'");
            }
        }
        out.push_back({Tok::End, "", s.size()});
        return out;
    }
};

bool is_keyword(const std::string& w) {
    static const char* kws[] = {"fun", "tfun", "case", "of", "abort", "in1", "in2", "forall", "bot"};
    for (const char* k : kws)
        if (w == k) return true;
    return false;
}

struct Parser {
    std::vector<Token> toks;
    std::size_t k = 0;

    const Token& peek() const { return toks[k]; }
    bool at(Tok t) const { return toks[k].kind == t; }
    bool at_word(const char* w) const { return at(Tok::Ident) && toks[k].text == w; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw Error(ErrorKind::ParseError, msg + ", found " + found + " at offset " + std::to_string(t.offset));
    }

    void expect(Tok t, const char* what) {
        if (!at(t)) fail(std::string("expected ") + what);
        ++k;
    }

    void expect_word(const char* w) {
        if (!at_word(w)) fail(std::string("expected '") + w + "'");
        ++k;
    }

    std::string name() {
        if (!at(Tok::Ident) || is_keyword(peek().text)) fail("expected identifier");
        return toks[k++].text;
    }

    FormulaPtr formula() {
        if (at_word("forall")) {
            ++k;
            std::string x = name();
            expect(Tok::Dot, "'.'");
            return fall(x, formula());
        }
        FormulaPtr l = or_formula();
        if (at(Tok::Arrow)) {
            ++k;
            return fimp(l, formula());
        }
        return l;
    }

    FormulaPtr or_formula() {
        FormulaPtr l = and_formula();
        if (at(Tok::Bar)) {
            ++k;
            return f_or(l, or_formula());
        }
        return l;
    }

    FormulaPtr and_formula() {
        FormulaPtr l = atom_formula();
        if (at(Tok::Amp)) {
            ++k;
            return fand(l, and_formula());
        }
        return l;
    }

    FormulaPtr atom_formula() {
        if (at(Tok::LParen)) {
            ++k;
            FormulaPtr f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (at_word("bot")) {
            ++k;
            return fbot();
        }
        if (at_word("forall")) return formula();
        return fvar(name());
    }

    // lambda binders take either '=>' or '.'
    void binder_separator() {
        if (at(Tok::Dot)) {
            ++k;
            return;
        }
        expect(Tok::FatArrow, "'=>'");
    }

    TermPtr term() {
        if (at_word("fun")) {
            ++k;
            std::string x = name();
            expect(Tok::Colon, "':'");
            FormulaPtr a = formula();
            binder_separator();
            return lam(x, a, term());
        }
        if (at_word("tfun")) {
            ++k;
            std::string x = name();
            binder_separator();
            return tylam(x, term());
        }
        if (at_word("case")) {
            ++k;
            TermPtr m = term();
            expect_word("of");
            expect(Tok::LBrace, "'{'");
            std::string x = name();
            expect(Tok::Colon, "':'");
            FormulaPtr a = formula();
            expect(Tok::FatArrow, "'=>'");
            TermPtr p = term();
            expect(Tok::Semi, "';'");
            std::string y = name();
            expect(Tok::Colon, "':'");
            FormulaPtr b = formula();
            expect(Tok::FatArrow, "'=>'");
            TermPtr q = term();
            expect(Tok::RBrace, "'}'");
            expect(Tok::Colon, "':'");
            FormulaPtr c = formula();
            return case_of(m, x, a, p, y, b, q, c);
        }
        return application();
    }

    bool prefix_start() const {
        if (at(Tok::LParen) || at(Tok::LAngle)) return true;
        if (!at(Tok::Ident)) return false;
        const std::string& w = peek().text;
        return !is_keyword(w) || w == "abort" || w == "in1" || w == "in2";
    }

    TermPtr application() {
        TermPtr head = prefix();
        while (true) {
            if (at(Tok::LBrack)) {
                ++k;
                FormulaPtr b = formula();
                expect(Tok::RBrack, "']'");
                head = tyapp(head, b);
            } else if (prefix_start()) {
                head = app(head, prefix());
            } else {
                return head;
            }
        }
    }

    FormulaPtr bracket_formula() {
        expect(Tok::LBrack, "'['");
        FormulaPtr f = formula();
        expect(Tok::RBrack, "']'");
        return f;
    }

    TermPtr prefix() {
        if (at_word("abort")) {
            ++k;
            FormulaPtr c = bracket_formula();
            return abort_to(prefix(), c);
        }
        if (at_word("in1") || at_word("in2")) {
            int i = peek().text == "in1" ? 1 : 2;
            ++k;
            std::size_t where = k;
            FormulaPtr f = bracket_formula();
            if (f->kind != Formula::Kind::Or) {
                k = where;
                fail("injection annotation must be a disjunction A|B");
            }
            return inj(i, prefix(), f->left, f->right);
        }
        return postfix();
    }

    TermPtr postfix() {
        TermPtr m = atom();
        while (at(Tok::Proj1) || at(Tok::Proj2)) {
            m = proj(at(Tok::Proj1) ? 1 : 2, m);
            ++k;
        }
        return m;
    }

    TermPtr atom() {
        if (at(Tok::LParen)) {
            ++k;
            TermPtr m = term();
            expect(Tok::RParen, "')'");
            return m;
        }
        if (at(Tok::LAngle)) {
            ++k;
            TermPtr l = term();
            expect(Tok::Comma, "','");
            TermPtr r = term();
            expect(Tok::RAngle, "'>'");
            return pair(l, r);
        }
        return var(name());
    }
};

Parser make_parser(const std::string& text) {
    Lexer lx{text, 0, {}};
    return Parser{lx.run()};
}

// Formula printing levels: 0 implication/forall, 1 disjunction, 2 conjunction, 3 atom.
std::string fmt(const FormulaPtr& a, int need) {
    std::string s;
    int level = 3;
    switch (a->kind) {
    case Formula::Kind::Var: return a->name;
    case Formula::Kind::Bot: return "bot";
    case Formula::Kind::Imp:
        level = 0;
        s = fmt(a->left, 1) + " -> " + fmt(a->right, 0);
        break;
    case Formula::Kind::Or:
        level = 1;
        s = fmt(a->left, 2) + " | " + fmt(a->right, 1);
        break;
    case Formula::Kind::And:
        level = 2;
        s = fmt(a->left, 3) + " & " + fmt(a->right, 2);
        break;
    case Formula::Kind::Forall:
        level = 0;
        s = "forall " + a->name + ". " + fmt(a->left, 0);
        break;
    }
    return level < need ? "(" + s + ")" : s;
}

// Term printing levels: 0 binders and case, 1 application, 2 abort/injection,
// 3 projection, 4 atoms.
std::string pt(const TermPtr& m, int need) {
    using K = Term::Kind;
    std::string s;
    int level = 4;
    switch (m->kind) {
    case K::Var: return m->x;
    case K::Pair: return "<" + pt(m->a, 0) + ", " + pt(m->b, 0) + ">";
    case K::Lam:
        level = 0;
        s = "fun " + m->x + ":" + fmt(m->ty, 0) + " => " + pt(m->a, 0);
        break;
    case K::TyLam:
        level = 0;
        s = "tfun " + m->x + " => " + pt(m->a, 0);
        break;
    case K::Case:
        level = 0;
        s = "case " + pt(m->a, 0) + " of { " + m->x + ":" + fmt(m->ty, 0) + " => " + pt(m->b, 0) + " ; " + m->y +
            ":" + fmt(m->ty2, 0) + " => " + pt(m->c, 0) + " } : " + fmt(m->ty3, 0);
        break;
    case K::App:
        level = 1;
        s = pt(m->a, 1) + " " + pt(m->b, 3);
        break;
    case K::TyApp:
        level = 1;
        s = pt(m->a, 1) + " [" + fmt(m->ty, 0) + "]";
        break;
    case K::Abort:
        level = 2;
        s = "abort[" + fmt(m->ty, 0) + "] " + pt(m->a, 2);
        break;
    case K::Inj:
        level = 2;
        s = "in" + std::to_string(m->index) + "[" + fmt(f_or(m->ty, m->ty2), 0) + "] " + pt(m->a, 2);
        break;
    case K::Proj:
        level = 3;
        s = pt(m->a, 3) + "." + std::to_string(m->index);
        break;
    }
    return level < need ? "(" + s + ")" : s;
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser p = make_parser(text);
    FormulaPtr f = p.formula();
    if (!p.at(Tok::End)) p.fail("trailing input after formula");
    return f;
}

TermPtr parse_term(const std::string& text) {
    Parser p = make_parser(text);
    TermPtr m = p.term();
    if (!p.at(Tok::End)) p.fail("trailing input after term");
    return m;
}

std::pair<std::string, FormulaPtr> parse_binding(const std::string& text) {
    Parser p = make_parser(text);
    std::string x = p.name();
    p.expect(Tok::Colon, "':'");
    FormulaPtr f = p.formula();
    if (!p.at(Tok::End)) p.fail("trailing input after binding");
    return {x, f};
}

std::string print(const FormulaPtr& a) { return fmt(a, 0); }
std::string print(const TermPtr& m) { return pt(m, 0); }

}  // namespace proofkit
