#include "sgl/syntax.hpp"

#include "sgl/error.hpp"

#include <cctype>
#include <vector>

namespace sgl {

namespace game {

namespace {
Game make(GameKind kind, Game left = nullptr, Game right = nullptr) {
    return std::make_shared<const GameNode>(GameNode{kind, {}, std::move(left), std::move(right), nullptr});
}
}  // namespace

Game prim(std::string name) {
    if (!is_identifier(name)) throw Error("invalid game name '" + name + "'");
    return std::make_shared<const GameNode>(GameNode{GameKind::Prim, std::move(name), nullptr, nullptr, nullptr});
}
Game eps() { return make(GameKind::Eps); }
Game dual(Game g) { return make(GameKind::Dual, std::move(g)); }
Game choice(Game a, Game b) { return make(GameKind::ChoiceA, std::move(a), std::move(b)); }
Game demonic_choice(Game a, Game b) { return make(GameKind::ChoiceD, std::move(a), std::move(b)); }
Game seq(Game a, Game b) { return make(GameKind::Seq, std::move(a), std::move(b)); }
Game star(Game g) { return make(GameKind::StarA, std::move(g)); }
Game demonic_star(Game g) { return make(GameKind::StarD, std::move(g)); }
Game test(Formula f) {
    return std::make_shared<const GameNode>(GameNode{GameKind::TestPos, {}, nullptr, nullptr, std::move(f)});
}
Game test_neg(Formula f) {
    return std::make_shared<const GameNode>(GameNode{GameKind::TestNeg, {}, nullptr, nullptr, std::move(f)});
}

}  // namespace game

namespace formula {

Formula top() { return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Top, {}, nullptr, nullptr, nullptr, 0}); }

Formula atom(std::string name) {
    if (!is_identifier(name)) throw Error("invalid atom name '" + name + "'");
    return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::Atom, std::move(name), nullptr, nullptr, nullptr, 0});
}

Formula conj(Formula a, Formula b) {
    return std::make_shared<const FormulaNode>(FormulaNode{FormulaKind::And, {}, std::move(a), std::move(b), nullptr, 0});
}

Formula diamond(Game g, Rational q, Formula body) {
    q.canonicalize();
    if (q < 0 || q >= 1) throw Error("modal bound " + format_rational(q) + " outside [0,1)");
    return std::make_shared<const FormulaNode>(
        FormulaNode{FormulaKind::Diamond, {}, std::move(body), nullptr, std::move(g), std::move(q)});
}

}  // namespace formula

// ---------------------------------------------------------------------------

bool equal(const Game& a, const Game& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case GameKind::Prim: return a->name == b->name;
        case GameKind::Eps: return true;
        case GameKind::TestPos:
        case GameKind::TestNeg: return equal(a->test, b->test);
        case GameKind::Dual:
        case GameKind::StarA:
        case GameKind::StarD: return equal(a->left, b->left);
        default: return equal(a->left, b->left) && equal(a->right, b->right);
    }
}

bool equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case FormulaKind::Top: return true;
        case FormulaKind::Atom: return a->name == b->name;
        case FormulaKind::And: return equal(a->left, b->left) && equal(a->right, b->right);
        case FormulaKind::Diamond: return a->bound == b->bound && equal(a->game, b->game) && equal(a->left, b->left);
    }
    return false;
}

bool is_identifier(std::string_view name) {
    if (name.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return name != "true" && name != "eps";
}

std::size_t game_size(const Game& g) {
    switch (g->kind) {
        case GameKind::Prim:
        case GameKind::Eps:
        case GameKind::TestPos:
        case GameKind::TestNeg: return 1;
        case GameKind::Dual:
        case GameKind::StarA:
        case GameKind::StarD: return 1 + game_size(g->left);
        default: return 1 + game_size(g->left) + game_size(g->right);
    }
}

bool is_dual_free(const Game& g) {
    switch (g->kind) {
        case GameKind::Prim:
        case GameKind::Eps:
        case GameKind::TestPos:
        case GameKind::TestNeg: return true;
        case GameKind::Dual:
        case GameKind::ChoiceD:
        case GameKind::StarD: return false;
        case GameKind::StarA: return is_dual_free(g->left);
        default: return is_dual_free(g->left) && is_dual_free(g->right);
    }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(GameKind k) {
    switch (k) {
        case GameKind::ChoiceA: return 1;
        case GameKind::ChoiceD: return 2;
        case GameKind::Seq: return 3;
        case GameKind::Dual:
        case GameKind::StarA:
        case GameKind::StarD: return 4;
        default: return 5;
    }
}

void print_game(const Game& g, int min_prec, std::string& out);
void print_formula(const Formula& f, int min_prec, std::string& out);

void print_game(const Game& g, int min_prec, std::string& out) {
    const bool paren = precedence(g->kind) < min_prec;
    if (paren) out += '(';
    switch (g->kind) {
        case GameKind::Prim: out += g->name; break;
        case GameKind::Eps: out += "eps"; break;
        case GameKind::TestPos:
        case GameKind::TestNeg:
            out += '[';
            print_formula(g->test, 0, out);
            out += g->kind == GameKind::TestPos ? "]?" : "]!";
            break;
        case GameKind::Dual:
            print_game(g->left, 4, out);
            out += "^d";
            break;
        case GameKind::StarA:
            print_game(g->left, 4, out);
            out += '*';
            break;
        case GameKind::StarD:
            print_game(g->left, 4, out);
            out += '#';
            break;
        case GameKind::ChoiceA:
            print_game(g->left, 1, out);
            out += " | ";
            print_game(g->right, 2, out);
            break;
        case GameKind::ChoiceD:
            print_game(g->left, 2, out);
            out += " & ";
            print_game(g->right, 3, out);
            break;
        case GameKind::Seq:
            print_game(g->left, 3, out);
            out += ';';
            print_game(g->right, 4, out);
            break;
    }
    if (paren) out += ')';
}

void print_formula(const Formula& f, int min_prec, std::string& out) {
    const int prec = f->kind == FormulaKind::And ? 1 : 2;
    const bool paren = prec < min_prec;
    if (paren) out += '(';
    switch (f->kind) {
        case FormulaKind::Top: out += "true"; break;
        case FormulaKind::Atom: out += f->name; break;
        case FormulaKind::And:
            print_formula(f->left, 1, out);
            out += " /\\ ";
            print_formula(f->right, 2, out);
            break;
        case FormulaKind::Diamond:
            out += '<';
            print_game(f->game, 0, out);
            out += ">{" + format_rational(f->bound) + "} ";
            print_formula(f->left, 2, out);
            break;
    }
    if (paren) out += ')';
}

}  // namespace

std::string print(const Game& g) {
    std::string out;
    print_game(g, 0, out);
    return out;
}

std::string print(const Formula& f) {
    std::string out;
    print_formula(f, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok {
    Ident, True, Eps, Int, Slash, And, Lt, Gt, LBrace, RBrace, LParen, RParen,
    LBracket, TestPos, TestNeg, Bar, Amp, Semi, Star, Hash, DualMark, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> toks;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const std::size_t l = line;
        const std::size_t cl = col;
        auto push = [&](Tok k, std::size_t len) {
            toks.push_back({k, std::string(src.substr(i, len)), l, cl});
            advance(len);
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && is_ident_char(src[j])) ++j;
            const std::string word(src.substr(i, j - i));
            const Tok k = word == "true" ? Tok::True : word == "eps" ? Tok::Eps : Tok::Ident;
            push(k, j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::Int, j - i);
            continue;
        }
        const char next = i + 1 < src.size() ? src[i + 1] : '\0';
        switch (c) {
            case '/':
                if (next == '\\') push(Tok::And, 2);
                else push(Tok::Slash, 1);
                continue;
            case '<': push(Tok::Lt, 1); continue;
            case '>': push(Tok::Gt, 1); continue;
            case '{': push(Tok::LBrace, 1); continue;
            case '}': push(Tok::RBrace, 1); continue;
            case '(': push(Tok::LParen, 1); continue;
            case ')': push(Tok::RParen, 1); continue;
            case '[': push(Tok::LBracket, 1); continue;
            case ']':
                if (next == '?') push(Tok::TestPos, 2);
                else if (next == '!') push(Tok::TestNeg, 2);
                else throw ParseError("expected '?' or '!' after ']'", l, cl);
                continue;
            case '|': push(Tok::Bar, 1); continue;
            case '&': push(Tok::Amp, 1); continue;
            case ';': push(Tok::Semi, 1); continue;
            case '*': push(Tok::Star, 1); continue;
            case '#': push(Tok::Hash, 1); continue;
            case '^':
                if (next == 'd' && !(i + 2 < src.size() && is_ident_char(src[i + 2]))) {
                    push(Tok::DualMark, 2);
                    continue;
                }
                throw ParseError("expected 'd' after '^'", l, cl);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
    }
    toks.push_back({Tok::End, "", line, col});
    return toks;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Game whole_game() {
        Game g = parse_choice();
        expect(Tok::End, "end of input");
        return g;
    }

    Formula whole_formula() {
        Formula f = parse_conj();
        expect(Tok::End, "end of input");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) {
            const auto& t = peek();
            throw ParseError(std::string("expected ") + what + (t.kind == Tok::End ? ", found end of input" : ", found '" + t.text + "'"),
                             t.line, t.column);
        }
        return take();
    }

    Game parse_choice() {
        Game g = parse_demonic();
        while (accept(Tok::Bar)) g = game::choice(g, parse_demonic());
        return g;
    }

    Game parse_demonic() {
        Game g = parse_seq();
        while (accept(Tok::Amp)) g = game::demonic_choice(g, parse_seq());
        return g;
    }

    Game parse_seq() {
        Game g = parse_postfix();
        while (accept(Tok::Semi)) g = game::seq(g, parse_postfix());
        return g;
    }

    Game parse_postfix() {
        Game g = parse_primary_game();
        for (;;) {
            if (accept(Tok::DualMark)) g = game::dual(g);
            else if (accept(Tok::Star)) g = game::star(g);
            else if (accept(Tok::Hash)) g = game::demonic_star(g);
            else return g;
        }
    }

    Game parse_primary_game() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Ident: take(); return game::prim(t.text);
            case Tok::Eps: take(); return game::eps();
            case Tok::LParen: {
                take();
                Game g = parse_choice();
                expect(Tok::RParen, "')'");
                return g;
            }
            case Tok::LBracket: {
                take();
                Formula f = parse_conj();
                if (accept(Tok::TestPos)) return game::test(f);
                expect(Tok::TestNeg, "']?' or ']!'");
                return game::test_neg(f);
            }
            default:
                throw ParseError(t.kind == Tok::End ? "expected a game, found end of input"
                                                    : "expected a game, found '" + t.text + "'",
                                 t.line, t.column);
        }
    }

    Formula parse_conj() {
        Formula f = parse_unary();
        while (accept(Tok::And)) f = formula::conj(f, parse_unary());
        return f;
    }

    Formula parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::True: take(); return formula::top();
            case Tok::Ident: take(); return formula::atom(t.text);
            case Tok::LParen: {
                take();
                Formula f = parse_conj();
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::Lt: {
                take();
                Game g = parse_choice();
                expect(Tok::Gt, "'>'");
                const Token& brace = expect(Tok::LBrace, "'{'");
                Rational q = parse_bound();
                expect(Tok::RBrace, "'}'");
                if (q >= 1) throw ParseError("modal bound " + format_rational(q) + " must be below 1", brace.line, brace.column);
                Formula body = parse_unary();
                return formula::diamond(std::move(g), std::move(q), std::move(body));
            }
            default:
                throw ParseError(t.kind == Tok::End ? "expected a formula, found end of input"
                                                    : "expected a formula, found '" + t.text + "'",
                                 t.line, t.column);
        }
    }

    Rational parse_bound() {
        const Token& num = expect(Tok::Int, "an integer");
        std::string text = num.text;
        if (accept(Tok::Slash)) {
            const Token& den = expect(Tok::Int, "a positive integer");
            if (mpz_class(den.text) == 0) throw ParseError("zero denominator", den.line, den.column);
            text += "/" + den.text;
        }
        return parse_rational(text);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Game parse_game(std::string_view text) { return Parser(text).whole_game(); }
Formula parse_formula(std::string_view text) { return Parser(text).whole_formula(); }

// ---------------------------------------------------------------------------
// Head normalization

std::optional<Game> rewrite_head_once(const Game& g) {
    using game::dual;
    switch (g->kind) {
        case GameKind::Dual:
            if (g->left->kind == GameKind::Dual) return g->left->left;
            return std::nullopt;
        case GameKind::ChoiceD: return dual(game::choice(dual(g->left), dual(g->right)));
        case GameKind::StarD: return dual(game::star(dual(g->left)));
        case GameKind::StarA: return game::seq(g, game::eps());
        case GameKind::Seq: {
            const Game& a = g->left;
            const Game& c = g->right;
            switch (a->kind) {
                case GameKind::Seq: return game::seq(a->left, game::seq(a->right, c));
                case GameKind::ChoiceA: return game::choice(game::seq(a->left, c), game::seq(a->right, c));
                case GameKind::Dual: return dual(game::seq(a->left, dual(c)));
                case GameKind::ChoiceD:
                case GameKind::StarD: return game::seq(*rewrite_head_once(a), c);
                default: return std::nullopt;
            }
        }
        default: return std::nullopt;
    }
}

Game normalize_head(const Game& g) {
    Game cur = g;
    while (auto next = rewrite_head_once(cur)) cur = std::move(*next);
    return cur;
}

}  // namespace sgl
