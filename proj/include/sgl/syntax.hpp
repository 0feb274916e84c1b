#ifndef SGL_SYNTAX_HPP
#define SGL_SYNTAX_HPP

#include "sgl/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace sgl {

enum class GameKind { Prim, Eps, Dual, ChoiceA, ChoiceD, Seq, StarA, StarD, TestPos, TestNeg };
enum class FormulaKind { Top, Atom, And, Diamond };

struct GameNode;
struct FormulaNode;
using Game = std::shared_ptr<const GameNode>;
using Formula = std::shared_ptr<const FormulaNode>;

/// Immutable game term. `left` holds the operand of unary nodes.
struct GameNode {
    GameKind kind;
    std::string name;  // Prim
    Game left;
    Game right;
    Formula test;      // TestPos / TestNeg
};

/// Immutable formula term: true | p | f /\ g | <game>{q} f with q in [0,1).
struct FormulaNode {
    FormulaKind kind;
    std::string name;  // Atom
    Formula left;      // And; Diamond body
    Formula right;     // And
    Game game;         // Diamond
    Rational bound;    // Diamond
};

namespace game {
Game prim(std::string name);
Game eps();
Game dual(Game g);
Game choice(Game a, Game b);
Game demonic_choice(Game a, Game b);
Game seq(Game a, Game b);
Game star(Game g);
Game demonic_star(Game g);
Game test(Formula f);
Game test_neg(Formula f);
}  // namespace game

namespace formula {
Formula top();
Formula atom(std::string name);
Formula conj(Formula a, Formula b);
/// Throws Error unless 0 <= q < 1.
Formula diamond(Game g, Rational q, Formula body);
}  // namespace formula

bool equal(const Game& a, const Game& b);
bool equal(const Formula& a, const Formula& b);

/// Canonical concrete syntax. Binding strength: postfix > ; > & > |, all
/// binary operators left-associative; the modality binds tighter than /\.
std::string print(const Game& g);
std::string print(const Formula& f);

/// Throws ParseError with line/column on malformed input.
Game parse_game(std::string_view text);
Formula parse_formula(std::string_view text);

/// Identifiers usable as game or atom names.
bool is_identifier(std::string_view name);

/// Number of nodes (test formulas count as one node).
std::size_t game_size(const Game& g);

/// True when no Dual/ChoiceD/StarD occurs outside of test formulas.
bool is_dual_free(const Game& g);

/// One head rewrite under the game identities, or nullopt when the head is
/// already normal. The rewrites are
///   Dual(Dual g)          -> g
///   ChoiceD(a, b)         -> Dual(ChoiceA(Dual a, Dual b))
///   StarD(g)              -> Dual(StarA(Dual g))
///   Seq(Seq(a, b), c)     -> Seq(a, Seq(b, c))
///   Seq(ChoiceA(a, b), c) -> ChoiceA(Seq(a, c), Seq(b, c))
///   Seq(Dual a, b)        -> Dual(Seq(a, Dual b))
///   Seq(x, c)             -> Seq(x', c) when x is ChoiceD/StarD rewriting to x'
///   StarA(g)              -> Seq(StarA(g), Eps)
std::optional<Game> rewrite_head_once(const Game& g);

/// Iterates rewrite_head_once to a head-normal form: Prim, Eps, a test,
/// Dual(g) with g not a dual, ChoiceA, Seq(atomic, tail) or Seq(StarA(g), tail).
///
/// Termination: every rewrite either produces a normal head at once
/// (Dual/ChoiceA results) or shortens the left spine of a composition, so
/// the loop stops after at most (left-spine length + 3) steps. Recursive
/// evaluation then decreases (number of dual nodes to the left of the
/// head, term size with w(Seq) = w(left) * (w(right) + 1)) lexicographically.
Game normalize_head(const Game& g);

}  // namespace sgl

#endif
