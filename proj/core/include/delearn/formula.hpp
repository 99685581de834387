#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "delearn/signature.hpp"

namespace delearn {

/// Formulas of the single-agent dynamic epistemic language.
///
/// Immutable; copies share structure. `event_box` names an event model
/// resolved against an event environment, `action_box` names an action
/// label resolved against a domain.
class Formula {
 public:
  enum class Kind {
    atom,
    top,
    bottom,
    negation,
    conjunction,
    disjunction,
    implication,
    equivalence,
    knows,
    knows_whether,
    event_box,
    action_box,
  };

  static Formula atom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);
  static Formula knows(Formula f);
  static Formula knows_whether(Formula f);
  static Formula event_box(std::string model, Formula f);
  static Formula action_box(std::string action, Formula f);

  /// Left-folded conjunction; an empty list is `top`.
  static Formula all_of(const std::vector<Formula>& parts);
  /// Left-folded disjunction; an empty list is `bottom`.
  static Formula any_of(const std::vector<Formula>& parts);

  Kind kind() const;
  /// Proposition name for atoms, model or action name for boxes.
  const std::string& name() const;
  /// Sole operand of unary nodes, left operand of binary nodes.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_binary() const;
  bool is_unary() const;
  bool is_static() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class BoxKind { event, action };

/// Parses the ASCII grammar: `~`, `&`, `|`, `->` (right-assoc), `<->`
/// (right-assoc), prefix `K`, `Kw`, `[name]`, literals `true`/`false`.
/// Precedence, tightest first: prefix operators, &, |, ->, <->.
/// `[name]` becomes an event box or an action box according to `boxes`.
Formula parse_formula(std::string_view text, BoxKind boxes = BoxKind::event);

/// Canonical text; parse_formula(render(f)) == f.
std::string render(const Formula& f);

/// Propositions mentioned by the formula.
std::set<std::string> atoms_of(const Formula& f);

}  // namespace delearn
