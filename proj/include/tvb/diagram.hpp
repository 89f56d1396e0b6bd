#ifndef TVB_DIAGRAM_HPP
#define TVB_DIAGRAM_HPP

#include <array>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tvb/algebra.hpp"

// Diagrams of twisted virtual handlebody-links and their coloring-equation
// systems. Several links of interest exist only as printed equation
// systems, so both encodings parse into the same pipeline.

namespace tvb {

// term ::= variable | u(term,term) | o(term,term) | v(term,term)
//        | p(term,term) | t(term)
struct Term {
  enum class Kind { Variable, Under, Over, Virtual, Product, Twist };

  Kind kind = Kind::Variable;
  int var = -1;  // variable index when kind == Variable
  std::vector<Term> args;

  static Term variable(int index) {
    Term t;
    t.var = index;
    return t;
  }
  static Term apply(Kind kind, Term a, Term b) {
    Term t;
    t.kind = kind;
    t.args.push_back(std::move(a));
    t.args.push_back(std::move(b));
    return t;
  }
  static Term twist(Term a) {
    Term t;
    t.kind = Kind::Twist;
    t.args.push_back(std::move(a));
    return t;
  }

  bool operator==(const Term&) const = default;
};

struct Equation {
  Term lhs;
  Term rhs;
  bool operator==(const Equation&) const = default;
};

class EquationSystem {
public:
  int add_variable(const std::string& name);  // idempotent
  int variable_index(std::string_view name) const;  // -1 if absent
  int variable_count() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& variable_name(int index) const { return names_[static_cast<std::size_t>(index)]; }
  const std::vector<std::string>& variable_names() const noexcept { return names_; }

  void add_equation(Term lhs, Term rhs) { equations_.push_back({std::move(lhs), std::move(rhs)}); }
  const std::vector<Equation>& equations() const noexcept { return equations_; }

  std::string serialize() const;
  std::string term_to_string(const Term& t) const;

  bool operator==(const EquationSystem&) const = default;

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Equation> equations_;
};

// One equation per line, optional leading `vars <label>+` header (with the
// header present, undeclared variables are an error). '#' starts a comment.
EquationSystem parse_equations(std::string_view text);

struct DiagramNode {
  enum class Type { Classical, Virtual, Twist, Vertex };

  Type type{};
  // Classical: under_in over_in under_out over_out
  // Virtual:   a_in b_in a_out b_out
  // Twist:     in out
  // Vertex:    a b c  (constraint a*b = c)
  std::array<int, 4> slots{-1, -1, -1, -1};

  int slot_count() const {
    switch (type) {
      case Type::Twist: return 2;
      case Type::Vertex: return 3;
      default: return 4;
    }
  }
  bool operator==(const DiagramNode&) const = default;
};

class Diagram {
public:
  Diagram(std::vector<std::string> semiarcs, std::vector<DiagramNode> nodes);

  int semiarc_count() const noexcept { return static_cast<int>(semiarcs_.size()); }
  const std::vector<std::string>& semiarcs() const noexcept { return semiarcs_; }
  const std::string& semiarc_name(int index) const { return semiarcs_[static_cast<std::size_t>(index)]; }
  const std::vector<DiagramNode>& nodes() const noexcept { return nodes_; }

  // Semiarcs used exactly once in node slots; unused semiarcs are free
  // loops and contribute an unconstrained color.
  std::vector<int> boundary_semiarcs() const;

  bool operator==(const Diagram&) const = default;

private:
  std::vector<std::string> semiarcs_;
  std::vector<DiagramNode> nodes_;
};

// Line-oriented format with '#' comments:
//   semiarcs <label>+          (exactly one header line)
//   X <under_in> <over_in> <under_out> <over_out>
//   V <a_in> <b_in> <a_out> <b_out>
//   T <in> <out>
//   H <a> <b> <c>
Diagram parse_diagram(std::string_view text);
std::string serialize_diagram(const Diagram& d);

// Crossing slot semantics: the under-strand output is
// (under-in) under (over-in) and the over-strand output is
// (over-in) over (under-in); virtual crossings apply the virtual operation
// both ways, a twist bar applies the twist map, a vertex constrains
// c = p(a, b). Variables are the semiarc labels in declaration order.
EquationSystem diagram_to_equations(const Diagram& d);

// Tangle: an equation system with an ordered list of externally visible
// variables, used by the move-bijection checks.
struct Tangle {
  EquationSystem system;
  std::vector<int> boundary;  // variable indices

  bool operator==(const Tangle&) const = default;
};

bool looks_like_diagram(std::string_view text);

}  // namespace tvb

#endif  // TVB_DIAGRAM_HPP
