#include "tvb/diagram.hpp"

#include <cctype>
#include <sstream>

namespace tvb {

int EquationSystem::add_variable(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  const int id = static_cast<int>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

int EquationSystem::variable_index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

std::string EquationSystem::term_to_string(const Term& t) const {
  switch (t.kind) {
    case Term::Kind::Variable:
      return variable_name(t.var);
    case Term::Kind::Twist:
      return "t(" + term_to_string(t.args[0]) + ")";
    default: {
      const char* fn = t.kind == Term::Kind::Under   ? "u"
                       : t.kind == Term::Kind::Over  ? "o"
                       : t.kind == Term::Kind::Virtual ? "v"
                                                       : "p";
      return std::string(fn) + "(" + term_to_string(t.args[0]) + ", " + term_to_string(t.args[1]) + ")";
    }
  }
}

std::string EquationSystem::serialize() const {
  std::ostringstream out;
  out << "vars";
  for (const std::string& name : names_) out << ' ' << name;
  out << '\n';
  for (const Equation& eq : equations_)
    out << term_to_string(eq.lhs) << " = " << term_to_string(eq.rhs) << '\n';
  return out.str();
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct TermParser {
  std::string_view line;
  std::size_t pos = 0;
  int line_no;
  EquationSystem& sys;
  bool declared_only;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError("SYNTAX", line_no, static_cast<int>(at) + 1, msg);
  }

  void skip_ws() {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < line.size() && ident_char(line[pos])) ++pos;
    if (pos == start) fail("expected an identifier", pos);
    return std::string(line.substr(start, pos - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos >= line.size() || line[pos] != c)
      fail(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  Term term() {
    skip_ws();
    const std::size_t start = pos;
    std::string name = ident();
    skip_ws();
    if (pos < line.size() && line[pos] == '(') {
      Term::Kind kind;
      if (name == "u")
        kind = Term::Kind::Under;
      else if (name == "o")
        kind = Term::Kind::Over;
      else if (name == "v")
        kind = Term::Kind::Virtual;
      else if (name == "p")
        kind = Term::Kind::Product;
      else if (name == "t")
        kind = Term::Kind::Twist;
      else
        fail("unknown function '" + name + "' (expected u, o, v, p or t)", start);
      ++pos;
      Term first = term();
      if (kind == Term::Kind::Twist) {
        expect(')');
        return Term::twist(std::move(first));
      }
      expect(',');
      Term second = term();
      expect(')');
      return Term::apply(kind, std::move(first), std::move(second));
    }
    if (declared_only && sys.variable_index(name) < 0)
      throw ParseError("UNDECLARED", line_no, static_cast<int>(start) + 1,
                       "variable '" + name + "' is not declared in the vars header");
    return Term::variable(sys.add_variable(name));
  }
};

std::string_view strip_comment(std::string_view line) {
  const std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

bool blank(std::string_view line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::vector<std::pair<int, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    line = strip_comment(line);
    if (!blank(line)) lines.emplace_back(line_no, line);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return lines;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) fields.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

EquationSystem parse_equations(std::string_view text) {
  EquationSystem sys;
  bool declared_only = false;
  bool first = true;
  for (auto [line_no, line] : content_lines(text)) {
    auto fields = split_fields(line);
    if (first && !fields.empty() && fields[0] == "vars") {
      declared_only = true;
      for (std::size_t i = 1; i < fields.size(); ++i) sys.add_variable(fields[i]);
      first = false;
      continue;
    }
    first = false;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("SYNTAX", line_no, 1, "expected an equation 'term = term'");
    TermParser left{line.substr(0, eq), 0, line_no, sys, declared_only};
    Term lhs = left.term();
    left.skip_ws();
    if (left.pos != left.line.size()) left.fail("unexpected trailing input", left.pos);
    TermParser right{line.substr(eq + 1), 0, line_no, sys, declared_only};
    Term rhs = right.term();
    right.skip_ws();
    if (right.pos != right.line.size())
      throw ParseError("SYNTAX", line_no, static_cast<int>(eq + 1 + right.pos) + 1,
                       "unexpected trailing input");
    sys.add_equation(std::move(lhs), std::move(rhs));
  }
  return sys;
}

Diagram::Diagram(std::vector<std::string> semiarcs, std::vector<DiagramNode> nodes)
    : semiarcs_(std::move(semiarcs)), nodes_(std::move(nodes)) {
  std::vector<int> uses(semiarcs_.size(), 0);
  for (const DiagramNode& node : nodes_)
    for (int i = 0; i < node.slot_count(); ++i) {
      const int s = node.slots[static_cast<std::size_t>(i)];
      if (s < 0 || s >= static_cast<int>(semiarcs_.size()))
        throw std::invalid_argument("diagram node references an unknown semiarc");
      ++uses[static_cast<std::size_t>(s)];
    }
  for (std::size_t i = 0; i < uses.size(); ++i)
    if (uses[i] > 2)
      throw std::invalid_argument("semiarc '" + semiarcs_[i] + "' is used more than twice");
}

std::vector<int> Diagram::boundary_semiarcs() const {
  std::vector<int> uses(semiarcs_.size(), 0);
  for (const DiagramNode& node : nodes_)
    for (int i = 0; i < node.slot_count(); ++i) ++uses[static_cast<std::size_t>(node.slots[static_cast<std::size_t>(i)])];
  std::vector<int> boundary;
  for (std::size_t i = 0; i < uses.size(); ++i)
    if (uses[i] == 1) boundary.push_back(static_cast<int>(i));
  return boundary;
}

Diagram parse_diagram(std::string_view text) {
  std::vector<std::string> semiarcs;
  std::unordered_map<std::string, int> index;
  std::vector<DiagramNode> nodes;
  std::vector<int> uses;
  bool have_header = false;

  for (auto [line_no, line] : content_lines(text)) {
    auto fields = split_fields(line);
    if (!have_header) {
      if (fields[0] != "semiarcs")
        throw ParseError("SYNTAX", line_no, 1, "expected 'semiarcs <label>+' header");
      if (fields.size() < 2)
        throw ParseError("SYNTAX", line_no, 1, "semiarcs header declares no labels");
      for (std::size_t i = 1; i < fields.size(); ++i) {
        if (index.count(fields[i]))
          throw ParseError("SYNTAX", line_no, 1, "duplicate semiarc label '" + fields[i] + "'");
        index.emplace(fields[i], static_cast<int>(semiarcs.size()));
        semiarcs.push_back(fields[i]);
      }
      uses.assign(semiarcs.size(), 0);
      have_header = true;
      continue;
    }
    DiagramNode node;
    int arity;
    if (fields[0] == "X") {
      node.type = DiagramNode::Type::Classical;
      arity = 4;
    } else if (fields[0] == "V") {
      node.type = DiagramNode::Type::Virtual;
      arity = 4;
    } else if (fields[0] == "T") {
      node.type = DiagramNode::Type::Twist;
      arity = 2;
    } else if (fields[0] == "H") {
      node.type = DiagramNode::Type::Vertex;
      arity = 3;
    } else {
      throw ParseError("SYNTAX", line_no, 1, "unknown node kind '" + fields[0] + "'");
    }
    if (static_cast<int>(fields.size()) - 1 != arity)
      throw ParseError("ARITY", line_no, 1,
                       "node '" + fields[0] + "' needs " + std::to_string(arity) +
                           " semiarcs, got " + std::to_string(fields.size() - 1));
    for (int i = 0; i < arity; ++i) {
      auto it = index.find(fields[static_cast<std::size_t>(i + 1)]);
      if (it == index.end())
        throw ParseError("UNKNOWN_LABEL", line_no, 1,
                         "semiarc '" + fields[static_cast<std::size_t>(i + 1)] + "' is not declared");
      node.slots[static_cast<std::size_t>(i)] = it->second;
      if (++uses[static_cast<std::size_t>(it->second)] > 2)
        throw ParseError("DUPLICATE_OVERUSE", line_no, 1,
                         "semiarc '" + fields[static_cast<std::size_t>(i + 1)] + "' is used more than twice");
    }
    nodes.push_back(node);
  }
  if (!have_header) throw ParseError("SYNTAX", 1, 1, "missing 'semiarcs' header");
  return Diagram(std::move(semiarcs), std::move(nodes));
}

std::string serialize_diagram(const Diagram& d) {
  std::ostringstream out;
  out << "semiarcs";
  for (const std::string& s : d.semiarcs()) out << ' ' << s;
  out << '\n';
  for (const DiagramNode& node : d.nodes()) {
    switch (node.type) {
      case DiagramNode::Type::Classical: out << 'X'; break;
      case DiagramNode::Type::Virtual: out << 'V'; break;
      case DiagramNode::Type::Twist: out << 'T'; break;
      case DiagramNode::Type::Vertex: out << 'H'; break;
    }
    for (int i = 0; i < node.slot_count(); ++i)
      out << ' ' << d.semiarc_name(node.slots[static_cast<std::size_t>(i)]);
    out << '\n';
  }
  return out.str();
}

EquationSystem diagram_to_equations(const Diagram& d) {
  EquationSystem sys;
  for (const std::string& name : d.semiarcs()) sys.add_variable(name);
  auto var = [](int idx) { return Term::variable(idx); };
  for (const DiagramNode& node : d.nodes()) {
    const auto& s = node.slots;
    switch (node.type) {
      case DiagramNode::Type::Classical:
        sys.add_equation(var(s[2]), Term::apply(Term::Kind::Under, var(s[0]), var(s[1])));
        sys.add_equation(var(s[3]), Term::apply(Term::Kind::Over, var(s[1]), var(s[0])));
        break;
      case DiagramNode::Type::Virtual:
        sys.add_equation(var(s[2]), Term::apply(Term::Kind::Virtual, var(s[0]), var(s[1])));
        sys.add_equation(var(s[3]), Term::apply(Term::Kind::Virtual, var(s[1]), var(s[0])));
        break;
      case DiagramNode::Type::Twist:
        sys.add_equation(var(s[1]), Term::twist(var(s[0])));
        break;
      case DiagramNode::Type::Vertex:
        sys.add_equation(var(s[2]), Term::apply(Term::Kind::Product, var(s[0]), var(s[1])));
        break;
    }
  }
  return sys;
}

bool looks_like_diagram(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) return false;
  auto fields = split_fields(lines.front().second);
  return !fields.empty() && fields[0] == "semiarcs";
}

}  // namespace tvb
