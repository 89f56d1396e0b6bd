#include "tvb/coloring.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace tvb {

namespace {

void collect_vars(const Term& t, std::vector<int>& out) {
  if (t.kind == Term::Kind::Variable) {
    out.push_back(t.var);
    return;
  }
  for (const Term& arg : t.args) collect_vars(arg, out);
}

// Evaluation with partial assignments: returns -1 when some variable of
// the term is unassigned, kUndefined when a product cell is undefined.
int eval_partial(const Term& t, const TwistedVirtualBikeigebra& X, const std::vector<int>& values) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      const int v = values[static_cast<std::size_t>(t.var)];
      return v == 0 ? -1 : v;
    }
    case Term::Kind::Twist: {
      const int a = eval_partial(t.args[0], X, values);
      return a <= 0 ? a : X.twist.at(a);
    }
    default: {
      const int a = eval_partial(t.args[0], X, values);
      if (a == -1) return -1;
      const int b = eval_partial(t.args[1], X, values);
      if (b == -1) return -1;
      if (a == kUndefined || b == kUndefined) return kUndefined;
      switch (t.kind) {
        case Term::Kind::Under: return X.under.at(a, b);
        case Term::Kind::Over: return X.over.at(a, b);
        case Term::Kind::Virtual: return X.virt.at(a, b);
        default: return X.product.at(a, b);
      }
    }
  }
}

struct Solver {
  const EquationSystem& sys;
  const TwistedVirtualBikeigebra& X;
  std::vector<int> values;  // 0 = unassigned
  std::uint64_t count = 0;
  bool stop_at_first = false;
  bool stopped = false;
  std::vector<std::vector<int>>* sink = nullptr;  // raw value vectors

  Solver(const EquationSystem& sys, const TwistedVirtualBikeigebra& X)
      : sys(sys), X(X), values(static_cast<std::size_t>(sys.variable_count()), 0) {}

  // Checks equations decidable under the current partial assignment and
  // forces variables determined by a fully assigned opposite side.
  // Returns false when some equation is already unsatisfiable.
  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Equation& eq : sys.equations()) {
        const int l = eval_partial(eq.lhs, X, values);
        const int r = eval_partial(eq.rhs, X, values);
        if (l >= 0 && r >= 0) {
          if (l == kUndefined || r == kUndefined || l != r) return false;
          continue;
        }
        // One side ready, other a bare unassigned variable: forced.
        if (l >= 0 && eq.rhs.kind == Term::Kind::Variable) {
          if (l == kUndefined) return false;
          values[static_cast<std::size_t>(eq.rhs.var)] = l;
          trail.push_back(eq.rhs.var);
          changed = true;
        } else if (r >= 0 && eq.lhs.kind == Term::Kind::Variable) {
          if (r == kUndefined) return false;
          values[static_cast<std::size_t>(eq.lhs.var)] = r;
          trail.push_back(eq.lhs.var);
          changed = true;
        }
      }
    }
    return true;
  }

  // Minimum-remaining-values choice with one-step lookahead; ties go to
  // the lowest variable index. -1 when everything is assigned.
  int pick_variable() const {
    int best = -1;
    int best_feasible = X.order() + 1;
    for (int v = 0; v < sys.variable_count(); ++v) {
      if (values[static_cast<std::size_t>(v)] != 0) continue;
      int feasible = 0;
      for (int val = 1; val <= X.order(); ++val)
        if (value_consistent(v, val)) ++feasible;
      if (feasible < best_feasible) {
        best_feasible = feasible;
        best = v;
      }
    }
    return best;
  }

  bool value_consistent(int var, int val) const {
    auto& self = const_cast<Solver&>(*this);
    self.values[static_cast<std::size_t>(var)] = val;
    bool ok = true;
    for (const Equation& eq : sys.equations()) {
      const int l = eval_partial(eq.lhs, X, values);
      if (l == -1) continue;
      const int r = eval_partial(eq.rhs, X, values);
      if (r == -1) continue;
      if (l == kUndefined || r == kUndefined || l != r) {
        ok = false;
        break;
      }
    }
    self.values[static_cast<std::size_t>(var)] = 0;
    return ok;
  }

  void run() {
    std::vector<int> trail;
    if (propagate(trail)) branch();
    for (int v : trail) values[static_cast<std::size_t>(v)] = 0;
  }

  void branch() {
    if (stopped) return;
    const int var = pick_variable();
    if (var < 0) {
      ++count;
      if (sink) sink->push_back(values);
      if (stop_at_first) stopped = true;
      return;
    }
    for (int val = 1; val <= X.order() && !stopped; ++val) {
      values[static_cast<std::size_t>(var)] = val;
      std::vector<int> trail;
      if (propagate(trail)) branch();
      for (int v : trail) values[static_cast<std::size_t>(v)] = 0;
    }
    values[static_cast<std::size_t>(var)] = 0;
  }
};

void ensure_verified(const TwistedVirtualBikeigebra& X, const ColoringOptions& opts) {
  if (!opts.verify_structure || X.verified) return;
  if (!is_valid(X))
    throw NotVerified("structure fails verify_all; pass --no-verify to color anyway");
}

std::uint64_t assignment_space(int vars, int order) {
  std::uint64_t total = 1;
  for (int i = 0; i < vars; ++i) {
    if (total > UINT64_MAX / static_cast<std::uint64_t>(order)) return UINT64_MAX;
    total *= static_cast<std::uint64_t>(order);
  }
  return total;
}

bool assignment_satisfies(const EquationSystem& sys, const TwistedVirtualBikeigebra& X,
                          const std::vector<int>& values) {
  for (const Equation& eq : sys.equations()) {
    const int l = eval_term(eq.lhs, X, values);
    const int r = eval_term(eq.rhs, X, values);
    if (l == kUndefined || r == kUndefined || l != r) return false;
  }
  return true;
}

}  // namespace

std::uint64_t effective_budget(const ColoringOptions& opts) {
  if (const char* env = std::getenv("TVB_EVAL_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return opts.budget;
}

int eval_term(const Term& term, const TwistedVirtualBikeigebra& X, const std::vector<int>& values) {
  switch (term.kind) {
    case Term::Kind::Variable:
      return values[static_cast<std::size_t>(term.var)];
    case Term::Kind::Twist: {
      const int a = eval_term(term.args[0], X, values);
      return a == kUndefined ? kUndefined : X.twist.at(a);
    }
    default: {
      const int a = eval_term(term.args[0], X, values);
      const int b = eval_term(term.args[1], X, values);
      if (a == kUndefined || b == kUndefined) return kUndefined;
      switch (term.kind) {
        case Term::Kind::Under: return X.under.at(a, b);
        case Term::Kind::Over: return X.over.at(a, b);
        case Term::Kind::Virtual: return X.virt.at(a, b);
        default: return X.product.at(a, b);
      }
    }
  }
}

std::uint64_t count_colorings_serial(const EquationSystem& system,
                                     const TwistedVirtualBikeigebra& X,
                                     const ColoringOptions& opts) {
  ensure_verified(X, opts);
  Solver solver(system, X);
  solver.run();
  return solver.count;
}

std::uint64_t count_colorings(const EquationSystem& system, const TwistedVirtualBikeigebra& X,
                              const ColoringOptions& opts) {
  ensure_verified(X, opts);
  if (system.variable_count() == 0) {
    Solver solver(system, X);
    solver.run();
    return solver.count;
  }
  // Split on the first variable; each subtree is independent work.
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (int val = 1; val <= X.order(); ++val) {
    Solver solver(system, X);
    solver.values[0] = val;
    solver.run();
    total += solver.count;
  }
  return total;
}

std::vector<Coloring> list_colorings(const EquationSystem& system,
                                     const TwistedVirtualBikeigebra& X,
                                     const ColoringOptions& opts) {
  ensure_verified(X, opts);
  std::vector<std::vector<int>> raw;
  Solver solver(system, X);
  solver.sink = &raw;
  solver.run();

  // Sort labels, then colorings by their value tuples in label order.
  std::vector<int> label_order(static_cast<std::size_t>(system.variable_count()));
  for (std::size_t i = 0; i < label_order.size(); ++i) label_order[i] = static_cast<int>(i);
  std::sort(label_order.begin(), label_order.end(), [&](int a, int b) {
    return system.variable_name(a) < system.variable_name(b);
  });
  std::sort(raw.begin(), raw.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (int v : label_order) {
      if (a[static_cast<std::size_t>(v)] != b[static_cast<std::size_t>(v)])
        return a[static_cast<std::size_t>(v)] < b[static_cast<std::size_t>(v)];
    }
    return false;
  });

  std::vector<Coloring> out;
  out.reserve(raw.size());
  for (const std::vector<int>& values : raw) {
    Coloring c;
    c.reserve(label_order.size());
    for (int v : label_order)
      c.emplace_back(system.variable_name(v), values[static_cast<std::size_t>(v)]);
    out.push_back(std::move(c));
  }
  return out;
}

std::uint64_t brute_force_count_serial(const EquationSystem& system,
                                       const TwistedVirtualBikeigebra& X,
                                       const ColoringOptions& opts) {
  const int k = system.variable_count();
  const std::uint64_t total = assignment_space(k, X.order());
  if (total > effective_budget(opts))
    throw BudgetExceeded("BUDGET_EXCEEDED: " + std::to_string(k) + " variables over order " +
                         std::to_string(X.order()) + " need " + std::to_string(total) +
                         " evaluations");
  std::vector<int> values(static_cast<std::size_t>(k), 1);
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int v = 0; v < k; ++v) {
      values[static_cast<std::size_t>(v)] = static_cast<int>(rest % X.order()) + 1;
      rest /= static_cast<std::uint64_t>(X.order());
    }
    if (assignment_satisfies(system, X, values)) ++count;
  }
  return count;
}

std::uint64_t brute_force_count(const EquationSystem& system, const TwistedVirtualBikeigebra& X,
                                const ColoringOptions& opts) {
  const int k = system.variable_count();
  const std::uint64_t total = assignment_space(k, X.order());
  if (total > effective_budget(opts))
    throw BudgetExceeded("BUDGET_EXCEEDED: " + std::to_string(k) + " variables over order " +
                         std::to_string(X.order()) + " need " + std::to_string(total) +
                         " evaluations");
  std::uint64_t count = 0;
  const std::int64_t n = static_cast<std::int64_t>(total);
#pragma omp parallel reduction(+ : count)
  {
    std::vector<int> values(static_cast<std::size_t>(k), 1);
#pragma omp for schedule(static)
    for (std::int64_t code = 0; code < n; ++code) {
      std::uint64_t rest = static_cast<std::uint64_t>(code);
      for (int v = 0; v < k; ++v) {
        values[static_cast<std::size_t>(v)] = static_cast<int>(rest % X.order()) + 1;
        rest /= static_cast<std::uint64_t>(X.order());
      }
      if (assignment_satisfies(system, X, values)) ++count;
    }
  }
  return count;
}

bool is_colorable(const EquationSystem& system, const TwistedVirtualBikeigebra& X,
                  const ColoringOptions& opts) {
  ensure_verified(X, opts);
  Solver solver(system, X);
  solver.stop_at_first = true;
  solver.run();
  return solver.count > 0;
}

std::uint64_t count_extensions(const EquationSystem& system, const TwistedVirtualBikeigebra& X,
                               const std::vector<int>& partial) {
  Solver solver(system, X);
  solver.values = partial;
  solver.run();
  return solver.count;
}

}  // namespace tvb
