#include "tvb/moves.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

namespace tvb {

namespace {

// Assembles a tangle from diagram-node constraints. Slot semantics match
// diagram_to_equations.
class TangleBuilder {
public:
  TangleBuilder& classical(const std::string& ui, const std::string& oi, const std::string& uo,
                           const std::string& oo) {
    sys_.add_equation(var(uo), Term::apply(Term::Kind::Under, var(ui), var(oi)));
    sys_.add_equation(var(oo), Term::apply(Term::Kind::Over, var(oi), var(ui)));
    return *this;
  }
  TangleBuilder& virtual_crossing(const std::string& ai, const std::string& bi,
                                  const std::string& ao, const std::string& bo) {
    sys_.add_equation(var(ao), Term::apply(Term::Kind::Virtual, var(ai), var(bi)));
    sys_.add_equation(var(bo), Term::apply(Term::Kind::Virtual, var(bi), var(ai)));
    return *this;
  }
  TangleBuilder& twist_bar(const std::string& in, const std::string& out) {
    sys_.add_equation(var(out), Term::twist(var(in)));
    return *this;
  }
  TangleBuilder& vertex(const std::string& a, const std::string& b, const std::string& c) {
    sys_.add_equation(var(c), Term::apply(Term::Kind::Product, var(a), var(b)));
    return *this;
  }
  TangleBuilder& wire(const std::string& a, const std::string& b) {
    sys_.add_equation(var(b), var(a));
    return *this;
  }

  Tangle finish(const std::vector<std::string>& boundary) {
    Tangle t;
    t.system = std::move(sys_);
    for (const std::string& name : boundary) t.boundary.push_back(t.system.add_variable(name));
    return t;
  }

private:
  Term var(const std::string& name) { return Term::variable(sys_.add_variable(name)); }
  EquationSystem sys_;
};

MoveTangle make_move(std::string label, Tangle left, Tangle right,
                     std::vector<std::string> boundary) {
  MoveTangle m;
  m.label = std::move(label);
  m.left = std::move(left);
  m.right = std::move(right);
  m.boundary = std::move(boundary);
  return m;
}

std::vector<MoveTangle> build_moves() {
  std::vector<MoveTangle> moves;

  // rI: kink (the loop joins the under-out and over-in slots) vs a plain
  // strand.
  {
    std::vector<std::string> b{"a", "b"};
    Tangle left = TangleBuilder().classical("a", "i1", "i1", "b").finish(b);
    Tangle right = TangleBuilder().wire("a", "b").finish(b);
    moves.push_back(make_move("rI", std::move(left), std::move(right), b));
  }

  // rII: one strand passes under another and back.
  {
    std::vector<std::string> b{"a", "b", "c", "d"};
    Tangle left =
        TangleBuilder().classical("a", "b", "i1", "i2").classical("i1", "i2", "c", "d").finish(b);
    Tangle right = TangleBuilder().wire("a", "c").wire("b", "d").finish(b);
    moves.push_back(make_move("rII", std::move(left), std::move(right), b));
  }

  // rIII: strand x slides under the crossing of z under y.
  {
    std::vector<std::string> b{"x", "y", "z", "xo", "yo", "zo"};
    Tangle left = TangleBuilder()
                      .classical("x", "y", "x1", "y1")
                      .classical("x1", "z", "xo", "z1")
                      .classical("z1", "y1", "zo", "yo")
                      .finish(b);
    Tangle right = TangleBuilder()
                       .classical("z", "y", "z1", "y1")
                       .classical("x", "z1", "x1", "zo")
                       .classical("x1", "y1", "xo", "yo")
                       .finish(b);
    moves.push_back(make_move("rIII", std::move(left), std::move(right), b));
  }

  // rIV: the two edges entering a vertex cross before merging; variants by
  // which edge passes under.
  {
    std::vector<std::string> b{"x", "y", "w"};
    Tangle left = TangleBuilder().vertex("x", "y", "w").finish(b);
    Tangle right =
        TangleBuilder().classical("x", "y", "x1", "y1").vertex("y1", "x1", "w").finish(b);
    moves.push_back(make_move("rIV.u", std::move(left), std::move(right), b));

    Tangle left2 = TangleBuilder().vertex("x", "y", "w").finish(b);
    Tangle right2 =
        TangleBuilder().classical("y", "x", "y1", "x1").vertex("y1", "x1", "w").finish(b);
    moves.push_back(make_move("rIV.o", std::move(left2), std::move(right2), b));
  }

  // rV: a vertex slides past a strand; the legs cross under z one at a
  // time, or the product edge crosses under z once.
  {
    std::vector<std::string> b{"x", "y", "z", "w", "zo"};
    Tangle left = TangleBuilder()
                      .classical("x", "z", "x1", "z1")
                      .classical("y", "z1", "y1", "zo")
                      .vertex("x1", "y1", "w")
                      .finish(b);
    Tangle right =
        TangleBuilder().vertex("x", "y", "w0").classical("w0", "z", "w", "zo").finish(b);
    moves.push_back(make_move("rV", std::move(left), std::move(right), b));
  }

  // vI: virtual kink.
  {
    std::vector<std::string> b{"a", "b"};
    Tangle left = TangleBuilder().virtual_crossing("a", "i1", "i1", "b").finish(b);
    Tangle right = TangleBuilder().wire("a", "b").finish(b);
    moves.push_back(make_move("vI", std::move(left), std::move(right), b));
  }

  // vII: virtual double crossing.
  {
    std::vector<std::string> b{"a", "b", "c", "d"};
    Tangle left = TangleBuilder()
                      .virtual_crossing("a", "b", "i1", "i2")
                      .virtual_crossing("i1", "i2", "c", "d")
                      .finish(b);
    Tangle right = TangleBuilder().wire("a", "c").wire("b", "d").finish(b);
    moves.push_back(make_move("vII", std::move(left), std::move(right), b));
  }

  // vIII: all-virtual triple slide.
  {
    std::vector<std::string> b{"x", "y", "z", "xo", "yo", "zo"};
    Tangle left = TangleBuilder()
                      .virtual_crossing("x", "y", "x1", "y1")
                      .virtual_crossing("x1", "z", "xo", "z1")
                      .virtual_crossing("z1", "y1", "zo", "yo")
                      .finish(b);
    Tangle right = TangleBuilder()
                       .virtual_crossing("z", "y", "z1", "y1")
                       .virtual_crossing("x", "z1", "x1", "zo")
                       .virtual_crossing("x1", "y1", "xo", "yo")
                       .finish(b);
    moves.push_back(make_move("vIII", std::move(left), std::move(right), b));
  }

  // v: a strand slides past a classical crossing on virtual crossings
  // (the classical crossing has y under z).
  {
    std::vector<std::string> b{"x", "y", "z", "xo", "yo", "zo"};
    Tangle left = TangleBuilder()
                      .virtual_crossing("x", "y", "x1", "y1")
                      .virtual_crossing("x1", "z", "xo", "z1")
                      .classical("y1", "z1", "yo", "zo")
                      .finish(b);
    Tangle right = TangleBuilder()
                       .classical("y", "z", "y1", "z1")
                       .virtual_crossing("x", "z1", "x1", "zo")
                       .virtual_crossing("x1", "y1", "xo", "yo")
                       .finish(b);
    moves.push_back(make_move("v", std::move(left), std::move(right), b));
  }

  // tI: two twist bars cancel.
  {
    std::vector<std::string> b{"a", "b"};
    Tangle left = TangleBuilder().twist_bar("a", "i1").twist_bar("i1", "b").finish(b);
    Tangle right = TangleBuilder().wire("a", "b").finish(b);
    moves.push_back(make_move("tI", std::move(left), std::move(right), b));
  }

  // tII: a twist bar slides past a virtual crossing.
  {
    std::vector<std::string> b{"a", "b", "c", "d"};
    Tangle left =
        TangleBuilder().virtual_crossing("a", "b", "i1", "d").twist_bar("i1", "c").finish(b);
    Tangle right =
        TangleBuilder().twist_bar("a", "j1").virtual_crossing("j1", "b", "c", "d").finish(b);
    moves.push_back(make_move("tII", std::move(left), std::move(right), b));
  }

  // tIII: a classical crossing passes through a cross-cap: twist bars on
  // all four ends versus a virtual-classical-virtual sandwich.
  {
    std::vector<std::string> b{"x", "y", "p", "q"};
    Tangle left = TangleBuilder()
                      .twist_bar("x", "u1")
                      .twist_bar("y", "v1")
                      .classical("u1", "v1", "u2", "v2")
                      .twist_bar("u2", "p")
                      .twist_bar("v2", "q")
                      .finish(b);
    Tangle right = TangleBuilder()
                       .virtual_crossing("x", "y", "a1", "b1")
                       .classical("b1", "a1", "b2", "a2")
                       .virtual_crossing("a2", "b2", "p", "q")
                       .finish(b);
    moves.push_back(make_move("tIII", std::move(left), std::move(right), b));
  }

  // tIV: a vertex passes through a cross-cap: twist bars on all three
  // edges versus a virtual crossing of the legs.
  {
    std::vector<std::string> b{"x", "y", "w"};
    Tangle left = TangleBuilder()
                      .twist_bar("x", "u1")
                      .twist_bar("y", "v1")
                      .vertex("u1", "v1", "w0")
                      .twist_bar("w0", "w")
                      .finish(b);
    Tangle right =
        TangleBuilder().virtual_crossing("x", "y", "a1", "b1").vertex("b1", "a1", "w").finish(b);
    moves.push_back(make_move("tIV", std::move(left), std::move(right), b));
  }

  // tV: a vertex slides past a strand on virtual crossings.
  {
    std::vector<std::string> b{"x", "y", "z", "w", "zo"};
    Tangle left = TangleBuilder()
                      .virtual_crossing("x", "z", "x1", "z1")
                      .virtual_crossing("y", "z1", "y1", "zo")
                      .vertex("x1", "y1", "w")
                      .finish(b);
    Tangle right =
        TangleBuilder().vertex("x", "y", "w0").virtual_crossing("w0", "z", "w", "zo").finish(b);
    moves.push_back(make_move("tV", std::move(left), std::move(right), b));
  }

  return moves;
}

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

struct SideContext {
  const Tangle* tangle;
  std::vector<int> scratch;
};

BijectionReport check_move_impl(const TwistedVirtualBikeigebra& X, const MoveTangle& move,
                                bool parallel) {
  const int n = X.order();
  const int k = static_cast<int>(move.boundary.size());
  const std::uint64_t total = pow_u64(static_cast<std::uint64_t>(n), k);

  BijectionReport report;
  report.label = move.label;
  report.boundary_count = total;

  const std::int64_t codes = static_cast<std::int64_t>(total);
  std::uint64_t left_total = 0, right_total = 0, max_left = 0, max_right = 0;
  std::vector<std::vector<Mismatch>> buckets;

#pragma omp parallel if (parallel) \
    reduction(+ : left_total, right_total) reduction(max : max_left, max_right)
  {
    const int tid = omp_get_thread_num();
#pragma omp single
    buckets.resize(static_cast<std::size_t>(omp_get_num_threads()));
    std::vector<int> boundary_values(static_cast<std::size_t>(k));
    std::vector<int> left_partial(static_cast<std::size_t>(move.left.system.variable_count()));
    std::vector<int> right_partial(static_cast<std::size_t>(move.right.system.variable_count()));
#pragma omp for schedule(static)
    for (std::int64_t code = 0; code < codes; ++code) {
      std::uint64_t rest = static_cast<std::uint64_t>(code);
      // Most-significant digit first so that code order is lexicographic
      // boundary order.
      for (int i = k - 1; i >= 0; --i) {
        boundary_values[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(n)) + 1;
        rest /= static_cast<std::uint64_t>(n);
      }
      std::fill(left_partial.begin(), left_partial.end(), 0);
      std::fill(right_partial.begin(), right_partial.end(), 0);
      for (int i = 0; i < k; ++i) {
        left_partial[static_cast<std::size_t>(move.left.boundary[static_cast<std::size_t>(i)])] =
            boundary_values[static_cast<std::size_t>(i)];
        right_partial[static_cast<std::size_t>(move.right.boundary[static_cast<std::size_t>(i)])] =
            boundary_values[static_cast<std::size_t>(i)];
      }
      const std::uint64_t left = count_extensions(move.left.system, X, left_partial);
      const std::uint64_t right = count_extensions(move.right.system, X, right_partial);
      left_total += left;
      right_total += right;
      max_left = std::max(max_left, left);
      max_right = std::max(max_right, right);
      if (left != right)
        buckets[static_cast<std::size_t>(tid)].push_back({boundary_values, left, right});
    }
  }

  report.left_extensions = left_total;
  report.right_extensions = right_total;
  report.max_left = max_left;
  report.max_right = max_right;
  for (auto& bucket : buckets)
    report.mismatches.insert(report.mismatches.end(), bucket.begin(), bucket.end());
  std::sort(report.mismatches.begin(), report.mismatches.end(),
            [](const Mismatch& a, const Mismatch& b) { return a.boundary < b.boundary; });
  return report;
}

}  // namespace

std::string BijectionReport::to_line() const {
  std::ostringstream out;
  out << label << " boundary=" << boundary_count << " status=" << (clean() ? "ok" : "FAIL")
      << " mismatches=" << mismatches.size();
  return out.str();
}

const std::vector<MoveTangle>& builtin_moves() {
  static const std::vector<MoveTangle> moves = build_moves();
  return moves;
}

const MoveTangle* find_move(std::string_view label) {
  for (const MoveTangle& m : builtin_moves())
    if (m.label == label) return &m;
  return nullptr;
}

BijectionReport check_move(const TwistedVirtualBikeigebra& X, const MoveTangle& move) {
  return check_move_impl(X, move, true);
}

BijectionReport check_move_serial(const TwistedVirtualBikeigebra& X, const MoveTangle& move) {
  return check_move_impl(X, move, false);
}

std::vector<BijectionReport> check_all_moves(const TwistedVirtualBikeigebra& X) {
  std::vector<BijectionReport> reports;
  reports.reserve(builtin_moves().size());
  for (const MoveTangle& m : builtin_moves()) reports.push_back(check_move(X, m));
  return reports;
}

}  // namespace tvb
