#ifndef TVB_COLORING_HPP
#define TVB_COLORING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tvb/algebra.hpp"
#include "tvb/diagram.hpp"

// Counting and listing colorings of an equation system by a twisted
// virtual bikeigebra. The count over all semiarcs of a diagram is the
// integer coloring invariant of the underlying link.

namespace tvb {

// A total assignment of elements to variables, reported as
// (label, value) pairs sorted by label.
using Coloring = std::vector<std::pair<std::string, int>>;

class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

class NotVerified : public std::runtime_error {
public:
  explicit NotVerified(const std::string& what) : std::runtime_error(what) {}
};

struct ColoringOptions {
  // Check the structure with verify_all first unless it is already tagged;
  // disable for experiments on non-structures.
  bool verify_structure = true;
  // Evaluation budget for the brute-force oracle (number of assignments).
  // Overridden by the TVB_EVAL_BUDGET environment variable when set.
  std::uint64_t budget = 100'000'000;
};

std::uint64_t effective_budget(const ColoringOptions& opts);

// Exact number of satisfying total assignments. Directional propagation
// over backtracking; the result does not depend on heuristic choices or
// on the number of OpenMP workers.
std::uint64_t count_colorings(const EquationSystem& system, const TwistedVirtualBikeigebra& X,
                              const ColoringOptions& opts = {});
std::uint64_t count_colorings_serial(const EquationSystem& system,
                                     const TwistedVirtualBikeigebra& X,
                                     const ColoringOptions& opts = {});

// All colorings, sorted lexicographically by label then value.
std::vector<Coloring> list_colorings(const EquationSystem& system,
                                     const TwistedVirtualBikeigebra& X,
                                     const ColoringOptions& opts = {});

// Independent oracle: exhausts all n^|vars| assignments with no
// propagation. Throws BudgetExceeded past the evaluation budget.
std::uint64_t brute_force_count(const EquationSystem& system, const TwistedVirtualBikeigebra& X,
                                const ColoringOptions& opts = {});
std::uint64_t brute_force_count_serial(const EquationSystem& system,
                                       const TwistedVirtualBikeigebra& X,
                                       const ColoringOptions& opts = {});

// True iff at least one coloring exists; stops at the first one found.
bool is_colorable(const EquationSystem& system, const TwistedVirtualBikeigebra& X,
                  const ColoringOptions& opts = {});

// Evaluates a term under a total assignment (values indexed by variable);
// returns kUndefined when evaluation passes through an undefined product
// cell.
int eval_term(const Term& term, const TwistedVirtualBikeigebra& X, const std::vector<int>& values);

// Satisfying extensions of a fixed partial assignment (0 = unassigned) to
// the remaining variables. Used by the move-bijection checks.
std::uint64_t count_extensions(const EquationSystem& system, const TwistedVirtualBikeigebra& X,
                               const std::vector<int>& partial);

}  // namespace tvb

#endif  // TVB_COLORING_HPP
