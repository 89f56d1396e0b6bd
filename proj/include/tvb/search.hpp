#ifndef TVB_SEARCH_HPP
#define TVB_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tvb/algebra.hpp"

// Exhaustive enumeration of twisted virtual bikeigebra structures of small
// order by staged extension: bikei pair -> virtual operation -> partial
// product -> twist map, pruning each stage against the axioms it can
// already decide.

namespace tvb {

enum class Stage { Bikei, Virtual, Product, Full };

std::string_view stage_name(Stage s);
std::optional<Stage> stage_from_name(std::string_view name);

// Full enumeration is practical up to order 5, bikei-only up to order 6;
// larger orders need SearchFilter::force.
inline constexpr int kMaxFullOrder = 5;
inline constexpr int kMaxBikeiOrder = 6;

struct SearchFilter {
  int order = 1;
  Stage stage = Stage::Full;
  bool require_partial_product = false;   // at least one undefined cell
  bool require_nontrivial_twist = false;  // twist != identity
  bool iso_reduce = false;
  bool force = false;

  void validate() const;  // throws std::invalid_argument
};

struct CensusEntry {
  Stage stage = Stage::Full;
  // Components beyond the stage hold placeholders (trivial virt, empty
  // product, identity twist) and are not serialized.
  TwistedVirtualBikeigebra structure;
  std::string canonical_key;  // lexicographically minimal relabeling
  int automorphisms = 0;
};

// Stage-aware row serialization: blocks up to the stage, '|' separated.
std::string census_serialize(const TwistedVirtualBikeigebra& X, Stage stage);
std::string canonical_key(const TwistedVirtualBikeigebra& X, Stage stage);
int automorphism_count(const TwistedVirtualBikeigebra& X, Stage stage);
std::uint64_t fnv1a64(std::string_view text);

// Relabels elements by a permutation (perm[x-1] is the new name of x).
TwistedVirtualBikeigebra relabel(const TwistedVirtualBikeigebra& X, const std::vector<int>& perm);

// All involutions of {1..n} in lexicographic image order.
std::vector<TwistMap> involutions(int order);

// (under, over) pairs satisfying the classical axioms
// (ri.i, rii.i-iv, riii.i-iii), emitted in a fixed deterministic order.
void enumerate_bikei(int order,
                     const std::function<void(const OperationTable&, const OperationTable&)>& sink);

// Virtual operations compatible with a bikei pair
// (vii.i-ii, viii.i-iii, v.i).
void extend_virtual(const OperationTable& under, const OperationTable& over,
                    const std::function<void(const OperationTable&)>& sink);

// Partial products compatible with the three operations (CYCLIC, ASSOC,
// riv.i-ii, rv.i-iv, tv.i-ii); the empty product always comes first.
void extend_products(const OperationTable& under, const OperationTable& over,
                     const OperationTable& virt,
                     const std::function<void(const PartialProduct&)>& sink);

// Twist maps compatible with the rest (tii.i-ii, tiii.i-ii, tiv.i).
void extend_twists(const OperationTable& under, const OperationTable& over,
                   const OperationTable& virt, const PartialProduct& product,
                   const std::function<void(const TwistMap&)>& sink);

// Composition of the stages. Entries are sorted by serialized form, or by
// canonical key with one representative per class when iso_reduce is set;
// output is identical for any OpenMP worker count.
std::vector<CensusEntry> enumerate_all(const SearchFilter& filter);

struct CensusSummary {
  int order = 0;
  std::uint64_t raw = 0;
  std::uint64_t iso = 0;  // meaningful when iso_reduce
};

// Census text: per structure a `# n=<order> key=<hash>` header and the
// serialized rows, blank-line separated. The records mode emits one
// `structure ...` line per entry with named fields.
std::string census_to_text(const std::vector<CensusEntry>& entries, bool records_mode);

}  // namespace tvb

#endif  // TVB_SEARCH_HPP
