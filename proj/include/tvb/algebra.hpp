#ifndef TVB_ALGEBRA_HPP
#define TVB_ALGEBRA_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Finite twisted virtual bikeigebras as operation tables.
//
// A structure on X = {1,..,n} consists of three total binary operations
// (under, over, virt), one partially defined binary operation (the vertex
// product) and an involution (the twist map). Elements are 1-based; the
// value 0 is the sentinel for an undefined product cell.

namespace tvb {

inline constexpr int kUndefined = 0;

class ParseError : public std::runtime_error {
public:
  ParseError(std::string code, int line, int col, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)), line_(line), col_(col) {}
  const std::string& code() const noexcept { return code_; }
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

private:
  std::string code_;
  int line_;
  int col_;
};

// Total n x n table; cell values in 1..n.
class OperationTable {
public:
  OperationTable() = default;
  OperationTable(int order, std::vector<int> cells);

  // x op y = x for all x, y.
  static OperationTable trivial(int order);

  int order() const noexcept { return order_; }
  int at(int x, int y) const { return cells_[idx(x, y)]; }
  void set(int x, int y, int v) { cells_[idx(x, y)] = v; }
  const std::vector<int>& cells() const noexcept { return cells_; }

  bool operator==(const OperationTable&) const = default;

private:
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(x - 1) * order_ + (y - 1); }
  int order_ = 0;
  std::vector<int> cells_;
};

// Partial n x n table; cell values in 1..n or kUndefined.
class PartialProduct {
public:
  PartialProduct() = default;
  PartialProduct(int order, std::vector<int> cells);

  static PartialProduct empty(int order);

  int order() const noexcept { return order_; }
  // 0 means the cell is undefined.
  int at(int x, int y) const { return cells_[idx(x, y)]; }
  std::optional<int> defined_at(int x, int y) const {
    int v = at(x, y);
    return v == kUndefined ? std::nullopt : std::optional<int>(v);
  }
  void set(int x, int y, int v) { cells_[idx(x, y)] = v; }
  const std::vector<int>& cells() const noexcept { return cells_; }
  std::size_t defined_count() const;

  bool operator==(const PartialProduct&) const = default;

private:
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(x - 1) * order_ + (y - 1); }
  int order_ = 0;
  std::vector<int> cells_;
};

// Involution of {1,..,n}; the involution property is enforced at construction.
class TwistMap {
public:
  TwistMap() = default;
  explicit TwistMap(std::vector<int> image);

  static TwistMap identity(int order);

  int order() const noexcept { return static_cast<int>(image_.size()); }
  int at(int x) const { return image_[static_cast<std::size_t>(x - 1)]; }
  const std::vector<int>& image() const noexcept { return image_; }
  bool is_identity() const;

  bool operator==(const TwistMap&) const = default;

private:
  std::vector<int> image_;
};

enum class Axiom : int {
  ri_i,
  rii_i,
  rii_ii,
  rii_iii,
  rii_iv,
  vii_i,
  vii_ii,
  riii_i,
  riii_ii,
  riii_iii,
  viii_i,
  viii_ii,
  viii_iii,
  v_i,
  riv_i,
  riv_ii,
  rv_i,
  rv_ii,
  rv_iii,
  rv_iv,
  tv_i,
  tv_ii,
  tii_i,
  tii_ii,
  tiii_i,
  tiii_ii,
  tiv_i,
  cyclic,
  assoc,
  involution,
};

inline constexpr int kAxiomCount = 30;

const std::array<Axiom, kAxiomCount>& all_axioms();
std::string_view axiom_name(Axiom a);
std::optional<Axiom> axiom_from_name(std::string_view name);
// Number of quantified elements: 1, 2 or 3.
int axiom_arity(Axiom a);

struct AxiomViolation {
  Axiom axiom{};
  std::array<int, 3> witness{0, 0, 0};
  int witness_size = 0;
  int left = 0;   // kUndefined or element value
  int right = 0;  // kUndefined or element value

  friend bool operator==(const AxiomViolation& a, const AxiomViolation& b) = default;
  friend bool operator<(const AxiomViolation& a, const AxiomViolation& b) {
    if (a.axiom != b.axiom) return static_cast<int>(a.axiom) < static_cast<int>(b.axiom);
    return a.witness < b.witness;
  }
  std::string to_string() const;
};

struct TwistedVirtualBikeigebra {
  OperationTable under;
  OperationTable over;
  OperationTable virt;
  PartialProduct product;
  TwistMap twist;
  // Set by verify(); a tagged structure has passed verify_all with no
  // violations and callers may skip re-verification.
  bool verified = false;

  int order() const noexcept { return under.order(); }

  // Validates that all five components share the same order.
  static TwistedVirtualBikeigebra make(OperationTable under, OperationTable over,
                                       OperationTable virt, PartialProduct product,
                                       TwistMap twist);
};

// Exhaustive axiom check. Returns every violation, sorted by
// (axiom, witness); the list is empty iff the structure is a twisted
// virtual bikeigebra. The OpenMP version partitions the witness space and
// produces bit-identical output to the serial reference.
std::vector<AxiomViolation> verify_all(const TwistedVirtualBikeigebra& X);
std::vector<AxiomViolation> verify_all_serial(const TwistedVirtualBikeigebra& X);

// Fail-fast validity check; same empty/nonempty outcome as verify_all.
bool is_valid(const TwistedVirtualBikeigebra& X);

// Violations of a single axiom only. verify_all equals the concatenation
// of check_axiom over all_axioms() in order.
std::vector<AxiomViolation> check_axiom(const TwistedVirtualBikeigebra& X, Axiom a);

// Runs verify_all and tags the structure; returns true iff clean.
bool verify(TwistedVirtualBikeigebra& X);

// Candidate structure on the Klein four group Z2 (+) Z2 with trivial
// operations and total product x + y. Elements are identified with
// 1=(0,0), 2=(0,1), 3=(1,0), 4=(1,1). The caller runs verify_all to test
// whether T is admissible.
TwistedVirtualBikeigebra klein_four(const TwistMap& twist);

// Candidate structure with Alexander operations x under y = t*x + (s-t)*y
// and x over y = s*x over Z_m, trivial virtual operation, total product
// x + y and identity twist. Element i encodes the residue i - 1.
// Throws std::invalid_argument (code PARAMS) unless s^2 = t^2 = 1 and
// (1-s)(s-t) = 0 mod m with s, t units.
TwistedVirtualBikeigebra alexander_candidate(int modulus, int s, int t);

// Diagnostic only; commutativity of the product is not an axiom.
bool product_commutative(const PartialProduct& p);

// ---- block-matrix text format ----------------------------------------
//
// One row per element with 4n+1 whitespace-separated fields: n cells for
// under, n for over, n for virt, n for the product ('-' marks an undefined
// cell), then T(row). '|' separators, brackets and '#' comments are
// ignored on input; the serializer emits single spaces with '|' between
// blocks.

TwistedVirtualBikeigebra parse_structure(std::string_view text);
TwistedVirtualBikeigebra load_structure(const std::filesystem::path& path);
std::string serialize_structure(const TwistedVirtualBikeigebra& X);

}  // namespace tvb

#endif  // TVB_ALGEBRA_HPP
