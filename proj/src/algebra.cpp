#include "tvb/algebra.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

namespace tvb {

OperationTable::OperationTable(int order, std::vector<int> cells)
    : order_(order), cells_(std::move(cells)) {
  if (order < 1) throw std::invalid_argument("operation table order must be >= 1");
  if (cells_.size() != static_cast<std::size_t>(order) * order)
    throw std::invalid_argument("operation table cell count does not match order");
  for (int v : cells_)
    if (v < 1 || v > order) throw std::invalid_argument("operation table cell out of range");
}

OperationTable OperationTable::trivial(int order) {
  std::vector<int> cells(static_cast<std::size_t>(order) * order);
  for (int x = 1; x <= order; ++x)
    for (int y = 1; y <= order; ++y) cells[static_cast<std::size_t>(x - 1) * order + (y - 1)] = x;
  return OperationTable(order, std::move(cells));
}

PartialProduct::PartialProduct(int order, std::vector<int> cells)
    : order_(order), cells_(std::move(cells)) {
  if (order < 1) throw std::invalid_argument("product order must be >= 1");
  if (cells_.size() != static_cast<std::size_t>(order) * order)
    throw std::invalid_argument("product cell count does not match order");
  for (int v : cells_)
    if (v < 0 || v > order) throw std::invalid_argument("product cell out of range");
}

PartialProduct PartialProduct::empty(int order) {
  return PartialProduct(order, std::vector<int>(static_cast<std::size_t>(order) * order, kUndefined));
}

std::size_t PartialProduct::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](int v) { return v != kUndefined; }));
}

TwistMap::TwistMap(std::vector<int> image) : image_(std::move(image)) {
  const int n = static_cast<int>(image_.size());
  if (n < 1) throw std::invalid_argument("twist map order must be >= 1");
  for (int v : image_)
    if (v < 1 || v > n) throw std::invalid_argument("twist map value out of range");
  for (int x = 1; x <= n; ++x)
    if (image_[static_cast<std::size_t>(at(x) - 1)] != x)
      throw std::invalid_argument("twist map is not an involution");
}

TwistMap TwistMap::identity(int order) {
  std::vector<int> image(static_cast<std::size_t>(order));
  std::iota(image.begin(), image.end(), 1);
  return TwistMap(std::move(image));
}

bool TwistMap::is_identity() const {
  for (int x = 1; x <= order(); ++x)
    if (at(x) != x) return false;
  return true;
}

TwistedVirtualBikeigebra TwistedVirtualBikeigebra::make(OperationTable under, OperationTable over,
                                                        OperationTable virt, PartialProduct product,
                                                        TwistMap twist) {
  const int n = under.order();
  if (over.order() != n || virt.order() != n || product.order() != n || twist.order() != n)
    throw std::invalid_argument("structure components disagree on order");
  TwistedVirtualBikeigebra X;
  X.under = std::move(under);
  X.over = std::move(over);
  X.virt = std::move(virt);
  X.product = std::move(product);
  X.twist = std::move(twist);
  return X;
}

namespace {

struct AxiomInfo {
  Axiom axiom;
  std::string_view name;
  int arity;
};

constexpr std::array<AxiomInfo, kAxiomCount> kAxiomInfo = {{
    {Axiom::ri_i, "ri.i", 1},
    {Axiom::rii_i, "rii.i", 2},
    {Axiom::rii_ii, "rii.ii", 2},
    {Axiom::rii_iii, "rii.iii", 2},
    {Axiom::rii_iv, "rii.iv", 2},
    {Axiom::vii_i, "vii.i", 2},
    {Axiom::vii_ii, "vii.ii", 2},
    {Axiom::riii_i, "riii.i", 3},
    {Axiom::riii_ii, "riii.ii", 3},
    {Axiom::riii_iii, "riii.iii", 3},
    {Axiom::viii_i, "viii.i", 3},
    {Axiom::viii_ii, "viii.ii", 3},
    {Axiom::viii_iii, "viii.iii", 3},
    {Axiom::v_i, "v.i", 3},
    {Axiom::riv_i, "riv.i", 2},
    {Axiom::riv_ii, "riv.ii", 2},
    {Axiom::rv_i, "rv.i", 3},
    {Axiom::rv_ii, "rv.ii", 3},
    {Axiom::rv_iii, "rv.iii", 3},
    {Axiom::rv_iv, "rv.iv", 3},
    {Axiom::tv_i, "tv.i", 3},
    {Axiom::tv_ii, "tv.ii", 3},
    {Axiom::tii_i, "tii.i", 2},
    {Axiom::tii_ii, "tii.ii", 2},
    {Axiom::tiii_i, "tiii.i", 2},
    {Axiom::tiii_ii, "tiii.ii", 2},
    {Axiom::tiv_i, "tiv.i", 2},
    {Axiom::cyclic, "CYCLIC", 2},
    {Axiom::assoc, "ASSOC", 3},
    {Axiom::involution, "INVOLUTION", 1},
}};

// Strict evaluation: any undefined argument makes the result undefined.
inline int ev(const OperationTable& t, int a, int b) {
  return (a != kUndefined && b != kUndefined) ? t.at(a, b) : kUndefined;
}
inline int ev(const PartialProduct& p, int a, int b) {
  return (a != kUndefined && b != kUndefined) ? p.at(a, b) : kUndefined;
}
inline int ev(const TwistMap& t, int a) { return a != kUndefined ? t.at(a) : kUndefined; }

struct Sides {
  int left;
  int right;
  bool applicable;  // false = instance is vacuous
};

// Evaluates one axiom instance. Axioms whose two sides are product-valued
// are compared under Kleene equality (undefined = undefined is fine);
// rv.iii, rv.iv and tv.ii apply only where the inner product is defined,
// since the vertex sits on both sides of the corresponding move and an
// undefined product already rules out colorings of either side.
Sides eval_axiom(const TwistedVirtualBikeigebra& X, Axiom a, int x, int y, int z) {
  const OperationTable& u = X.under;
  const OperationTable& o = X.over;
  const OperationTable& v = X.virt;
  const PartialProduct& p = X.product;
  const TwistMap& T = X.twist;
  switch (a) {
    case Axiom::ri_i:
      return {u.at(x, x), o.at(x, x), true};
    case Axiom::rii_i:
      return {u.at(u.at(x, y), y), x, true};
    case Axiom::rii_ii:
      return {o.at(o.at(x, y), y), x, true};
    case Axiom::rii_iii:
      return {u.at(x, o.at(y, x)), u.at(x, y), true};
    case Axiom::rii_iv:
      return {o.at(x, u.at(y, x)), o.at(x, y), true};
    case Axiom::vii_i:
      return {v.at(v.at(x, y), y), x, true};
    case Axiom::vii_ii:
      return {v.at(x, v.at(y, x)), v.at(x, y), true};
    case Axiom::riii_i:
      return {u.at(u.at(x, y), u.at(z, y)), u.at(u.at(x, z), o.at(y, z)), true};
    case Axiom::riii_ii:
      return {o.at(u.at(x, y), u.at(z, y)), u.at(o.at(x, z), o.at(y, z)), true};
    case Axiom::riii_iii:
      return {o.at(o.at(x, y), o.at(z, y)), o.at(o.at(x, z), u.at(y, z)), true};
    case Axiom::viii_i:
      return {v.at(u.at(x, y), v.at(z, y)), u.at(v.at(x, z), v.at(y, z)), true};
    case Axiom::viii_ii:
      return {v.at(o.at(x, y), v.at(z, y)), o.at(v.at(x, z), v.at(y, z)), true};
    case Axiom::viii_iii:
      return {v.at(v.at(x, y), o.at(z, y)), v.at(v.at(x, z), u.at(y, z)), true};
    case Axiom::v_i:
      return {v.at(v.at(x, y), v.at(z, y)), v.at(v.at(x, z), v.at(y, z)), true};
    case Axiom::riv_i:
      return {p.at(x, y), p.at(o.at(y, x), u.at(x, y)), true};
    case Axiom::riv_ii:
      return {p.at(x, y), p.at(u.at(y, x), o.at(x, y)), true};
    case Axiom::rv_i:
      return {ev(u, p.at(x, y), z), p.at(u.at(x, z), u.at(y, o.at(z, x))), true};
    case Axiom::rv_ii:
      return {ev(o, p.at(x, y), z), p.at(o.at(x, z), o.at(y, u.at(z, x))), true};
    case Axiom::rv_iii: {
      const int yz = p.at(y, z);
      if (yz == kUndefined) return {kUndefined, kUndefined, false};
      return {u.at(x, yz), u.at(u.at(x, y), z), true};
    }
    case Axiom::rv_iv: {
      const int yz = p.at(y, z);
      if (yz == kUndefined) return {kUndefined, kUndefined, false};
      return {o.at(x, yz), o.at(o.at(x, y), z), true};
    }
    case Axiom::tv_i:
      return {ev(v, p.at(x, y), z), p.at(v.at(x, z), v.at(y, v.at(z, x))), true};
    case Axiom::tv_ii: {
      const int yz = p.at(y, z);
      if (yz == kUndefined) return {kUndefined, kUndefined, false};
      return {v.at(x, yz), v.at(v.at(x, y), z), true};
    }
    case Axiom::tii_i:
      return {T.at(v.at(x, y)), v.at(T.at(x), y), true};
    case Axiom::tii_ii:
      return {v.at(x, y), v.at(x, T.at(y)), true};
    case Axiom::tiii_i:
      return {T.at(u.at(T.at(x), T.at(y))),
              v.at(o.at(v.at(x, y), v.at(y, x)), u.at(v.at(y, x), v.at(x, y))), true};
    case Axiom::tiii_ii:
      return {T.at(o.at(T.at(x), T.at(y))),
              v.at(u.at(v.at(x, y), v.at(y, x)), o.at(v.at(y, x), v.at(x, y))), true};
    case Axiom::tiv_i:
      return {ev(T, p.at(T.at(x), T.at(y))), p.at(v.at(y, x), v.at(x, y)), true};
    case Axiom::involution:
      return {T.at(T.at(x)), x, true};
    case Axiom::cyclic:
    case Axiom::assoc:
      break;  // handled below
  }
  if (a == Axiom::assoc) {
    return {ev(p, p.at(x, y), z), ev(p, x, p.at(y, z)), true};
  }
  // CYCLIC, arity 2: with z0 = xy defined, requires y*z0 = x and z0*x = y.
  // The first failing rotation is the one recorded.
  const int z0 = p.at(x, y);
  if (z0 == kUndefined) return {kUndefined, kUndefined, false};
  const int yz = p.at(y, z0);
  if (yz != x) return {yz, x, true};
  const int zx = p.at(z0, x);
  if (zx != y) return {zx, y, true};
  return {x, x, true};  // satisfied
}

template <typename Emit>
void check_axiom_instances(const TwistedVirtualBikeigebra& X, Axiom a, int x_lo, int x_hi,
                           Emit&& emit) {
  const int n = X.order();
  const int arity = axiom_arity(a);
  for (int x = x_lo; x <= x_hi; ++x) {
    if (arity == 1) {
      Sides s = eval_axiom(X, a, x, 0, 0);
      if (s.applicable && s.left != s.right)
        if (!emit(AxiomViolation{a, {x, 0, 0}, 1, s.left, s.right})) return;
      continue;
    }
    for (int y = 1; y <= n; ++y) {
      if (arity == 2) {
        Sides s = eval_axiom(X, a, x, y, 0);
        if (s.applicable && s.left != s.right)
          if (!emit(AxiomViolation{a, {x, y, 0}, 2, s.left, s.right})) return;
        continue;
      }
      for (int z = 1; z <= n; ++z) {
        Sides s = eval_axiom(X, a, x, y, z);
        if (s.applicable && s.left != s.right)
          if (!emit(AxiomViolation{a, {x, y, z}, 3, s.left, s.right})) return;
      }
    }
  }
}

}  // namespace

const std::array<Axiom, kAxiomCount>& all_axioms() {
  static const std::array<Axiom, kAxiomCount> axioms = [] {
    std::array<Axiom, kAxiomCount> a{};
    for (int i = 0; i < kAxiomCount; ++i) a[static_cast<std::size_t>(i)] = kAxiomInfo[static_cast<std::size_t>(i)].axiom;
    return a;
  }();
  return axioms;
}

std::string_view axiom_name(Axiom a) { return kAxiomInfo[static_cast<std::size_t>(a)].name; }

std::optional<Axiom> axiom_from_name(std::string_view name) {
  for (const AxiomInfo& info : kAxiomInfo)
    if (info.name == name) return info.axiom;
  return std::nullopt;
}

int axiom_arity(Axiom a) { return kAxiomInfo[static_cast<std::size_t>(a)].arity; }

std::string AxiomViolation::to_string() const {
  std::ostringstream out;
  out << axiom_name(axiom) << " (";
  for (int i = 0; i < witness_size; ++i) {
    if (i) out << ",";
    out << witness[static_cast<std::size_t>(i)];
  }
  out << "): ";
  auto val = [](int v) { return v == kUndefined ? std::string("-") : std::to_string(v); };
  out << val(left) << " != " << val(right);
  return out.str();
}

std::vector<AxiomViolation> verify_all_serial(const TwistedVirtualBikeigebra& X) {
  std::vector<AxiomViolation> out;
  for (Axiom a : all_axioms())
    check_axiom_instances(X, a, 1, X.order(), [&](AxiomViolation v) {
      out.push_back(v);
      return true;
    });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AxiomViolation> verify_all(const TwistedVirtualBikeigebra& X) {
  const int n = X.order();
  std::vector<std::vector<AxiomViolation>> per_slice(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int x = 1; x <= n; ++x) {
    std::vector<AxiomViolation>& local = per_slice[static_cast<std::size_t>(x - 1)];
    for (Axiom a : all_axioms())
      check_axiom_instances(X, a, x, x, [&](AxiomViolation v) {
        local.push_back(v);
        return true;
      });
  }
  std::vector<AxiomViolation> out;
  for (auto& slice : per_slice) out.insert(out.end(), slice.begin(), slice.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_valid(const TwistedVirtualBikeigebra& X) {
  for (Axiom a : all_axioms()) {
    bool clean = true;
    check_axiom_instances(X, a, 1, X.order(), [&](const AxiomViolation&) {
      clean = false;
      return false;
    });
    if (!clean) return false;
  }
  return true;
}

std::vector<AxiomViolation> check_axiom(const TwistedVirtualBikeigebra& X, Axiom a) {
  std::vector<AxiomViolation> out;
  check_axiom_instances(X, a, 1, X.order(), [&](AxiomViolation v) {
    out.push_back(v);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool verify(TwistedVirtualBikeigebra& X) {
  X.verified = verify_all(X).empty();
  return X.verified;
}

TwistedVirtualBikeigebra klein_four(const TwistMap& twist) {
  if (twist.order() != 4) throw std::invalid_argument("klein_four requires a twist map on 4 elements");
  // 1=(0,0), 2=(0,1), 3=(1,0), 4=(1,1); x*y = xor of coordinates.
  PartialProduct product = PartialProduct::empty(4);
  for (int x = 1; x <= 4; ++x)
    for (int y = 1; y <= 4; ++y) product.set(x, y, (((x - 1) ^ (y - 1)) & 3) + 1);
  return TwistedVirtualBikeigebra::make(OperationTable::trivial(4), OperationTable::trivial(4),
                                        OperationTable::trivial(4), std::move(product), twist);
}

TwistedVirtualBikeigebra alexander_candidate(int modulus, int s, int t) {
  if (modulus < 1) throw std::invalid_argument("PARAMS: modulus must be >= 1");
  const int m = modulus;
  auto mod = [m](long long v) { return static_cast<int>(((v % m) + m) % m); };
  s = mod(s);
  t = mod(t);
  if (std::gcd(s, m) != 1 || std::gcd(t, m) != 1)
    throw std::invalid_argument("PARAMS: s and t must be units mod m");
  if (mod(1LL * s * s) != 1 % m || mod(1LL * t * t) != 1 % m)
    throw std::invalid_argument("PARAMS: s^2 and t^2 must be 1 mod m");
  if (mod(1LL * (1 - s) * (s - t)) != 0)
    throw std::invalid_argument("PARAMS: (1-s)(s-t) must be 0 mod m");

  OperationTable under = OperationTable::trivial(m);
  OperationTable over = OperationTable::trivial(m);
  PartialProduct product = PartialProduct::empty(m);
  for (int x = 1; x <= m; ++x) {
    const int rx = x - 1;
    for (int y = 1; y <= m; ++y) {
      const int ry = y - 1;
      under.set(x, y, mod(1LL * t * rx + 1LL * (s - t) * ry) + 1);
      over.set(x, y, mod(1LL * s * rx) + 1);
      product.set(x, y, mod(rx + ry) + 1);
    }
  }
  return TwistedVirtualBikeigebra::make(std::move(under), std::move(over),
                                        OperationTable::trivial(m), std::move(product),
                                        TwistMap::identity(m));
}

bool product_commutative(const PartialProduct& p) {
  for (int x = 1; x <= p.order(); ++x)
    for (int y = x + 1; y <= p.order(); ++y)
      if (p.at(x, y) != p.at(y, x)) return false;
  return true;
}

}  // namespace tvb
