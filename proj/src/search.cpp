#include "tvb/search.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

namespace tvb {

namespace {

// Table view during staged construction: columns 1..placed are known,
// everything else reads as -1. Lookups propagate -1.
struct ColumnView {
  const OperationTable& table;
  int placed;
  int at(int x, int y) const {
    if (x < 0 || y < 0) return -1;
    return y <= placed ? table.at(x, y) : -1;
  }
};

bool known_neq(int a, int b) { return a > 0 && b > 0 && a != b; }

// Classical axioms decidable from the placed columns. rii.i and rii.ii
// hold by construction (columns are involutions).
bool classical_partial_ok(const ColumnView& u, const ColumnView& o, int n) {
  for (int x = 1; x <= n; ++x)
    if (known_neq(u.at(x, x), o.at(x, x))) return false;  // ri.i
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) {
      if (known_neq(u.at(x, o.at(y, x)), u.at(x, y))) return false;  // rii.iii
      if (known_neq(o.at(x, u.at(y, x)), o.at(x, y))) return false;  // rii.iv
    }
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int z = 1; z <= n; ++z) {
        if (known_neq(u.at(u.at(x, y), u.at(z, y)), u.at(u.at(x, z), o.at(y, z))))
          return false;  // riii.i
        if (known_neq(o.at(u.at(x, y), u.at(z, y)), u.at(o.at(x, z), o.at(y, z))))
          return false;  // riii.ii
        if (known_neq(o.at(o.at(x, y), o.at(z, y)), o.at(o.at(x, z), u.at(y, z))))
          return false;  // riii.iii
      }
  return true;
}

// Virtual axioms decidable from the placed virt columns; under/over are
// complete. vii.i holds by construction.
bool virtual_partial_ok(const OperationTable& under, const OperationTable& over,
                        const ColumnView& v, int n) {
  auto u = [&](int x, int y) { return (x > 0 && y > 0) ? under.at(x, y) : -1; };
  auto o = [&](int x, int y) { return (x > 0 && y > 0) ? over.at(x, y) : -1; };
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      if (known_neq(v.at(x, v.at(y, x)), v.at(x, y))) return false;  // vii.ii
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int z = 1; z <= n; ++z) {
        if (known_neq(v.at(u(x, y), v.at(z, y)), u(v.at(x, z), v.at(y, z))))
          return false;  // viii.i
        if (known_neq(v.at(o(x, y), v.at(z, y)), o(v.at(x, z), v.at(y, z))))
          return false;  // viii.ii
        if (known_neq(v.at(v.at(x, y), o(z, y)), v.at(v.at(x, z), u(y, z))))
          return false;  // viii.iii
        if (known_neq(v.at(v.at(x, y), v.at(z, y)), v.at(v.at(x, z), v.at(y, z))))
          return false;  // v.i
      }
  return true;
}

// Involutions as column images, lexicographic.
void involutions_rec(int n, std::vector<int>& image, std::vector<std::vector<int>>& out) {
  int x = 0;
  while (x < n && image[static_cast<std::size_t>(x)] != 0) ++x;
  if (x == n) {
    out.push_back(image);
    return;
  }
  for (int y = x; y < n; ++y) {
    if (image[static_cast<std::size_t>(y)] != 0) continue;
    image[static_cast<std::size_t>(x)] = y + 1;
    image[static_cast<std::size_t>(y)] = x + 1;
    involutions_rec(n, image, out);
    image[static_cast<std::size_t>(x)] = 0;
    if (y != x) image[static_cast<std::size_t>(y)] = 0;
  }
}

std::vector<std::vector<int>> involution_images(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> image(static_cast<std::size_t>(n), 0);
  involutions_rec(n, image, out);
  std::sort(out.begin(), out.end());
  return out;
}

void set_column(OperationTable& t, int col, const std::vector<int>& image) {
  for (int x = 1; x <= t.order(); ++x) t.set(x, col, image[static_cast<std::size_t>(x - 1)]);
}

// ---- partial-product stage --------------------------------------------

// Cells: -1 undecided, 0 undefined, >0 value.
struct ProductState {
  int n;
  std::vector<int> cells;

  int idx(int x, int y) const { return (x - 1) * n + (y - 1); }
  int at(int x, int y) const { return cells[static_cast<std::size_t>(idx(x, y))]; }

  // Strict evaluation over decided cells; -1 when undecidable.
  int pval(int x, int y) const {
    if (x == -1 || y == -1) return -1;
    if (x == 0 || y == 0) return 0;
    return at(x, y);
  }
};

bool product_partial_ok(const OperationTable& under, const OperationTable& over,
                        const OperationTable& virt, const ProductState& s) {
  const int n = s.n;
  auto known_bad = [](int a, int b) { return a != -1 && b != -1 && a != b; };
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) {
      // riv.i / riv.ii (Kleene)
      if (known_bad(s.pval(x, y), s.pval(over.at(y, x), under.at(x, y)))) return false;
      if (known_bad(s.pval(x, y), s.pval(under.at(y, x), over.at(x, y)))) return false;
      for (int z = 1; z <= n; ++z) {
        // ASSOC (Kleene)
        {
          const int xy = s.pval(x, y);
          const int lhs = xy == -1 ? -1 : (xy == 0 ? 0 : s.pval(xy, z));
          const int yz = s.pval(y, z);
          const int rhs = yz == -1 ? -1 : (yz == 0 ? 0 : s.pval(x, yz));
          if (known_bad(lhs, rhs)) return false;
        }
        // rv.i / rv.ii / tv.i (Kleene; left side is total once xy decides)
        {
          const int xy = s.pval(x, y);
          const int l1 = xy == -1 ? -1 : (xy == 0 ? 0 : under.at(xy, z));
          if (known_bad(l1, s.pval(under.at(x, z), under.at(y, over.at(z, x))))) return false;
          const int l2 = xy == -1 ? -1 : (xy == 0 ? 0 : over.at(xy, z));
          if (known_bad(l2, s.pval(over.at(x, z), over.at(y, under.at(z, x))))) return false;
          const int l3 = xy == -1 ? -1 : (xy == 0 ? 0 : virt.at(xy, z));
          if (known_bad(l3, s.pval(virt.at(x, z), virt.at(y, virt.at(z, x))))) return false;
        }
        // rv.iii / rv.iv / tv.ii (guarded on yz defined)
        {
          const int yz = s.pval(y, z);
          if (yz > 0) {
            if (under.at(x, yz) != under.at(under.at(x, y), z)) return false;
            if (over.at(x, yz) != over.at(over.at(x, y), z)) return false;
            if (virt.at(x, yz) != virt.at(virt.at(x, y), z)) return false;
          }
        }
      }
    }
  return true;
}

struct ProductSearch {
  const OperationTable& under;
  const OperationTable& over;
  const OperationTable& virt;
  const std::function<void(const PartialProduct&)>& sink;
  ProductState state;

  void run() {
    state.n = under.order();
    state.cells.assign(static_cast<std::size_t>(state.n) * state.n, -1);
    descend(0);
  }

  // Sets cell to `value` recording the change; false on conflict.
  bool assign(int x, int y, int value, std::vector<int>& trail) {
    const int cur = state.at(x, y);
    if (cur != -1) return cur == value;
    state.cells[static_cast<std::size_t>(state.idx(x, y))] = value;
    trail.push_back(state.idx(x, y));
    return true;
  }

  void descend(int cursor) {
    const int total = state.n * state.n;
    while (cursor < total && state.cells[static_cast<std::size_t>(cursor)] != -1) ++cursor;
    if (cursor == total) {
      sink(PartialProduct(state.n, state.cells));
      return;
    }
    const int x = cursor / state.n + 1;
    const int y = cursor % state.n + 1;
    for (int value = 0; value <= state.n; ++value) {
      std::vector<int> trail;
      bool ok = assign(x, y, value, trail);
      if (ok && value > 0) {
        // cyclic closure: xy=z forces yz=x and zx=y
        ok = assign(y, value, x, trail) && assign(value, x, y, trail);
      }
      if (ok && product_partial_ok(under, over, virt, state)) descend(cursor + 1);
      for (int i : trail) state.cells[static_cast<std::size_t>(i)] = -1;
    }
  }
};

TwistedVirtualBikeigebra with_placeholders(OperationTable under, OperationTable over,
                                           Stage stage, OperationTable virt,
                                           PartialProduct product, TwistMap twist) {
  const int n = under.order();
  if (stage < Stage::Virtual) virt = OperationTable::trivial(n);
  if (stage < Stage::Product) product = PartialProduct::empty(n);
  if (stage < Stage::Full) twist = TwistMap::identity(n);
  return TwistedVirtualBikeigebra::make(std::move(under), std::move(over), std::move(virt),
                                        std::move(product), std::move(twist));
}

void append_row(std::ostringstream& out, const std::vector<int>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    if (row[i] == kUndefined)
      out << '-';
    else
      out << row[i];
  }
}

}  // namespace

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::Bikei: return "bikei";
    case Stage::Virtual: return "virtual";
    case Stage::Product: return "product";
    case Stage::Full: return "full";
  }
  return "full";
}

std::optional<Stage> stage_from_name(std::string_view name) {
  if (name == "bikei") return Stage::Bikei;
  if (name == "virtual") return Stage::Virtual;
  if (name == "product") return Stage::Product;
  if (name == "full") return Stage::Full;
  return std::nullopt;
}

void SearchFilter::validate() const {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const int bound = stage == Stage::Bikei ? kMaxBikeiOrder : kMaxFullOrder;
  if (order > bound && !force)
    throw std::invalid_argument("order " + std::to_string(order) + " exceeds the practical bound " +
                                std::to_string(bound) + " for stage '" +
                                std::string(stage_name(stage)) + "' (use force to override)");
  if (require_partial_product && stage < Stage::Product)
    throw std::invalid_argument("require_partial_product needs stage 'product' or 'full'");
  if (require_nontrivial_twist && stage != Stage::Full)
    throw std::invalid_argument("require_nontrivial_twist needs stage 'full'");
}

std::vector<TwistMap> involutions(int order) {
  std::vector<TwistMap> out;
  for (auto& image : involution_images(order)) out.emplace_back(image);
  return out;
}

void enumerate_bikei(int order,
                     const std::function<void(const OperationTable&, const OperationTable&)>& sink) {
  const auto columns = involution_images(order);
  OperationTable under = OperationTable::trivial(order);
  OperationTable over = OperationTable::trivial(order);

  auto recurse = [&](auto&& self, int placed) -> void {
    if (placed == order) {
      sink(under, over);
      return;
    }
    const int col = placed + 1;
    for (const auto& uc : columns) {
      set_column(under, col, uc);
      for (const auto& oc : columns) {
        set_column(over, col, oc);
        if (classical_partial_ok({under, col}, {over, col}, order)) self(self, col);
      }
    }
  };
  recurse(recurse, 0);
}

void extend_virtual(const OperationTable& under, const OperationTable& over,
                    const std::function<void(const OperationTable&)>& sink) {
  const int order = under.order();
  const auto columns = involution_images(order);
  OperationTable virt = OperationTable::trivial(order);

  auto recurse = [&](auto&& self, int placed) -> void {
    if (placed == order) {
      sink(virt);
      return;
    }
    const int col = placed + 1;
    for (const auto& vc : columns) {
      set_column(virt, col, vc);
      if (virtual_partial_ok(under, over, {virt, col}, order)) self(self, col);
    }
  };
  recurse(recurse, 0);
}

void extend_products(const OperationTable& under, const OperationTable& over,
                     const OperationTable& virt,
                     const std::function<void(const PartialProduct&)>& sink) {
  ProductSearch search{under, over, virt, sink, {}};
  search.run();
}

void extend_twists(const OperationTable& under, const OperationTable& over,
                   const OperationTable& virt, const PartialProduct& product,
                   const std::function<void(const TwistMap&)>& sink) {
  for (const TwistMap& twist : involutions(under.order())) {
    TwistedVirtualBikeigebra X =
        TwistedVirtualBikeigebra::make(under, over, virt, product, twist);
    bool ok = true;
    for (Axiom a : {Axiom::tii_i, Axiom::tii_ii, Axiom::tiii_i, Axiom::tiii_ii, Axiom::tiv_i})
      if (!check_axiom(X, a).empty()) {
        ok = false;
        break;
      }
    if (ok) sink(twist);
  }
}

TwistedVirtualBikeigebra relabel(const TwistedVirtualBikeigebra& X, const std::vector<int>& perm) {
  const int n = X.order();
  auto p = [&](int x) { return perm[static_cast<std::size_t>(x - 1)]; };
  OperationTable under = OperationTable::trivial(n);
  OperationTable over = OperationTable::trivial(n);
  OperationTable virt = OperationTable::trivial(n);
  PartialProduct product = PartialProduct::empty(n);
  std::vector<int> twist(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      under.set(p(x), p(y), p(X.under.at(x, y)));
      over.set(p(x), p(y), p(X.over.at(x, y)));
      virt.set(p(x), p(y), p(X.virt.at(x, y)));
      const int c = X.product.at(x, y);
      product.set(p(x), p(y), c == kUndefined ? kUndefined : p(c));
    }
    twist[static_cast<std::size_t>(p(x) - 1)] = p(X.twist.at(x));
  }
  return TwistedVirtualBikeigebra::make(std::move(under), std::move(over), std::move(virt),
                                        std::move(product), TwistMap(std::move(twist)));
}

std::string census_serialize(const TwistedVirtualBikeigebra& X, Stage stage) {
  const int n = X.order();
  std::ostringstream out;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) out << X.under.at(x, y) << ' ';
    out << "| ";
    for (int y = 1; y <= n; ++y) out << X.over.at(x, y) << ' ';
    if (stage >= Stage::Virtual) {
      out << "| ";
      for (int y = 1; y <= n; ++y) out << X.virt.at(x, y) << ' ';
    }
    if (stage >= Stage::Product) {
      out << "| ";
      for (int y = 1; y <= n; ++y) {
        const int v = X.product.at(x, y);
        if (v == kUndefined)
          out << "- ";
        else
          out << v << ' ';
      }
    }
    if (stage == Stage::Full) out << "| " << X.twist.at(x);
    std::string_view line = out.view();
    if (line.back() == ' ') out.seekp(-1, std::ios_base::cur);
    out << '\n';
  }
  return out.str();
}

std::string canonical_key(const TwistedVirtualBikeigebra& X, Stage stage) {
  const int n = X.order();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  std::string best = census_serialize(X, stage);
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::string candidate = census_serialize(relabel(X, perm), stage);
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

int automorphism_count(const TwistedVirtualBikeigebra& X, Stage stage) {
  const int n = X.order();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  const std::string self = census_serialize(X, stage);
  int count = 0;
  do {
    if (census_serialize(relabel(X, perm), stage) == self) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::vector<CensusEntry> enumerate_all(const SearchFilter& filter) {
  filter.validate();
  const int n = filter.order;

  std::vector<std::pair<OperationTable, OperationTable>> pairs;
  enumerate_bikei(n, [&](const OperationTable& u, const OperationTable& o) {
    pairs.emplace_back(u, o);
  });

  std::vector<std::vector<CensusEntry>> buckets(pairs.size());
  const std::int64_t pair_count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < pair_count; ++i) {
    const auto& [under, over] = pairs[static_cast<std::size_t>(i)];
    std::vector<CensusEntry>& out = buckets[static_cast<std::size_t>(i)];
    auto emit = [&](const TwistedVirtualBikeigebra& X) {
      CensusEntry entry;
      entry.stage = filter.stage;
      entry.structure = X;
      out.push_back(std::move(entry));
    };
    if (filter.stage == Stage::Bikei) {
      emit(with_placeholders(under, over, filter.stage, {}, {}, {}));
      continue;
    }
    extend_virtual(under, over, [&](const OperationTable& virt) {
      if (filter.stage == Stage::Virtual) {
        emit(with_placeholders(under, over, filter.stage, virt, {}, {}));
        return;
      }
      extend_products(under, over, virt, [&](const PartialProduct& product) {
        if (filter.require_partial_product && product.defined_count() == static_cast<std::size_t>(n) * n)
          return;
        if (filter.stage == Stage::Product) {
          emit(with_placeholders(under, over, filter.stage, virt, product, {}));
          return;
        }
        extend_twists(under, over, virt, product, [&](const TwistMap& twist) {
          if (filter.require_nontrivial_twist && twist.is_identity()) return;
          TwistedVirtualBikeigebra X =
              TwistedVirtualBikeigebra::make(under, over, virt, product, twist);
          if (!is_valid(X))
            throw std::logic_error("staged search emitted an invalid structure");
          X.verified = true;
          emit(X);
        });
      });
    });
  }

  std::vector<CensusEntry> entries;
  for (auto& bucket : buckets)
    for (auto& e : bucket) entries.push_back(std::move(e));

  for (CensusEntry& e : entries) e.canonical_key = canonical_key(e.structure, e.stage);

  if (filter.iso_reduce) {
    std::sort(entries.begin(), entries.end(), [](const CensusEntry& a, const CensusEntry& b) {
      if (a.canonical_key != b.canonical_key) return a.canonical_key < b.canonical_key;
      return census_serialize(a.structure, a.stage) < census_serialize(b.structure, b.stage);
    });
    std::vector<CensusEntry> reduced;
    for (CensusEntry& e : entries) {
      if (!reduced.empty() && reduced.back().canonical_key == e.canonical_key) continue;
      e.automorphisms = automorphism_count(e.structure, e.stage);
      reduced.push_back(std::move(e));
    }
    return reduced;
  }

  std::sort(entries.begin(), entries.end(), [](const CensusEntry& a, const CensusEntry& b) {
    return census_serialize(a.structure, a.stage) < census_serialize(b.structure, b.stage);
  });
  for (CensusEntry& e : entries) e.automorphisms = automorphism_count(e.structure, e.stage);
  return entries;
}

std::string census_to_text(const std::vector<CensusEntry>& entries, bool records_mode) {
  std::ostringstream out;
  char hex[32];
  for (const CensusEntry& e : entries) {
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(e.canonical_key)));
    if (records_mode) {
      const int n = e.structure.order();
      out << "structure n=" << n << " key=" << hex << " aut=" << e.automorphisms;
      auto block = [&](const char* name, auto cell) {
        out << ' ' << name << '=';
        for (int x = 1; x <= n; ++x) {
          if (x > 1) out << ';';
          std::vector<int> row;
          for (int y = 1; y <= n; ++y) row.push_back(cell(x, y));
          append_row(out, row);
        }
      };
      block("under", [&](int x, int y) { return e.structure.under.at(x, y); });
      block("over", [&](int x, int y) { return e.structure.over.at(x, y); });
      if (e.stage >= Stage::Virtual)
        block("virt", [&](int x, int y) { return e.structure.virt.at(x, y); });
      if (e.stage >= Stage::Product)
        block("product", [&](int x, int y) { return e.structure.product.at(x, y); });
      if (e.stage == Stage::Full) {
        out << " twist=";
        std::vector<int> row;
        for (int x = 1; x <= n; ++x) row.push_back(e.structure.twist.at(x));
        append_row(out, row);
      }
      out << '\n';
    } else {
      out << "# n=" << e.structure.order() << " key=" << hex << '\n';
      out << census_serialize(e.structure, e.stage) << '\n';
    }
  }
  return out.str();
}

}  // namespace tvb
