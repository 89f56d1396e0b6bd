#ifndef TVB_MOVES_HPP
#define TVB_MOVES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tvb/algebra.hpp"
#include "tvb/coloring.hpp"
#include "tvb/diagram.hpp"

// Reidemeister moves as pairs of boundary-labeled tangles. For a twisted
// virtual bikeigebra the colorings of the two sides of every move are in
// one-to-one correspondence; check_move verifies this exhaustively over
// all boundary assignments.

namespace tvb {

struct MoveTangle {
  std::string label;
  Tangle left;
  Tangle right;
  std::vector<std::string> boundary;  // shared boundary variable names
};

struct Mismatch {
  std::vector<int> boundary;  // values of the boundary variables
  std::uint64_t left;
  std::uint64_t right;

  bool operator==(const Mismatch&) const = default;
};

struct BijectionReport {
  std::string label;
  std::uint64_t boundary_count = 0;      // n^|boundary| assignments examined
  std::uint64_t left_extensions = 0;     // total over all boundary assignments
  std::uint64_t right_extensions = 0;
  std::uint64_t max_left = 0;            // largest per-boundary extension count
  std::uint64_t max_right = 0;
  std::vector<Mismatch> mismatches;      // lexicographic boundary order

  bool clean() const noexcept { return mismatches.empty(); }
  std::string to_line() const;
};

// The fixed library of 15 moves: rI, rII, rIII, rIV.u, rIV.o, rV,
// vI, vII, vIII, v, tI, tII, tIII, tIV, tV.
const std::vector<MoveTangle>& builtin_moves();
const MoveTangle* find_move(std::string_view label);

BijectionReport check_move(const TwistedVirtualBikeigebra& X, const MoveTangle& move);
BijectionReport check_move_serial(const TwistedVirtualBikeigebra& X, const MoveTangle& move);
std::vector<BijectionReport> check_all_moves(const TwistedVirtualBikeigebra& X);

}  // namespace tvb

#endif  // TVB_MOVES_HPP
