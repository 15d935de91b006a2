#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace revcomp {

// Dense n x n matrix of reals, row-major.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n);
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  double& at(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }

  SquareMatrix transpose() const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

// A bijection on {0..n-1}. Text and one-line interfaces are 1-based to match
// the usual notation; the stored images are 0-based.
//
// Matrix convention: M[i][j] = 1 iff i maps to j.
class Permutation {
 public:
  static Permutation identity(std::size_t n);
  // `one_based[i]` is the image of index i + 1. Throws NotBijective.
  static Permutation from_one_line(std::span<const std::size_t> one_based);
  static Permutation from_one_line(std::initializer_list<std::size_t> one_based);
  // Throws NotBijective.
  static Permutation from_images(std::vector<std::size_t> zero_based);

  std::size_t degree() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const noexcept { return images_; }
  std::vector<std::size_t> one_line() const;

  SquareMatrix matrix() const;
  bool is_identity() const noexcept;

  // Disjoint cycles, fixed points included, each starting at its least
  // element and ordered by that element. 0-based.
  std::vector<std::vector<std::size_t>> cycles() const;

  // The permutation applied `exponent` times.
  Permutation power(std::uint64_t exponent) const;

  auto operator<=>(const Permutation&) const = default;

 private:
  explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {}
  std::vector<std::size_t> images_;
};

inline constexpr std::size_t kMaxEnumerationDegree = 8;

// Throws NotSquare / NotZeroOne / NotBijective.
Permutation perm_from_matrix(const SquareMatrix& m);

// Apply `first`, then `second`: result(i) = second(first(i)).
// Throws DegreeMismatch.
Permutation compose(const Permutation& first, const Permutation& second);

Permutation inverse(const Permutation& p);

// Least m >= 1 with p^m = identity (lcm of the cycle lengths).
std::uint64_t order(const Permutation& p);

// All n! permutations of degree n in lexicographic order of their one-line
// maps. Throws DegreeTooLarge above kMaxEnumerationDegree.
std::vector<Permutation> enumerate_permutations(std::size_t n);

bool is_doubly_stochastic(const SquareMatrix& m, double tol);

// "3,2,4,1"
Permutation parse_one_line(std::string_view text);
std::string format_one_line(const Permutation& p);
// Cycle notation with fixed points omitted, "(1 3 4)"; identity is "()".
std::string format_cycles(const Permutation& p);

// First line n, then n rows of whitespace-separated entries.
SquareMatrix parse_matrix(std::string_view text);
std::string format_matrix(const SquareMatrix& m);

}  // namespace revcomp
