#include "revcomp/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "revcomp/error.hpp"
#include "revcomp/text.hpp"

namespace revcomp {

SquareMatrix::SquareMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {
  if (n == 0) throw Error(ErrorCode::NotSquare, "matrix dimension must be at least 1");
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::NotSquare, "row " + std::to_string(i + 1) + " has " +
                                            std::to_string(rows[i].size()) +
                                            " entries, expected " +
                                            std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!std::isfinite(rows[i][j])) {
        throw Error(ErrorCode::ParseError, "matrix entries must be finite");
      }
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<std::size_t> zero_based) {
  if (zero_based.empty()) throw Error(ErrorCode::NotBijective, "permutation degree must be at least 1");
  std::vector<bool> seen(zero_based.size(), false);
  for (std::size_t i = 0; i < zero_based.size(); ++i) {
    const std::size_t v = zero_based[i];
    if (v >= zero_based.size()) {
      throw Error(ErrorCode::NotBijective, "image " + std::to_string(v + 1) + " of index " +
                                               std::to_string(i + 1) + " is out of range 1.." +
                                               std::to_string(zero_based.size()));
    }
    if (seen[v]) {
      throw Error(ErrorCode::NotBijective,
                  "value " + std::to_string(v + 1) + " appears more than once");
    }
    seen[v] = true;
  }
  return Permutation(std::move(zero_based));
}

Permutation Permutation::from_one_line(std::span<const std::size_t> one_based) {
  std::vector<std::size_t> images;
  images.reserve(one_based.size());
  for (std::size_t v : one_based) {
    if (v == 0) throw Error(ErrorCode::NotBijective, "one-line maps are 1-based; found 0");
    images.push_back(v - 1);
  }
  return from_images(std::move(images));
}

Permutation Permutation::from_one_line(std::initializer_list<std::size_t> one_based) {
  return from_one_line(std::span<const std::size_t>(one_based.begin(), one_based.size()));
}

std::vector<std::size_t> Permutation::one_line() const {
  std::vector<std::size_t> out(images_);
  for (auto& v : out) ++v;
  return out;
}

SquareMatrix Permutation::matrix() const {
  SquareMatrix m(degree());
  for (std::size_t i = 0; i < degree(); ++i) m.at(i, images_[i]) = 1.0;
  return m;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::vector<std::vector<std::size_t>> Permutation::cycles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> visited(degree(), false);
  for (std::size_t start = 0; start < degree(); ++start) {
    if (visited[start]) continue;
    auto& cycle = out.emplace_back();
    for (std::size_t i = start; !visited[i]; i = images_[i]) {
      visited[i] = true;
      cycle.push_back(i);
    }
  }
  return out;
}

Permutation Permutation::power(std::uint64_t exponent) const {
  // Walk each cycle once instead of composing repeatedly.
  std::vector<std::size_t> images(degree());
  for (const auto& cycle : cycles()) {
    const std::size_t len = cycle.size();
    const std::size_t shift = static_cast<std::size_t>(exponent % len);
    for (std::size_t k = 0; k < len; ++k) images[cycle[k]] = cycle[(k + shift) % len];
  }
  return Permutation(std::move(images));
}

Permutation perm_from_matrix(const SquareMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> row_hits(n, 0), col_hits(n, 0);
  std::vector<std::size_t> images(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m.at(i, j);
      if (v == 1.0) {
        ++row_hits[i];
        ++col_hits[j];
        images[i] = j;
      } else if (v != 0.0) {
        std::ostringstream msg;
        msg << "entry (" << i + 1 << "," << j + 1 << ") = " << text::shortest(v)
            << " is not 0 or 1";
        throw Error(ErrorCode::NotZeroOne, msg.str());
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (row_hits[i] != 1) {
      throw Error(ErrorCode::NotBijective, "row " + std::to_string(i + 1) + " sums to " +
                                               std::to_string(row_hits[i]) + ", expected 1");
    }
    if (col_hits[i] != 1) {
      throw Error(ErrorCode::NotBijective, "column " + std::to_string(i + 1) + " sums to " +
                                               std::to_string(col_hits[i]) + ", expected 1");
    }
  }
  return Permutation::from_images(std::move(images));
}

Permutation compose(const Permutation& first, const Permutation& second) {
  if (first.degree() != second.degree()) {
    throw Error(ErrorCode::DegreeMismatch, "cannot compose permutations of degree " +
                                               std::to_string(first.degree()) + " and " +
                                               std::to_string(second.degree()));
  }
  std::vector<std::size_t> images(first.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = second(first(i));
  return Permutation::from_images(std::move(images));
}

Permutation inverse(const Permutation& p) {
  std::vector<std::size_t> images(p.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[p(i)] = i;
  return Permutation::from_images(std::move(images));
}

std::uint64_t order(const Permutation& p) {
  std::uint64_t result = 1;
  for (const auto& cycle : p.cycles()) result = std::lcm(result, std::uint64_t{cycle.size()});
  return result;
}

std::vector<Permutation> enumerate_permutations(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::NotBijective, "permutation degree must be at least 1");
  if (n > kMaxEnumerationDegree) {
    throw Error(ErrorCode::DegreeTooLarge, "refusing to enumerate " + std::to_string(n) +
                                               "! permutations (cap is degree " +
                                               std::to_string(kMaxEnumerationDegree) + ")");
  }
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

bool is_doubly_stochastic(const SquareMatrix& m, double tol) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (m.at(i, j) < -tol) return false;
      row += m.at(i, j);
      col += m.at(j, i);
    }
    if (std::abs(row - 1.0) > tol || std::abs(col - 1.0) > tol) return false;
  }
  return true;
}

namespace {

std::size_t parse_index(std::string_view token) {
  token = text::trim(token);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::ParseError, "expected a positive integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Permutation parse_one_line(std::string_view text) {
  std::vector<std::size_t> values;
  for (const auto& tok : text::split(text::trim(text), ',')) values.push_back(parse_index(tok));
  return Permutation::from_one_line(values);
}

std::string format_one_line(const Permutation& p) {
  std::vector<std::string> parts;
  for (std::size_t v : p.one_line()) parts.push_back(std::to_string(v));
  return text::join(parts, ",");
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  for (const auto& cycle : p.cycles()) {
    if (cycle.size() < 2) continue;
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(cycle[k] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

SquareMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  if (!(in >> n) || n < 1) throw Error(ErrorCode::ParseError, "matrix text must start with a positive dimension");
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n)));
  for (auto& row : rows) {
    for (auto& v : row) {
      if (!(in >> v)) {
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(n * n) + " matrix entries");
      }
    }
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::ParseError, "trailing data after matrix: '" + extra + "'");
  return SquareMatrix::from_rows(rows);
}

std::string format_matrix(const SquareMatrix& m) {
  std::string out = std::to_string(m.size()) + "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ' ';
      out += text::shortest(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace revcomp
