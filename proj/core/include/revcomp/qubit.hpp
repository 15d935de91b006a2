#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace revcomp {

using Amplitude = std::complex<double>;

inline constexpr double kQubitTolerance = 1e-12;

// a|0> + b|1> with |a|^2 + |b|^2 = 1.
class Qubit {
 public:
  // Throws NotNormalized when the squared norm is off by more than kQubitTolerance.
  static Qubit create(Amplitude a, Amplitude b);
  static Qubit zero() noexcept { return Qubit({1.0, 0.0}, {0.0, 0.0}); }
  static Qubit one() noexcept { return Qubit({0.0, 0.0}, {1.0, 0.0}); }

  Amplitude a() const noexcept { return a_; }
  Amplitude b() const noexcept { return b_; }
  double norm() const noexcept;

 private:
  friend class OneQubitOperator;
  Qubit(Amplitude a, Amplitude b) noexcept : a_(a), b_(b) {}
  Amplitude a_;
  Amplitude b_;
};

// <x|y>
Amplitude inner(const Qubit& x, const Qubit& y) noexcept;
// Euclidean distance between amplitude vectors.
double distance(const Qubit& x, const Qubit& y) noexcept;
bool equal_up_to_phase(const Qubit& x, const Qubit& y, double tol = kQubitTolerance) noexcept;

class OneQubitOperator {
 public:
  using Matrix = std::array<std::array<Amplitude, 2>, 2>;

  // Throws NotUnitary when U U^dagger deviates from 1 by more than kQubitTolerance.
  static OneQubitOperator create(const Matrix& m);
  // The diagonalization operator: |0><1| + |1><0|.
  static OneQubitOperator not_gate() noexcept;
  static OneQubitOperator identity() noexcept;

  const Matrix& matrix() const noexcept { return m_; }
  Qubit apply(const Qubit& q) const noexcept;

 private:
  explicit OneQubitOperator(const Matrix& m) noexcept : m_(m) {}
  Matrix m_;
};

inline Qubit apply(const OneQubitOperator& op, const Qubit& q) noexcept { return op.apply(q); }

struct Eigenpair {
  double eigenvalue;
  Qubit state;
};

// (+1, (|0> + |1>)/sqrt2) and (-1, (|0> - |1>)/sqrt2), each checked against
// D v = lambda v before being returned.
std::vector<Eigenpair> eigensystem_not();

// The state left invariant by NOT: (1/sqrt2, 1/sqrt2).
Qubit fixed_point_not();

struct OutcomeProbabilities {
  double p0;
  double p1;
};
OutcomeProbabilities measure_probabilities(const Qubit& q) noexcept;

// Exhaustive check of both classical bits for NOT(b) == b.
struct ClassicalSearch {
  std::array<int, 2> images;     // NOT applied to 0 and to 1
  std::vector<int> fixed_points;  // always empty
};
ClassicalSearch classical_fixed_point_search();

// "a=(re,im) b=(re,im)"
std::string format_qubit(const Qubit& q);
std::string format_operator(const OneQubitOperator& op);

}  // namespace revcomp
