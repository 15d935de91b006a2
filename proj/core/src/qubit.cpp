#include "revcomp/qubit.hpp"

#include <cmath>
#include <stdexcept>

#include "revcomp/error.hpp"
#include "revcomp/text.hpp"

namespace revcomp {

Qubit Qubit::create(Amplitude a, Amplitude b) {
  const double sq = std::norm(a) + std::norm(b);
  if (!(std::abs(sq - 1.0) <= kQubitTolerance)) {
    throw Error(ErrorCode::NotNormalized,
                "qubit amplitudes have squared norm " + text::shortest(sq) + ", expected 1");
  }
  return Qubit(a, b);
}

double Qubit::norm() const noexcept { return std::sqrt(std::norm(a_) + std::norm(b_)); }

Amplitude inner(const Qubit& x, const Qubit& y) noexcept {
  return std::conj(x.a()) * y.a() + std::conj(x.b()) * y.b();
}

double distance(const Qubit& x, const Qubit& y) noexcept {
  return std::sqrt(std::norm(x.a() - y.a()) + std::norm(x.b() - y.b()));
}

bool equal_up_to_phase(const Qubit& x, const Qubit& y, double tol) noexcept {
  return std::abs(std::abs(inner(x, y)) - 1.0) <= tol;
}

OneQubitOperator OneQubitOperator::create(const Matrix& m) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Amplitude entry = m[r][0] * std::conj(m[c][0]) + m[r][1] * std::conj(m[c][1]);
      const Amplitude expected = r == c ? 1.0 : 0.0;
      if (!(std::abs(entry - expected) <= kQubitTolerance)) {
        throw Error(ErrorCode::NotUnitary, "operator is not unitary: (U U^dagger)[" +
                                               std::to_string(r) + "][" + std::to_string(c) +
                                               "] deviates from identity");
      }
    }
  }
  return OneQubitOperator(m);
}

OneQubitOperator OneQubitOperator::not_gate() noexcept {
  return OneQubitOperator(Matrix{{{0.0, 1.0}, {1.0, 0.0}}});
}

OneQubitOperator OneQubitOperator::identity() noexcept {
  return OneQubitOperator(Matrix{{{1.0, 0.0}, {0.0, 1.0}}});
}

Qubit OneQubitOperator::apply(const Qubit& q) const noexcept {
  return Qubit(m_[0][0] * q.a() + m_[0][1] * q.b(), m_[1][0] * q.a() + m_[1][1] * q.b());
}

std::vector<Eigenpair> eigensystem_not() {
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Eigenpair> pairs{{+1.0, Qubit::create(h, h)}, {-1.0, Qubit::create(h, -h)}};
  const auto d = OneQubitOperator::not_gate();
  for (const auto& [lambda, v] : pairs) {
    const Qubit dv = d.apply(v);
    const double residual =
        std::sqrt(std::norm(dv.a() - lambda * v.a()) + std::norm(dv.b() - lambda * v.b()));
    if (!(residual <= kQubitTolerance)) {
      throw std::logic_error("NOT eigenpair residual " + text::shortest(residual));
    }
  }
  return pairs;
}

Qubit fixed_point_not() {
  const double h = 1.0 / std::sqrt(2.0);
  return Qubit::create(h, h);
}

OutcomeProbabilities measure_probabilities(const Qubit& q) noexcept {
  return {std::norm(q.a()), std::norm(q.b())};
}

ClassicalSearch classical_fixed_point_search() {
  ClassicalSearch out{{1, 0}, {}};
  for (int bit = 0; bit < 2; ++bit) {
    const int flipped = 1 - bit;
    out.images[bit] = flipped;
    if (flipped == bit) out.fixed_points.push_back(bit);
  }
  return out;
}

namespace {

std::string format_amplitude(Amplitude z) {
  return "(" + text::shortest(z.real()) + "," + text::shortest(z.imag()) + ")";
}

}  // namespace

std::string format_qubit(const Qubit& q) {
  return "a=" + format_amplitude(q.a()) + " b=" + format_amplitude(q.b());
}

std::string format_operator(const OneQubitOperator& op) {
  const auto& m = op.matrix();
  return "[" + format_amplitude(m[0][0]) + " " + format_amplitude(m[0][1]) + "]\n[" +
         format_amplitude(m[1][0]) + " " + format_amplitude(m[1][1]) + "]";
}

}  // namespace revcomp
