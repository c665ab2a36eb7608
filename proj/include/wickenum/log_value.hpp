#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "wickenum/rational.hpp"

namespace wickenum {

// A number stored as log|v| plus a unit phase, so that factorials and large
// powers can be multiplied without overflowing.  Zero has log_abs = -inf.
class LogMagnitudeValue {
 public:
  using Real = long double;
  using Phase = std::complex<long double>;

  LogMagnitudeValue() = default;

  static LogMagnitudeValue zero() { return {}; }

  static LogMagnitudeValue from_log(Real log_abs, Phase phase = Phase(1)) {
    LogMagnitudeValue v;
    v.log_abs_ = log_abs;
    v.phase_ = phase / std::abs(phase);
    return v;
  }

  static LogMagnitudeValue from_real(Real x) {
    if (x == 0) return zero();
    return from_log(std::log(std::fabs(x)), Phase(x < 0 ? -1 : 1));
  }

  static LogMagnitudeValue from_complex(Phase z) {
    if (z == Phase(0)) return zero();
    return from_log(std::log(std::abs(z)), z / std::abs(z));
  }

  static LogMagnitudeValue from_rational(const Rational& q) {
    if (q == 0) return zero();
    return from_log(wickenum::log_abs(q), Phase(sgn(q) < 0 ? -1 : 1));
  }

  bool is_zero() const { return std::isinf(log_abs_) && log_abs_ < 0; }
  Real log_abs() const { return log_abs_; }
  Real log10_abs() const { return log_abs_ / std::log(10.0L); }
  Phase phase() const { return is_zero() ? Phase(0) : phase_; }

  // Sign of the real part; 0 for zero.
  int sign() const {
    if (is_zero()) return 0;
    return phase_.real() < 0 ? -1 : 1;
  }

  // Linear-domain value; overflows to +-inf beyond the range of long double.
  Phase to_complex() const { return is_zero() ? Phase(0) : std::exp(log_abs_) * phase_; }
  Real to_real() const { return is_zero() ? 0 : std::exp(log_abs_) * phase_.real(); }

  // Projects onto the real axis, keeping the magnitude of the real part.
  LogMagnitudeValue real_part() const {
    if (is_zero() || phase_.real() == 0) return zero();
    return from_log(log_abs_ + std::log(std::fabs(phase_.real())), Phase(phase_.real() < 0 ? -1 : 1));
  }

  LogMagnitudeValue& operator*=(const LogMagnitudeValue& o) {
    if (is_zero() || o.is_zero()) return *this = zero();
    log_abs_ += o.log_abs_;
    phase_ *= o.phase_;
    phase_ /= std::abs(phase_);
    return *this;
  }

  LogMagnitudeValue& operator/=(const LogMagnitudeValue& o) {
    if (o.is_zero()) throw InvalidArgument("division by a zero LogMagnitudeValue");
    if (is_zero()) return *this;
    log_abs_ -= o.log_abs_;
    phase_ /= o.phase_;
    phase_ /= std::abs(phase_);
    return *this;
  }

  friend LogMagnitudeValue operator*(LogMagnitudeValue a, const LogMagnitudeValue& b) { return a *= b; }
  friend LogMagnitudeValue operator/(LogMagnitudeValue a, const LogMagnitudeValue& b) { return a /= b; }

  // Integer power; the phase is raised through its argument.
  LogMagnitudeValue pow(long e) const {
    if (e == 0) return from_log(0);
    if (is_zero()) {
      if (e < 0) throw InvalidArgument("negative power of zero");
      return zero();
    }
    const Real arg = std::arg(phase_) * static_cast<Real>(e);
    return from_log(log_abs_ * static_cast<Real>(e), std::polar(Real(1), arg));
  }

 private:
  Real log_abs_ = -std::numeric_limits<Real>::infinity();
  Phase phase_ = Phase(1);
};

// Sum carried out relative to the largest summand.  `max_log_abs` is kept so
// callers can judge cancellation.
struct LogSum {
  LogMagnitudeValue total;
  LogMagnitudeValue::Real max_log_abs = -std::numeric_limits<LogMagnitudeValue::Real>::infinity();

  // log(|total| / max |summand|); -inf for an exact cancellation.
  LogMagnitudeValue::Real relative_log() const {
    if (total.is_zero()) return -std::numeric_limits<LogMagnitudeValue::Real>::infinity();
    return total.log_abs() - max_log_abs;
  }
};

inline LogSum log_sum(std::span<const LogMagnitudeValue> terms) {
  using Real = LogMagnitudeValue::Real;
  LogSum out;
  for (const auto& t : terms)
    if (!t.is_zero()) out.max_log_abs = std::max(out.max_log_abs, t.log_abs());
  if (std::isinf(out.max_log_abs)) return out;
  std::complex<Real> acc(0);
  for (const auto& t : terms)
    if (!t.is_zero()) acc += std::exp(t.log_abs() - out.max_log_abs) * t.phase();
  if (acc == std::complex<Real>(0)) return out;
  out.total = LogMagnitudeValue::from_log(out.max_log_abs + std::log(std::abs(acc)), acc / std::abs(acc));
  return out;
}

inline LogMagnitudeValue operator+(const LogMagnitudeValue& a, const LogMagnitudeValue& b) {
  const LogMagnitudeValue terms[2] = {a, b};
  return log_sum(terms).total;
}

}  // namespace wickenum
