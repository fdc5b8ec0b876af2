#include "ppnfifo/presburger/affine.hpp"

#include <cassert>

#include <boost/integer/common_factor_rt.hpp>

namespace ppnfifo::presburger {

namespace {

std::strong_ordering compare(const Integer& a, const Integer& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

AffineExpr AffineExpr::column(std::size_t n_columns, std::size_t col, Integer coeff) {
  AffineExpr e(n_columns);
  e.coeffs_.at(col) = std::move(coeff);
  return e;
}

AffineExpr AffineExpr::constant(std::size_t n_columns, Integer value) {
  AffineExpr e(n_columns);
  e.constant_ = std::move(value);
  return e;
}

bool AffineExpr::is_constant() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

Integer AffineExpr::evaluate(std::span<const Integer> values) const {
  assert(values.size() == coeffs_.size());
  Integer r = constant_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) r += coeffs_[i] * values[i];
  }
  return r;
}

Integer AffineExpr::evaluate(std::span<const std::int64_t> values) const {
  assert(values.size() == coeffs_.size());
  Integer r = constant_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) r += coeffs_[i] * values[i];
  }
  return r;
}

AffineExpr AffineExpr::remap(std::size_t n_columns, std::span<const std::size_t> mapping) const {
  assert(mapping.size() == coeffs_.size());
  AffineExpr r(n_columns);
  r.constant_ = constant_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) r.coeffs_.at(mapping[i]) += coeffs_[i];
  }
  return r;
}

AffineExpr AffineExpr::substitute(std::size_t col, const Integer& value) const {
  AffineExpr r = *this;
  r.constant_ += r.coeffs_[col] * value;
  r.coeffs_[col] = 0;
  return r;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  assert(o.coeffs_.size() == coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  constant_ += o.constant_;
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& o) {
  assert(o.coeffs_.size() == coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  constant_ -= o.constant_;
  return *this;
}

AffineExpr& AffineExpr::operator*=(const Integer& k) {
  for (auto& c : coeffs_) c *= k;
  constant_ *= k;
  return *this;
}

std::strong_ordering AffineExpr::operator<=>(const AffineExpr& o) const {
  if (auto c = coeffs_.size() <=> o.coeffs_.size(); c != 0) return c;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (auto c = compare(coeffs_[i], o.coeffs_[i]); c != 0) return c;
  }
  return compare(constant_, o.constant_);
}

bool Constraint::satisfied_by(std::span<const Integer> values) const {
  Integer v = expr.evaluate(values);
  return is_equality() ? v == 0 : v >= 0;
}

bool Constraint::satisfied_by(std::span<const std::int64_t> values) const {
  Integer v = expr.evaluate(values);
  return is_equality() ? v == 0 : v >= 0;
}

Constraint::Triviality Constraint::normalize() {
  Integer g = 0;
  for (const auto& c : expr.coeffs()) {
    if (c != 0) g = boost::integer::gcd(g, abs(c));
  }
  if (g == 0) {
    const auto& k = expr.constant_term();
    bool holds = is_equality() ? k == 0 : k >= 0;
    return holds ? Triviality::AlwaysTrue : Triviality::AlwaysFalse;
  }
  if (is_equality()) {
    if (expr.constant_term() % g != 0) return Triviality::AlwaysFalse;
    Integer sign = 1;
    for (const auto& c : expr.coeffs()) {
      if (c != 0) {
        sign = c < 0 ? -1 : 1;
        break;
      }
    }
    if (g != 1 || sign != 1) {
      for (std::size_t i = 0; i < expr.size(); ++i) expr.coeff(i) = expr.coeff(i) / g * sign;
      expr.constant_term() = expr.constant_term() / g * sign;
    }
  } else if (g != 1) {
    for (std::size_t i = 0; i < expr.size(); ++i) expr.coeff(i) /= g;
    expr.constant_term() = floor_div(expr.constant_term(), g);
  }
  return Triviality::NonTrivial;
}

std::strong_ordering Constraint::operator<=>(const Constraint& o) const {
  if (kind != o.kind) return kind == ConstraintKind::Equality ? std::strong_ordering::less
                                                              : std::strong_ordering::greater;
  return expr <=> o.expr;
}

}  // namespace ppnfifo::presburger
