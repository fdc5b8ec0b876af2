#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "ppnfifo/presburger/integer.hpp"

namespace ppnfifo::presburger {

/// Integer affine form `sum(coeff[c] * column[c]) + constant` over the
/// columns of some Space (dims, existentials, params).
class AffineExpr {
 public:
  AffineExpr() = default;
  explicit AffineExpr(std::size_t n_columns) : coeffs_(n_columns) {}
  AffineExpr(std::vector<Integer> coeffs, Integer constant)
      : coeffs_(std::move(coeffs)), constant_(std::move(constant)) {}

  static AffineExpr column(std::size_t n_columns, std::size_t col, Integer coeff = 1);
  static AffineExpr constant(std::size_t n_columns, Integer value);

  std::size_t size() const { return coeffs_.size(); }
  const Integer& coeff(std::size_t col) const { return coeffs_[col]; }
  Integer& coeff(std::size_t col) { return coeffs_[col]; }
  std::span<const Integer> coeffs() const { return coeffs_; }
  const Integer& constant_term() const { return constant_; }
  Integer& constant_term() { return constant_; }

  bool is_constant() const;
  bool is_zero() const { return is_constant() && constant_ == 0; }

  Integer evaluate(std::span<const Integer> values) const;
  Integer evaluate(std::span<const std::int64_t> values) const;

  /// Moves column c to column `mapping[c]` of an expression with `n_columns` columns.
  AffineExpr remap(std::size_t n_columns, std::span<const std::size_t> mapping) const;

  /// Replaces column `col` by `value`, keeping the column with a zero coefficient.
  AffineExpr substitute(std::size_t col, const Integer& value) const;

  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr& operator-=(const AffineExpr& o);
  AffineExpr& operator*=(const Integer& k);
  AffineExpr& operator+=(const Integer& k) {
    constant_ += k;
    return *this;
  }

  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(AffineExpr a, const Integer& k) { return a *= k; }
  friend AffineExpr operator*(const Integer& k, AffineExpr a) { return a *= k; }
  friend AffineExpr operator+(AffineExpr a, const Integer& k) { return a += k; }
  friend AffineExpr operator-(AffineExpr a, const Integer& k) { return a += Integer(-k); }
  AffineExpr operator-() const { return AffineExpr(*this) *= Integer(-1); }

  bool operator==(const AffineExpr&) const = default;
  std::strong_ordering operator<=>(const AffineExpr& o) const;

 private:
  std::vector<Integer> coeffs_;
  Integer constant_ = 0;
};

enum class ConstraintKind { Equality, Inequality };

/// `expr = 0` or `expr >= 0`.
struct Constraint {
  AffineExpr expr;
  ConstraintKind kind = ConstraintKind::Inequality;

  static Constraint eq(AffineExpr e) { return {std::move(e), ConstraintKind::Equality}; }
  static Constraint ge(AffineExpr e) { return {std::move(e), ConstraintKind::Inequality}; }
  /// lhs <= rhs
  static Constraint le(const AffineExpr& lhs, const AffineExpr& rhs) { return ge(rhs - lhs); }
  /// lhs < rhs
  static Constraint lt(const AffineExpr& lhs, const AffineExpr& rhs) { return ge(rhs - lhs - Integer(1)); }

  bool is_equality() const { return kind == ConstraintKind::Equality; }
  bool satisfied_by(std::span<const Integer> values) const;
  bool satisfied_by(std::span<const std::int64_t> values) const;

  enum class Triviality { AlwaysTrue, AlwaysFalse, NonTrivial };
  /// Divides by the coefficient gcd (tightening the constant of inequalities),
  /// fixes the sign of equalities, and reports constant constraints.
  Triviality normalize();

  bool operator==(const Constraint&) const = default;
  std::strong_ordering operator<=>(const Constraint& o) const;
};

}  // namespace ppnfifo::presburger
