#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>

namespace eqlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Builds a vector from a literal list; handy in tests and the CLI.
inline Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v(k++) = x;
  return v;
}

/// A strictly positive, finite price tuple. Good L (the last entry) is the
/// numeraire; `tilde()` gives the first L-1 entries.
class PriceVector {
 public:
  /// Throws DomainError("price out of domain") unless every entry is > 0 and
  /// finite and there are at least two goods.
  explicit PriceVector(Vector values);
  PriceVector(std::initializer_list<double> values)
      : PriceVector(make_vector(values)) {}

  const Vector& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index k) const { return values_(k); }

  Vector tilde() const { return values_.head(values_.size() - 1); }
  double numeraire() const { return values_(values_.size() - 1); }

  /// q = p / p_L, the numeraire-normalized prices.
  PriceVector relative() const { return PriceVector(values_ / numeraire()); }
  /// p / ||p||_2.
  PriceVector unit() const { return PriceVector(values_ / values_.norm()); }
  PriceVector scaled(double factor) const {
    return PriceVector(values_ * factor);
  }

 private:
  Vector values_;
};

/// True when every entry is finite and strictly positive.
bool strictly_positive(const Vector& v);

}  // namespace eqlab
