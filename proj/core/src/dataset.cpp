#include "msrank/dataset.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "msrank/errors.hpp"

namespace msrank {

Dataset::Dataset(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size())
    throw DataError("dataset: x and y must have the same length");
  if (x_.size() < 2) throw DataError("dataset: need at least 2 observations");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
      throw DataError("dataset: non-finite value at row " +
                      std::to_string(i + 1));
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i - 1] < x_[i]))
      throw DataError("dataset: design points must be strictly increasing (x=" +
                      std::to_string(x_[i]) + " repeats or decreases)");
  }
}

std::vector<double> Dataset::abs_y() const {
  std::vector<double> a(y_.size());
  for (std::size_t i = 0; i < y_.size(); ++i) a[i] = std::abs(y_[i]);
  return a;
}

std::vector<double> Dataset::sign_y() const {
  std::vector<double> s(y_.size());
  for (std::size_t i = 0; i < y_.size(); ++i)
    s[i] = y_[i] > 0.0 ? 1.0 : (y_[i] < 0.0 ? -1.0 : 0.0);
  return s;
}

}  // namespace msrank
