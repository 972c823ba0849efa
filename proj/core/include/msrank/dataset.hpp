#pragma once

#include <cstddef>
#include <vector>

namespace msrank {

// Ordered design points with paired responses. x must be strictly increasing
// and n >= 2; construction validates and throws DataError otherwise.
class Dataset {
 public:
  Dataset(std::vector<double> x, std::vector<double> y);

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }

  std::vector<double> abs_y() const;

  // sign(y_i) in {-1, 0, +1}; an exact zero response carries sign 0 and drops
  // out of every scan numerator.
  std::vector<double> sign_y() const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

}  // namespace msrank
