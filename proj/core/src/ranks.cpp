#include "msrank/ranks.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "msrank/errors.hpp"

namespace msrank {

std::vector<double> local_midranks(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("local_midranks: empty input");
  const std::size_t m = values.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(m);
  std::size_t pos = 0;
  while (pos < m) {
    std::size_t end = pos + 1;
    while (end < m && values[idx[end]] == values[idx[pos]]) ++end;
    // tie group occupies 1-based ranks pos+1 .. end; midrank is their mean
    const double mid = 0.5 * (static_cast<double>(pos + 1) + static_cast<double>(end));
    for (std::size_t t = pos; t < end; ++t) ranks[idx[t]] = mid;
    pos = end;
  }
  return ranks;
}

AbsOrderIndex::AbsOrderIndex(std::span<const double> values) {
  const std::size_t n = values.size();
  class_of_.resize(n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::uint32_t cls = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t > 0 && values[idx[t]] != values[idx[t - 1]]) ++cls;
    class_of_[idx[t]] = cls;
  }
  num_classes_ = n == 0 ? 0 : cls + 1;
}

WindowRankStream::WindowRankStream(const AbsOrderIndex& order, std::size_t left)
    : order_(order),
      left_(left),
      fenwick_(order.num_classes() + 1, 0),
      class_counts_(order.num_classes(), 0) {
  assert(left < order.size());
  const std::uint32_t cls = order_.class_of(left_);
  window_classes_.push_back(cls);
  ranks_.push_back(1.0);
  fenwick_add(cls);
  class_counts_[cls] = 1;
}

std::uint64_t WindowRankStream::fenwick_prefix(std::uint32_t cls) const {
  // count of window elements with class id < cls
  std::uint64_t sum = 0;
  for (std::uint32_t i = cls; i > 0; i -= i & (~i + 1)) sum += fenwick_[i];
  return sum;
}

void WindowRankStream::fenwick_add(std::uint32_t cls) {
  for (std::uint32_t i = cls + 1; i < fenwick_.size(); i += i & (~i + 1))
    fenwick_[i] += 1;
}

void WindowRankStream::extend() {
  const std::size_t next = right() + 1;
  assert(next < order_.size());
  const std::uint32_t cls = order_.class_of(next);
  const auto below = static_cast<double>(fenwick_prefix(cls));
  const auto ties = static_cast<double>(class_counts_[cls]);
  const double new_rank = below + 0.5 * ties + 1.0;
  // every element above the newcomer moves up one rank, ties move half a rank
  const std::size_t m = window_classes_.size();
  for (std::size_t t = 0; t < m; ++t) {
    if (window_classes_[t] > cls)
      ranks_[t] += 1.0;
    else if (window_classes_[t] == cls)
      ranks_[t] += 0.5;
  }
  window_classes_.push_back(cls);
  ranks_.push_back(new_rank);
  fenwick_add(cls);
  class_counts_[cls] += 1;
}

}  // namespace msrank
