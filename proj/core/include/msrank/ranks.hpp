#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace msrank {

// Midranks of a nonempty sequence of (absolute) values:
//   R(i) = #{l : v_l < v_i} + #{l : v_l = v_i} / 2 + 1/2,
// counting l over the whole sequence including i itself. Tied values share
// the average of the ranks they span; with all values distinct this reduces
// to ordinary ranks. Midranks are exact multiples of 1/2 and always sum to
// m(m+1)/2.
std::vector<double> local_midranks(std::span<const double> values);

// Dense ordering of the absolute responses, built once per dataset: class_of
// maps each index to the rank class of its value (ties share a class).
class AbsOrderIndex {
 public:
  explicit AbsOrderIndex(std::span<const double> values);

  std::size_t size() const { return class_of_.size(); }
  std::uint32_t class_of(std::size_t i) const { return class_of_[i]; }
  std::uint32_t num_classes() const { return num_classes_; }

 private:
  std::vector<std::uint32_t> class_of_;
  std::uint32_t num_classes_ = 0;
};

// Incremental midranks over the windows {j..k} for fixed left endpoint j as
// k grows one index at a time. Each extension costs O(log n) for the new
// element's rank (Fenwick counts over the global value classes) plus O(m)
// to shift the ranks of the elements already in the window, so streaming a
// whole left-endpoint group costs the same order as emitting its ranks.
//
// The stream starts at the singleton window {j}; call extend() to append the
// next index. midranks()[i] is the midrank of element j+i within the current
// window, identical (bit for bit) to local_midranks on the same slice.
class WindowRankStream {
 public:
  WindowRankStream(const AbsOrderIndex& order, std::size_t left);

  std::size_t left() const { return left_; }
  std::size_t right() const { return left_ + window_classes_.size() - 1; }
  std::span<const double> midranks() const { return ranks_; }

  void extend();

 private:
  std::uint64_t fenwick_prefix(std::uint32_t cls) const;
  void fenwick_add(std::uint32_t cls);

  const AbsOrderIndex& order_;
  std::size_t left_;
  std::vector<std::uint32_t> window_classes_;
  std::vector<double> ranks_;
  std::vector<std::uint32_t> fenwick_;
  std::vector<std::uint32_t> class_counts_;
};

}  // namespace msrank
