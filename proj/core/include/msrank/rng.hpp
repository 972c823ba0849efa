#pragma once

#include <cstdint>
#include <span>

namespace msrank {

// Counter-based deterministic random stream. The state is derived purely from
// (seed, stream); draw number c of stream s under seed q is the same value in
// every run, on every thread, in any interleaving. This is what makes Monte
// Carlo replicates reproducible independently of the worker count: replicate
// b always uses stream b.
//
// The generator is splitmix64: state walks a Weyl sequence with the golden
// gamma and each output is a strong 64-bit mix of the state.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1); never returns 0 or 1, so it is safe
  // inside log() and logit transforms.
  double next_unit();

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double next_normal();

  // Fills out with independent signs in {-1.0, +1.0}, 64 signs per u64 draw.
  void fill_signs(std::span<double> out);

  // Unit-parameter error laws (normal sd 1, Laplace rate 1, logistic scale 1,
  // Student-t with nu degrees of freedom via the normal / chi-square ratio).
  double next_laplace();
  double next_logistic();
  double next_student_t(int nu);

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

}  // namespace msrank
