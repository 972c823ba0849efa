#include "msrank/rng.hpp"

#include <cmath>

#include "msrank/errors.hpp"

namespace msrank {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;
constexpr double kPi = 3.141592653589793238462643383279502884;
}  // namespace

std::uint64_t Rng::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix(seed + kGolden) ^ mix(stream * kGolden + kStreamSalt)) {}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double Rng::next_unit() {
  // 53 random bits, offset by half an ulp: values lie strictly inside (0,1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::next_normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * kPi * u2;
  cached_normal_ = r * std::sin(a);
  have_cached_normal_ = true;
  return r * std::cos(a);
}

void Rng::fill_signs(std::span<double> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t bits = next_u64();
    const std::size_t chunk = std::min<std::size_t>(64, out.size() - i);
    for (std::size_t b = 0; b < chunk; ++b) {
      out[i + b] = (bits & 1u) ? 1.0 : -1.0;
      bits >>= 1;
    }
    i += chunk;
  }
}

double Rng::next_laplace() {
  const double u = next_unit() - 0.5;
  const double mag = -std::log(1.0 - 2.0 * std::abs(u));
  return u < 0 ? -mag : mag;
}

double Rng::next_logistic() {
  const double u = next_unit();
  return std::log(u / (1.0 - u));
}

double Rng::next_student_t(int nu) {
  if (nu < 1) throw InvalidArgument("student-t sampling requires nu >= 1");
  const double z = next_normal();
  double chi2 = 0.0;
  for (int i = 0; i < nu; ++i) {
    const double w = next_normal();
    chi2 += w * w;
  }
  return z / std::sqrt(chi2 / static_cast<double>(nu));
}

}  // namespace msrank
