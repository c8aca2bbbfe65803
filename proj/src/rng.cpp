#include "comptest/rng.hpp"

#include "comptest/error.hpp"

namespace comptest {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) noexcept {
  return derive_stream(derive_stream(a, b), c);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(derive_stream(splitmix64(seed), stream_id)) {}

double RngStream::normal() {
  std::normal_distribution<double> dist;
  return dist(engine_);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0)) {
    throw UsageError("gamma shape must be positive");
  }
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

double RngStream::uniform01() {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) {
    throw UsageError("below(n) requires n >= 1");
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return dist(engine_);
}

Eigen::MatrixXd sample_std_normal_matrix(RngStream& rng, Eigen::Index n,
                                         Eigen::Index p) {
  if (n < 1 || p < 1) {
    throw UsageError("sample dimensions must be at least 1");
  }
  std::normal_distribution<double> dist;
  Eigen::MatrixXd out(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      out(i, j) = dist(rng.engine());
    }
  }
  return out;
}

Eigen::MatrixXd sample_std_gamma_matrix(RngStream& rng, Eigen::Index n,
                                        Eigen::Index p, double shape) {
  if (n < 1 || p < 1) {
    throw UsageError("sample dimensions must be at least 1");
  }
  if (!(shape > 0)) {
    throw UsageError("gamma shape must be positive");
  }
  std::gamma_distribution<double> dist(shape, 1.0);
  Eigen::MatrixXd out(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      out(i, j) = dist(rng.engine());
    }
  }
  return out;
}

}  // namespace comptest
