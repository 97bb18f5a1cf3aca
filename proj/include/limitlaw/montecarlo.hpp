#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "limitlaw/identities.hpp"
#include "limitlaw/moments.hpp"

namespace limitlaw::mc {

/// Seedable, splittable uniform source. Stream (seed, index, tag) is a
/// std::mt19937_64 initialised through std::seed_seq from the 32-bit halves
/// of seed and index followed by the tag, so every stream is fully
/// specified by the C++ standard and independent of the thread count.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index, std::uint32_t tag);
  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();
  /// −ln U.
  double exponential();
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Samples per stream. Sample i always comes from stream i / kChunkSize.
inline constexpr std::size_t kChunkSize = std::size_t{1} << 16;

enum class StreamTag : std::uint32_t { Rayleigh = 1, Stable = 2, Tree = 3 };

struct SampleSummary {
  std::size_t n = 0;
  std::size_t max_order = 0;
  /// m̂_s, s = 0..S.
  std::vector<double> moments;
  /// sd(X^s)/√n, s = 0..S.
  std::vector<double> standard_errors;
  /// Sample means of X^k for k = 0..2S; carries the covariances needed
  /// for ratio standard errors.
  std::vector<double> power_means;
  std::uint64_t seed = 0;
  std::string sampler;
  moments::ParamRecord params;
};

/// Compensated, chunk-ordered power sums of the samples up to order 2S.
SampleSummary summarize(std::span<const double> samples, std::size_t max_order,
                        std::uint64_t seed, std::string sampler, moments::ParamRecord params,
                        unsigned threads = 1);

/// σ √(−2 ln U).
std::vector<double> draw_rayleigh(double sigma, std::size_t n, std::uint64_t seed,
                                  unsigned threads = 1);
SampleSummary sample_rayleigh(double sigma, std::size_t n, std::uint64_t seed,
                              std::size_t max_order = 4, unsigned threads = 1);

/// One-sided α-stable with E e^{−λS} = e^{−λ^α}, by Kanter's
/// representation S = (A(U)/E)^{(1−α)/α} with U ~ Uniform(0, π),
/// E ~ Exp(1) and A(u) = sin(αu)^{α/(1−α)} sin((1−α)u) / sin(u)^{1/(1−α)}.
std::vector<double> draw_positive_stable(double alpha, std::size_t n, std::uint64_t seed,
                                         unsigned threads = 1);
SampleSummary sample_positive_stable(double alpha, std::size_t n, std::uint64_t seed,
                                     std::size_t max_order = 4, unsigned threads = 1);

/// L = S^{−α}; uses the stable streams, so it is the exact transform of
/// draw_positive_stable with the same seed.
std::vector<double> draw_mittag_leffler(double alpha, std::size_t n, std::uint64_t seed,
                                        unsigned threads = 1);
SampleSummary sample_mittag_leffler(double alpha, std::size_t n, std::uint64_t seed,
                                    std::size_t max_order = 4, unsigned threads = 1);

struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Sample mean of e^{−λX} with its standard error.
Estimate laplace_transform_estimate(std::span<const double> samples, double lambda);

/// sup_x |F_n(x) − F(x)|. Sorts a copy of the samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Law of K_n on {1..n−1} for each size n >= 2.
class SplitKernel {
 public:
  enum class Family { Uniform, Table };

  static SplitKernel uniform();
  /// Rows (n, k, probability); blank lines, '#' comments and a header row
  /// whose first field is not numeric are skipped. Each size's vector
  /// must sum to 1 within 1e-12 with support inside {1..n−1}.
  static SplitKernel from_csv(std::istream& in);
  static SplitKernel from_table(const std::map<std::size_t, std::vector<double>>& probabilities);

  Family family() const noexcept { return family_; }
  bool defines(std::size_t size) const;
  /// P(K_size = k).
  double probability(std::size_t size, std::size_t k) const;
  std::size_t sample(std::size_t size, Stream& stream) const;

 private:
  Family family_ = Family::Uniform;
  // Cumulative probabilities at k = 1..n−1, indexed by n.
  std::map<std::size_t, std::vector<double>> cumulative_;
};

/// Y_n for each of `reps` replicates: walk n → K_n → K_{K_n} → ... → 1,
/// summing size^a over every visited size including the terminal 1.
/// Replicate r uses stream r / kChunkSize. Throws InputError naming the
/// first size in 2..n the kernel does not define.
std::vector<double> simulate_tree_values(const SplitKernel& kernel, double a, std::size_t n,
                                         std::size_t reps, std::uint64_t seed,
                                         unsigned threads = 1);
SampleSummary simulate_tree_cost(const SplitKernel& kernel, double a, std::size_t n,
                                 std::size_t reps, std::uint64_t seed,
                                 std::size_t max_order = 4, unsigned threads = 1);

/// Compares m̂_2/m̂_1² and m̂_3/m̂_1³ with m_2/m_1², m_3/m_1³ of
/// fkp_moments(a'). Deviations are |R̂ − R|/se(R̂) with delta-method
/// standard errors; the report passes when every z-score is <= 3.
identities::ComparisonReport scale_free_ratio_check(const SampleSummary& summary, double a_prime);

inline constexpr double kZScoreTolerance = 3.0;

/// Empirical law of a discrete sample: value → relative frequency.
std::map<double, double> empirical_distribution(std::span<const double> samples);
double total_variation(const std::map<double, double>& p, const std::map<double, double>& q);

}  // namespace limitlaw::mc
