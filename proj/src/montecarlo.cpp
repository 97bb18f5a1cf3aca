#include "limitlaw/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "limitlaw/errors.hpp"
#include "limitlaw/parallel.hpp"

namespace limitlaw::mc {
namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::size_t chunk_count(std::size_t n) { return (n + kChunkSize - 1) / kChunkSize; }

template <class Draw>
std::vector<double> draw_chunked(std::size_t n, std::uint64_t seed, StreamTag tag,
                                 unsigned threads, Draw draw) {
  std::vector<double> out(n);
  parallel_for(chunk_count(n), threads, [&](std::size_t chunk) {
    Stream stream(seed, chunk, static_cast<std::uint32_t>(tag));
    const std::size_t end = std::min(n, (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) out[i] = draw(stream);
  });
  return out;
}

void require_alpha_open(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("stable index alpha must lie strictly inside (0, 1)");
  }
}

void require_count(std::size_t n) {
  if (n < 1) throw DomainError("sample count n must be >= 1");
}

// ln of Kanter's A(u) − ln E, the common core of the stable and
// Mittag-Leffler draws.
double kanter_log_ratio(double alpha, Stream& stream) {
  const double u = std::numbers::pi * stream.uniform();
  const double e = stream.exponential();
  const double log_a = (alpha / (1.0 - alpha)) * std::log(std::sin(alpha * u)) +
                       std::log(std::sin((1.0 - alpha) * u)) -
                       std::log(std::sin(u)) / (1.0 - alpha);
  return log_a - std::log(e);
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t index, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    tag};
  engine_.seed(seq);
}

double Stream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
}

double Stream::exponential() { return -std::log(uniform()); }

SampleSummary summarize(std::span<const double> samples, std::size_t max_order,
                        std::uint64_t seed, std::string sampler, moments::ParamRecord params,
                        unsigned threads) {
  require_count(samples.size());
  const std::size_t top = 2 * max_order;
  const std::size_t chunks = chunk_count(samples.size());
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(top + 1, 0.0));
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    std::vector<CompensatedSum> sums(top + 1);
    const std::size_t end = std::min(samples.size(), (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      double p = 1.0;
      for (std::size_t k = 1; k <= top; ++k) {
        p *= samples[i];
        sums[k].add(p);
      }
    }
    for (std::size_t k = 1; k <= top; ++k) partial[chunk][k] = sums[k].value();
  });

  SampleSummary out;
  out.n = samples.size();
  out.max_order = max_order;
  out.seed = seed;
  out.sampler = std::move(sampler);
  out.params = std::move(params);
  out.power_means.assign(top + 1, 1.0);
  const double n = static_cast<double>(out.n);
  for (std::size_t k = 1; k <= top; ++k) {
    CompensatedSum total;
    for (const auto& chunk : partial) total.add(chunk[k]);
    out.power_means[k] = total.value() / n;
  }
  out.moments.assign(out.power_means.begin(), out.power_means.begin() + max_order + 1);
  out.standard_errors.assign(max_order + 1, 0.0);
  if (out.n > 1) {
    for (std::size_t s = 1; s <= max_order; ++s) {
      const double m = out.power_means[s];
      const double var = std::max(out.power_means[2 * s] - m * m, 0.0) * n / (n - 1.0);
      out.standard_errors[s] = std::sqrt(var / n);
    }
  }
  return out;
}

std::vector<double> draw_rayleigh(double sigma, std::size_t n, std::uint64_t seed,
                                  unsigned threads) {
  if (!(sigma > 0.0)) throw DomainError("Rayleigh sigma must be > 0");
  require_count(n);
  return draw_chunked(n, seed, StreamTag::Rayleigh, threads, [sigma](Stream& s) {
    return sigma * std::sqrt(-2.0 * std::log(s.uniform()));
  });
}

SampleSummary sample_rayleigh(double sigma, std::size_t n, std::uint64_t seed,
                              std::size_t max_order, unsigned threads) {
  const auto xs = draw_rayleigh(sigma, n, seed, threads);
  return summarize(xs, max_order, seed, "rayleigh", {{"sigma", sigma}}, threads);
}

std::vector<double> draw_positive_stable(double alpha, std::size_t n, std::uint64_t seed,
                                         unsigned threads) {
  require_alpha_open(alpha);
  require_count(n);
  return draw_chunked(n, seed, StreamTag::Stable, threads, [alpha](Stream& s) {
    return std::exp(((1.0 - alpha) / alpha) * kanter_log_ratio(alpha, s));
  });
}

SampleSummary sample_positive_stable(double alpha, std::size_t n, std::uint64_t seed,
                                     std::size_t max_order, unsigned threads) {
  const auto xs = draw_positive_stable(alpha, n, seed, threads);
  return summarize(xs, max_order, seed, "stable", {{"alpha", alpha}}, threads);
}

std::vector<double> draw_mittag_leffler(double alpha, std::size_t n, std::uint64_t seed,
                                        unsigned threads) {
  require_alpha_open(alpha);
  require_count(n);
  return draw_chunked(n, seed, StreamTag::Stable, threads, [alpha](Stream& s) {
    return std::exp(-(1.0 - alpha) * kanter_log_ratio(alpha, s));
  });
}

SampleSummary sample_mittag_leffler(double alpha, std::size_t n, std::uint64_t seed,
                                    std::size_t max_order, unsigned threads) {
  const auto xs = draw_mittag_leffler(alpha, n, seed, threads);
  return summarize(xs, max_order, seed, "mittag-leffler", {{"alpha", alpha}}, threads);
}

Estimate laplace_transform_estimate(std::span<const double> samples, double lambda) {
  require_count(samples.size());
  CompensatedSum sum, sum_sq;
  for (double x : samples) {
    const double v = std::exp(-lambda * x);
    sum.add(v);
    sum_sq.add(v * v);
  }
  const double n = static_cast<double>(samples.size());
  const double mean = sum.value() / n;
  const double var = n > 1 ? std::max(sum_sq.value() / n - mean * mean, 0.0) * n / (n - 1) : 0.0;
  return {mean, std::sqrt(var / n)};
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

SplitKernel SplitKernel::uniform() { return SplitKernel{}; }

SplitKernel SplitKernel::from_table(const std::map<std::size_t, std::vector<double>>& probabilities) {
  SplitKernel kernel;
  kernel.family_ = Family::Table;
  for (const auto& [size, probs] : probabilities) {
    if (size < 2) throw InputError("split kernel: size " + std::to_string(size) + " has no split");
    if (probs.size() != size - 1) {
      throw InputError("split kernel: size " + std::to_string(size) + " needs " +
                       std::to_string(size - 1) + " probabilities for k = 1.." +
                       std::to_string(size - 1));
    }
    std::vector<double> cumulative(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!(probs[i] >= 0.0)) {
        throw InputError("split kernel: negative probability at size " + std::to_string(size));
      }
      acc += probs[i];
      cumulative[i] = acc;
    }
    if (std::abs(acc - 1.0) > 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "split kernel: probabilities for size " << size << " sum to " << acc;
      throw InputError(os.str());
    }
    kernel.cumulative_[size] = std::move(cumulative);
  }
  return kernel;
}

SplitKernel SplitKernel::from_csv(std::istream& in) {
  std::map<std::size_t, std::vector<double>> table;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    auto where = [&] { return "split kernel line " + std::to_string(line_no) + ": "; };
    if (fields.size() != 3) throw InputError(where() + "expected n,k,probability");
    std::size_t n = 0, k = 0;
    double prob = 0.0;
    try {
      std::size_t pos = 0;
      n = std::stoull(fields[0], &pos);
      k = std::stoull(fields[1]);
      prob = std::stod(fields[2]);
    } catch (const std::exception&) {
      if (!seen_data) {
        seen_data = true;  // header row
        continue;
      }
      throw InputError(where() + "non-numeric field");
    }
    seen_data = true;
    if (n < 2 || k < 1 || k >= n) {
      throw InputError(where() + "k = " + std::to_string(k) + " outside {1.." +
                       std::to_string(n > 0 ? n - 1 : 0) + "}");
    }
    auto& probs = table[n];
    if (probs.empty()) probs.assign(n - 1, 0.0);
    probs[k - 1] += prob;
  }
  return from_table(table);
}

bool SplitKernel::defines(std::size_t size) const {
  if (size < 2) return false;
  return family_ == Family::Uniform || cumulative_.contains(size);
}

double SplitKernel::probability(std::size_t size, std::size_t k) const {
  if (k < 1 || k >= size) return 0.0;
  if (family_ == Family::Uniform) return 1.0 / static_cast<double>(size - 1);
  const auto it = cumulative_.find(size);
  if (it == cumulative_.end()) return 0.0;
  const auto& c = it->second;
  return c[k - 1] - (k >= 2 ? c[k - 2] : 0.0);
}

std::size_t SplitKernel::sample(std::size_t size, Stream& stream) const {
  const double u = stream.uniform();
  if (family_ == Family::Uniform) {
    const auto k = static_cast<std::size_t>(u * static_cast<double>(size - 1));
    return std::min(k + 1, size - 1);
  }
  const auto& c = cumulative_.at(size);
  const auto idx = static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), u) - c.begin());
  return std::min(idx + 1, size - 1);
}

std::vector<double> simulate_tree_values(const SplitKernel& kernel, double a, std::size_t n,
                                         std::size_t reps, std::uint64_t seed, unsigned threads) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("toll exponent a must be >= 0");
  if (n < 1) throw DomainError("tree size n must be >= 1");
  if (reps < 1) throw DomainError("reps must be >= 1");
  for (std::size_t m = 2; m <= n; ++m) {
    if (!kernel.defines(m)) {
      throw InputError("split kernel has no distribution for size " + std::to_string(m));
    }
  }
  return draw_chunked(reps, seed, StreamTag::Tree, threads, [&](Stream& stream) {
    std::size_t size = n;
    double y = std::pow(static_cast<double>(size), a);
    while (size > 1) {
      size = kernel.sample(size, stream);
      y += std::pow(static_cast<double>(size), a);
    }
    return y;
  });
}

SampleSummary simulate_tree_cost(const SplitKernel& kernel, double a, std::size_t n,
                                 std::size_t reps, std::uint64_t seed, std::size_t max_order,
                                 unsigned threads) {
  const auto ys = simulate_tree_values(kernel, a, n, reps, seed, threads);
  return summarize(ys, max_order, seed, "tree",
                   {{"a", a},
                    {"n", static_cast<double>(n)},
                    {"kernel_table", kernel.family() == SplitKernel::Family::Uniform ? 0.0 : 1.0}},
                   threads);
}

identities::ComparisonReport scale_free_ratio_check(const SampleSummary& summary, double a_prime) {
  if (summary.max_order < 3 || summary.power_means.size() < 7) {
    throw LengthError("scale_free_ratio_check needs a summary with S >= 3");
  }
  const auto exact = moments::fkp_moments(a_prime, 3);
  const auto& pm = summary.power_means;
  const double n = static_cast<double>(summary.n);
  const double m1 = pm[1];

  identities::ComparisonReport report;
  report.label_a = "sample:" + summary.sampler;
  report.label_b = "fkp";
  report.params = summary.params;
  report.params["a_prime"] = a_prime;
  report.params["seed"] = static_cast<double>(summary.seed);
  report.params["n"] = n;
  report.tolerance = kZScoreTolerance;
  report.metric = "z-score";
  for (std::size_t k = 2; k <= 3; ++k) {
    const double kd = static_cast<double>(k);
    const double mk = pm[k];
    const double ratio = mk / std::pow(m1, kd);
    const double target = exact[k] / std::pow(exact[1], kd);
    // Delta method on (m̂_1, m̂_k) with the sample covariance matrix.
    const double g1 = -kd * mk / std::pow(m1, kd + 1.0);
    const double gk = 1.0 / std::pow(m1, kd);
    const double c11 = pm[2] - m1 * m1;
    const double c1k = pm[k + 1] - m1 * mk;
    const double ckk = pm[2 * k] - mk * mk;
    const double var = std::max(g1 * g1 * c11 + 2.0 * g1 * gk * c1k + gk * gk * ckk, 0.0) / n;
    const double se = std::sqrt(var);
    const double diff = std::abs(ratio - target);
    const double z = diff == 0.0 ? 0.0 : (se > 0.0 ? diff / se : std::numeric_limits<double>::infinity());
    report.per_s.push_back({k, ratio, target, z});
    report.diagnostics["ratio_se_" + std::to_string(k)] = se;
  }
  identities::finalize(report);
  return report;
}

std::map<double, double> empirical_distribution(std::span<const double> samples) {
  std::map<double, double> out;
  for (double x : samples) out[x] += 1.0;
  const double n = static_cast<double>(samples.size());
  for (auto& [_, w] : out) w /= n;
  return out;
}

double total_variation(const std::map<double, double>& p, const std::map<double, double>& q) {
  double acc = 0.0;
  for (const auto& [x, w] : p) {
    const auto it = q.find(x);
    acc += std::abs(w - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [x, w] : q) {
    if (!p.contains(x)) acc += w;
  }
  return 0.5 * acc;
}

}  // namespace limitlaw::mc
