#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypertree/complex.hpp"
#include "hypertree/homology.hpp"
#include "hypertree/kernel.hpp"
#include "hypertree/rng.hpp"

namespace hypertree {

enum class Method { Dpp, Mh };

const char* to_string(Method m);
/// Throws InputError for anything other than "dpp" or "mh".
Method parse_method(const std::string& s);

struct SampleRecord {
  int n = 0;
  std::uint64_t seed = 0;
  Method method = Method::Dpp;
  Complex2 complex;
  std::vector<BigInt> h1_factors;  // invariant factors > 1
  BigInt h1_order = 1;
  double ms = 0.0;
};

struct DppOptions {
  /// Float backend only: resamples allowed when the exact 2-tree post-check fails.
  int retry_budget = 10;
};

/// One exact (rational backend) or approximate (float backend) draw from the
/// projection DPP by sequential conditioning. Deterministic given the stream.
SampleRecord sample_dpp(const DppKernel& kernel, Rng& rng, const DppOptions& options = {});

struct MhState {
  Complex2 current;
  BigInt h1_order = 1;
  std::uint64_t steps = 0;
  std::uint64_t accepted = 0;
  /// Proposals whose exchange produced a 2-tree.
  std::uint64_t valid = 0;

  double acceptance_rate() const { return steps ? static_cast<double>(accepted) / steps : 0.0; }
};

/// Basis-exchange Metropolis chain targeting |H_1|^2. A step draws a face of
/// T and a face outside T uniformly, rejects if the exchange is not a 2-tree,
/// and otherwise accepts with probability min(1, (|H_1(T')| / |H_1(T)|)^2).
class MhChain {
 public:
  /// Starts from `initial` (must be a 2-tree) or the cone 2-tree.
  MhChain(int n, std::optional<Complex2> initial = std::nullopt);

  void step(Rng& rng);
  const MhState& state() const { return state_; }

 private:
  MhState state_;
};

/// Runs `steps` steps; `observe` (if given) sees the state after each step.
MhState mh_chain(int n, std::uint64_t steps, Rng& rng, std::optional<Complex2> initial = std::nullopt,
                 const std::function<void(const MhState&)>& observe = {});

struct BatchOptions {
  KernelBackend backend = KernelBackend::Rational;
  /// MH steps between recorded states (and before the first one).
  std::uint64_t mh_steps = 1000;
  int workers = 1;
  bool timing = false;
  DppOptions dpp;
  KernelOptions kernel;
};

/// `count` records from `workers` independent streams seeded seed+0 ..
/// seed+workers-1. Worker w produces a contiguous share (the first
/// count % workers workers get one extra) and shares are concatenated in
/// worker order, so the output depends only on (seed, workers).
std::vector<SampleRecord> sample_batch(int n, std::size_t count, Method method, std::uint64_t seed,
                                       const BatchOptions& options = {});

/// Overload reusing an existing kernel for DPP batches.
std::vector<SampleRecord> sample_batch(const DppKernel& kernel, std::size_t count, std::uint64_t seed,
                                       const BatchOptions& options = {});

/// Batch-means estimate of a stationary mean from a correlated series.
struct BatchMeans {
  double mean = 0.0;
  double std_error = 0.0;
  int batches = 0;
};
BatchMeans batch_means(const std::vector<double>& series, int batches = 50);

}  // namespace hypertree
