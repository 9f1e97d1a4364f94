#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ocs_toe/matrix.hpp"
#include "ocs_toe/model.hpp"

namespace ocs_toe {

// SplitMix64 (Steele, Lea, Flood). The exact recurrence is documented in
// docs/formats.md so other implementations reproduce workloads bit-for-bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Seed for the index-th trial of a run seeded with `base`: the (index+1)-th
// output of SplitMix64(base).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

enum class WorkloadMode { Heavy, Sparse, Sequence };

struct WorkloadSpec {
  std::size_t p = 0;
  Count k_egroup = 0;
  WorkloadMode mode = WorkloadMode::Heavy;
  std::size_t sequence_length = 1;
  // mutation fraction as num/den in [0, 1]
  Count mutation_num = 0;
  Count mutation_den = 1;
  std::uint64_t seed = 0;
};

using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

// Uniform random (near-)perfect matching on p nodes: shuffle, pair neighbours.
Matching random_matching(std::size_t p, SplitMix64& rng);

IntMatrix sum_of_matchings(std::size_t p, const std::vector<Matching>& matchings);

// Sum of k_egroup random perfect matchings (every row sums to k_egroup when p
// is even).
LogicalTopology gen_heavy_workload(const WorkloadSpec& spec);

// Sum of k_egroup / 2 random matchings.
LogicalTopology gen_sparse_workload(const WorkloadSpec& spec);

// First element as gen_heavy_workload; each successor replaces
// ceil(mutation * k_egroup) of the constituent matchings with fresh ones.
std::vector<LogicalTopology> gen_sequence(const WorkloadSpec& spec);

}  // namespace ocs_toe
