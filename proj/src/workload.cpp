#include "ocs_toe/workload.hpp"

#include <numeric>

#include "ocs_toe/errors.hpp"

namespace ocs_toe {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("bound must be positive");
  // 2^64 mod bound; values under it would bias the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 g(base + index * 0x9E3779B97F4A7C15ULL);
  return g.next();
}

Matching random_matching(std::size_t p, SplitMix64& rng) {
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = p; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  Matching m;
  for (std::size_t t = 0; t + 1 < p; t += 2) m.emplace_back(perm[t], perm[t + 1]);
  return m;
}

IntMatrix sum_of_matchings(std::size_t p, const std::vector<Matching>& matchings) {
  IntMatrix c = IntMatrix::square(p);
  for (const auto& m : matchings) {
    for (const auto& [a, b] : m) {
      c(a, b) += 1;
      c(b, a) += 1;
    }
  }
  return c;
}

namespace {

void check_spec(const WorkloadSpec& spec) {
  if (spec.p < 2) throw ValidationError("workload needs p >= 2");
  if (spec.k_egroup <= 0 || spec.k_egroup % 2 != 0) throw ValidationError("k_egroup must be a positive even integer");
}

std::vector<Matching> draw(std::size_t p, Count count, SplitMix64& rng) {
  std::vector<Matching> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Count r = 0; r < count; ++r) out.push_back(random_matching(p, rng));
  return out;
}

}  // namespace

LogicalTopology gen_heavy_workload(const WorkloadSpec& spec) {
  check_spec(spec);
  SplitMix64 rng(spec.seed);
  return LogicalTopology::from_matrix(sum_of_matchings(spec.p, draw(spec.p, spec.k_egroup, rng)), spec.k_egroup);
}

LogicalTopology gen_sparse_workload(const WorkloadSpec& spec) {
  check_spec(spec);
  SplitMix64 rng(spec.seed);
  return LogicalTopology::from_matrix(sum_of_matchings(spec.p, draw(spec.p, spec.k_egroup / 2, rng)),
                                      spec.k_egroup);
}

std::vector<LogicalTopology> gen_sequence(const WorkloadSpec& spec) {
  check_spec(spec);
  if (spec.sequence_length == 0) throw ValidationError("sequence_length must be at least 1");
  if (spec.mutation_den <= 0 || spec.mutation_num < 0 || spec.mutation_num > spec.mutation_den)
    throw ValidationError("mutation fraction must lie in [0, 1]");
  SplitMix64 rng(spec.seed);
  std::vector<Matching> parts = draw(spec.p, spec.k_egroup, rng);
  const Count replace = (spec.mutation_num * spec.k_egroup + spec.mutation_den - 1) / spec.mutation_den;

  std::vector<LogicalTopology> seq;
  seq.reserve(spec.sequence_length);
  seq.push_back(LogicalTopology::from_matrix(sum_of_matchings(spec.p, parts), spec.k_egroup));
  std::vector<std::size_t> order(parts.size());
  for (std::size_t s = 1; s < spec.sequence_length; ++s) {
    // partial Fisher-Yates picks `replace` distinct constituents
    std::iota(order.begin(), order.end(), 0);
    for (Count r = 0; r < replace; ++r) {
      const auto pos = static_cast<std::size_t>(r);
      const auto pick = pos + static_cast<std::size_t>(rng.below(order.size() - pos));
      std::swap(order[pos], order[pick]);
      parts[order[pos]] = random_matching(spec.p, rng);
    }
    seq.push_back(LogicalTopology::from_matrix(sum_of_matchings(spec.p, parts), spec.k_egroup));
  }
  return seq;
}

}  // namespace ocs_toe
