#include <algorithm>
#include <numeric>
#include <string>

#include "compknn/error.hpp"
#include "compknn/evaluation.hpp"
#include "compknn/rng.hpp"

namespace compknn {

std::vector<std::size_t> stratified_test_counts(
    const std::vector<std::size_t>& class_sizes, std::size_t test_total) {
  const std::size_t classes = class_sizes.size();
  const std::size_t total =
      std::accumulate(class_sizes.begin(), class_sizes.end(), std::size_t{0});
  if (test_total < classes) {
    throw Error(ErrorKind::InfeasibleStratification,
                "test size " + std::to_string(test_total) + " is below the " +
                    std::to_string(classes) + " classes");
  }
  if (test_total >= total) {
    throw Error(ErrorKind::InfeasibleStratification,
                "test size " + std::to_string(test_total) +
                    " leaves no training rows out of " + std::to_string(total));
  }
  for (std::size_t c = 0; c < classes; ++c) {
    if (class_sizes[c] == 0) {
      throw Error(ErrorKind::InfeasibleStratification,
                  "class " + std::to_string(c) + " has no rows");
    }
  }

  // Exact quotas are test_total * n_c / total; compare remainders as integers
  // (test_total * n_c mod total) to stay away from floating ties.
  std::vector<std::size_t> counts(classes);
  std::vector<std::size_t> remainder(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    const std::size_t scaled = test_total * class_sizes[c];
    counts[c] = std::clamp<std::size_t>(scaled / total, 1, class_sizes[c]);
    remainder[c] = scaled % total;
  }
  std::size_t assigned = std::accumulate(counts.begin(), counts.end(), std::size_t{0});

  std::vector<std::size_t> by_remainder(classes);
  std::iota(by_remainder.begin(), by_remainder.end(), std::size_t{0});
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });

  while (assigned < test_total) {
    bool progressed = false;
    for (std::size_t c : by_remainder) {
      if (assigned == test_total) break;
      if (counts[c] < class_sizes[c]) {
        ++counts[c];
        ++assigned;
        progressed = true;
      }
    }
    if (!progressed) break;
  }
  // The one-per-class floor can overshoot; take back from the classes with
  // the smallest remainders that can spare a row.
  while (assigned > test_total) {
    bool progressed = false;
    for (auto it = by_remainder.rbegin(); it != by_remainder.rend(); ++it) {
      if (assigned == test_total) break;
      if (counts[*it] > 1) {
        --counts[*it];
        --assigned;
        progressed = true;
      }
    }
    if (!progressed) break;
  }
  return counts;
}

std::uint64_t Split::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i : test_indices) {
    for (int b = 0; b < 8; ++b) {
      h ^= (static_cast<std::uint64_t>(i) >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

Split stratified_holdout(const LabeledDataset& data, std::size_t test_total,
                         std::uint64_t seed, std::uint64_t replication_index) {
  const auto counts = stratified_test_counts(data.class_sizes(), test_total);

  std::vector<std::vector<std::size_t>> members(data.class_count());
  for (std::size_t i = 0; i < data.size(); ++i) {
    members[data.labels()[i]].push_back(i);
  }

  // Partial Fisher-Yates within each class, classes in catalog order.
  ReplicationStream stream(seed, replication_index);
  std::vector<bool> in_test(data.size(), false);
  for (std::size_t c = 0; c < members.size(); ++c) {
    auto& pool = members[c];
    for (std::size_t r = 0; r < counts[c]; ++r) {
      const std::size_t pick = r + static_cast<std::size_t>(stream.below(pool.size() - r));
      std::swap(pool[r], pool[pick]);
      in_test[pool[r]] = true;
    }
  }

  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (std::size_t i = 0; i < data.size(); ++i) {
    (in_test[i] ? test_idx : train_idx).push_back(i);
  }
  Split split{data.subset(train_idx), data.subset(test_idx), train_idx, test_idx};
  return split;
}

}  // namespace compknn
