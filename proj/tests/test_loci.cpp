#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "compknn/loci.hpp"
#include "test_support.hpp"

namespace compknn {
namespace {

using testing::CompositionGen;
using testing::error_kind;

const double kRoot3 = std::sqrt(3.0);

TEST(TernaryEmbed, VerticesAndCentroid) {
  auto a = ternary_embed({1, 0, 0});
  EXPECT_EQ(a.x, 0.0);
  EXPECT_EQ(a.y, 0.0);
  auto b = ternary_embed({0, 1, 0});
  EXPECT_EQ(b.x, 1.0);
  EXPECT_EQ(b.y, 0.0);
  auto apex = ternary_embed({0, 0, 1});
  EXPECT_DOUBLE_EQ(apex.x, 0.5);
  EXPECT_DOUBLE_EQ(apex.y, kRoot3 / 2);
  auto centre = ternary_embed(Composition::barycentre(3));
  EXPECT_NEAR(centre.x, 0.5, 1e-15);
  EXPECT_NEAR(centre.y, kRoot3 / 6, 1e-15);
  EXPECT_EQ(error_kind([] { ternary_embed({0.5, 0.5}); }), ErrorKind::DimensionMismatch);
}

TEST(TernaryEmbed, InjectiveAndInsideTriangle) {
  CompositionGen gen(41);
  for (int i = 0; i < 1000; ++i) {
    const Composition c = gen.with_zeros(3, 0.2);
    const auto p = ternary_embed(c);
    // Inside: y >= 0, and on the inner side of both slanted edges.
    EXPECT_GE(p.y, -1e-15);
    EXPECT_LE(p.y, kRoot3 * p.x + 1e-12);
    EXPECT_LE(p.y, kRoot3 * (1 - p.x) + 1e-12);
    // The inverse map recovers the composition.
    const double c3 = p.y * 2 / kRoot3;
    const double c2 = p.x - c3 / 2;
    EXPECT_NEAR(c3, c[2], 1e-12);
    EXPECT_NEAR(c2, c[1], 1e-12);
    EXPECT_NEAR(1 - c2 - c3, c[0], 1e-12);
  }
}

LabeledDataset lake_like(CompositionGen& gen) {
  std::vector<Composition> rows;
  std::vector<ClassIndex> labels;
  for (int i = 0; i < 40; ++i) {
    rows.push_back(gen.positive(3));
    labels.push_back(0);
  }
  return LabeledDataset(rows, labels, {"all"});
}

TEST(TransformDataset, IdentityAndCollapse) {
  CompositionGen gen(42);
  const auto data = lake_like(gen);
  const auto same = transform_dataset(data, 1.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto direct = ternary_embed(data.rows()[i]);
    EXPECT_EQ(same[i].x, direct.x);
    EXPECT_EQ(same[i].y, direct.y);
  }
  const auto centre = ternary_embed(Composition::barycentre(3));
  for (const auto& p : transform_dataset(data, 1e-8)) {
    EXPECT_LE(std::hypot(p.x - centre.x, p.y - centre.y), 1e-6);
  }
  for (const auto& p : transform_dataset(data, -1.0)) {
    EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
  }
}

TEST(TransformDataset, NegativePowerRejectsZeros) {
  const LabeledDataset data({{0.2, 0.3, 0.5}, {0.5, 0.5, 0.0}}, {0, 0}, {"a"});
  EXPECT_EQ(error_kind([&] { transform_dataset(data, -1.0); }), ErrorKind::ZeroUnderNegativePower);
  EXPECT_NO_THROW(transform_dataset(data, 0.5));
}

std::map<std::array<std::size_t, 3>, double> by_lattice(const DistanceField& f) {
  std::map<std::array<std::size_t, 3>, double> m;
  for (std::size_t p = 0; p < f.values.size(); ++p) {
    const auto [i, j] = f.lattice[p];
    m[{i, j, f.resolution - i - j}] = f.values[p];
  }
  return m;
}

TEST(DistanceField, LatticeAndOrdering) {
  const auto f = distance_field(MetricSpec(MetricFamily::TC, 1), Composition::barycentre(3), 6);
  EXPECT_EQ(f.points.size(), 28u);  // (n+1)(n+2)/2
  EXPECT_EQ(f.lattice.front(), (std::pair<std::size_t, std::size_t>{0, 0}));
  EXPECT_EQ(f.lattice[1], (std::pair<std::size_t, std::size_t>{0, 1}));
  for (double v : f.values) EXPECT_GE(v, 0.0);
  EXPECT_EQ(error_kind([] { distance_field(MetricSpec(MetricFamily::TC), Composition::barycentre(3), 1); }),
            ErrorKind::InvalidArgument);
}

TEST(DistanceField, ZeroAtBarycentreAndMinimumThere) {
  for (const auto& spec : {MetricSpec(MetricFamily::ESOV, 0.5), MetricSpec(MetricFamily::TC, -0.5),
                           MetricSpec(MetricFamily::AITCHISON), MetricSpec(MetricFamily::HELLINGER)}) {
    const auto f = distance_field(spec, Composition::barycentre(3), 30);
    const auto m = by_lattice(f);
    EXPECT_LE(m.at({10, 10, 10}), 1e-15) << spec.label();
    const auto it = std::min_element(f.values.begin(), f.values.end());
    EXPECT_EQ(f.lattice[it - f.values.begin()], (std::pair<std::size_t, std::size_t>{10, 10}));
  }
  // n = 10: the nearest lattice points are the permutations of (3, 3, 4).
  const auto f = distance_field(MetricSpec(MetricFamily::ESOV, 1), Composition::barycentre(3), 10);
  const auto it = std::min_element(f.values.begin(), f.values.end());
  const auto [i, j] = f.lattice[it - f.values.begin()];
  std::array<std::size_t, 3> parts{i, j, 10 - i - j};
  std::sort(parts.begin(), parts.end());
  EXPECT_EQ(parts, (std::array<std::size_t, 3>{3, 3, 4}));
}

TEST(DistanceField, PermutationSymmetry) {
  const std::size_t n = 24;
  for (const auto& spec : {MetricSpec(MetricFamily::ESOV, -1), MetricSpec(MetricFamily::ESOV, 0.1),
                           MetricSpec(MetricFamily::TC, 0.5), MetricSpec(MetricFamily::AITCHISON)}) {
    const auto m = by_lattice(distance_field(spec, Composition::barycentre(3), n));
    for (const auto& [key, value] : m) {
      std::array<std::size_t, 3> perm = key;
      std::sort(perm.begin(), perm.end());
      do {
        ASSERT_TRUE(m.count(perm));
        EXPECT_NEAR(m.at(perm), value, 1e-12) << spec.label();
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST(DistanceField, DomainSkipsBoundary) {
  const std::size_t n = 12;
  const auto ait = distance_field(MetricSpec(MetricFamily::AITCHISON), Composition::barycentre(3), n);
  EXPECT_EQ(ait.points.size(), (n - 1) * (n - 2) / 2);  // interior points only
  for (const auto& p : ait.points) EXPECT_TRUE(p.composition.strictly_positive());
  const auto neg = distance_field(MetricSpec(MetricFamily::TC, -0.5), Composition::barycentre(3), n);
  EXPECT_EQ(neg.points.size(), ait.points.size());
  const auto pos = distance_field(MetricSpec(MetricFamily::TC, 0.5), Composition::barycentre(3), n);
  EXPECT_EQ(pos.points.size(), (n + 1) * (n + 2) / 2);
}

TEST(DistanceField, ReferenceOutsideDomain) {
  EXPECT_EQ(error_kind([] { distance_field(MetricSpec(MetricFamily::AITCHISON), {0.5, 0.5, 0}, 10); }),
            ErrorKind::ZeroInAitchison);
  EXPECT_EQ(error_kind([] { distance_field(MetricSpec(MetricFamily::ESOV, -1), {0.5, 0.5, 0}, 10); }),
            ErrorKind::ZeroUnderNegativePower);
}

TEST(DistanceField, CsvHeader) {
  const auto f = distance_field(MetricSpec(MetricFamily::TC), Composition::barycentre(3), 3);
  std::ostringstream out;
  write_field_csv(out, f);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "c1,c2,c3,x,y,value");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 10u);
}

}  // namespace
}  // namespace compknn
