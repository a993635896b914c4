#include <gtest/gtest.h>

#include <sstream>

#include "compknn/io.hpp"
#include "test_support.hpp"

namespace compknn {
namespace {

using testing::error_kind;

TEST(ParseCsv, QuotingAndLineEndings) {
  const auto r = parse_csv("a,\"b,c\",\"say \"\"hi\"\"\"\r\n1,2,3\n\n4,,6");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], (std::vector<std::string>{"a", "b,c", "say \"hi\""}));
  EXPECT_EQ(r[1], (std::vector<std::string>{"1", "2", "3"}));
  EXPECT_EQ(r[2], (std::vector<std::string>{"4", "", "6"}));
  EXPECT_EQ(error_kind([] { parse_csv("a,\"open"); }), ErrorKind::Parse);
}

const char* kGlassLike =
    "RI,Na,Mg,Al,Si,K,Ca,Ba,Fe,type\n"
    "1.52,13.64,4.49,1.10,71.78,0.06,8.75,0.00,0.00,WinF\n"
    "1.51,13.89,3.60,1.36,72.73,0.48,7.83,0.00,0.00,WinF\n"
    "1.52,14.36,0.00,2.02,73.42,0.00,8.44,1.64,0.00,Head\n"
    "1.51,13.00,0.00,3.02,70.70,6.21,6.93,0.00,0.00,Con\n";

TEST(Ingest, GlassShapedTable) {
  const auto in = ingest_csv_text(kGlassLike);
  EXPECT_EQ(in.data.dimension(), 8u);
  EXPECT_EQ(in.data.size(), 4u);
  EXPECT_EQ(in.data.classes(), (std::vector<std::string>{"WinF", "Head", "Con"}));
  EXPECT_EQ(in.data.labels(), (std::vector<ClassIndex>{0, 0, 1, 2}));
  EXPECT_EQ(in.label_column, "type");
  EXPECT_EQ(in.excluded_columns, (std::vector<std::string>{"RI"}));
  EXPECT_EQ(in.part_names.front(), "Na");
  EXPECT_EQ(in.closed_rows, 4u);
  for (const auto& row : in.data.rows()) EXPECT_NEAR(compensated_sum(row.parts()), 1.0, 1e-15);
}

TEST(Ingest, ExplicitLabelAndExclusions) {
  IngestOptions opts;
  opts.label_column = "type";
  opts.exclude = {"ri", "Fe", "Ba"};
  const auto in = ingest_csv_text(kGlassLike, opts);
  EXPECT_EQ(in.data.dimension(), 6u);
  EXPECT_EQ(in.excluded_columns.size(), 3u);

  const auto keep = ingest_csv_text("a,b,label\n0.3,0.7,x\n0.6,0.4,y\n", {std::nullopt, {}});
  EXPECT_EQ(keep.closed_rows, 0u);
  EXPECT_EQ(keep.data.rows()[0], (Composition{0.3, 0.7}));
}

TEST(Ingest, PercentRowsAreClosed) {
  const auto in = ingest_csv_text("a,b,c,cls\n20,30,50,x\n10,10,80,y\n");
  EXPECT_DOUBLE_EQ(in.data.rows()[0][2], 0.5);
  EXPECT_EQ(in.closed_rows, 2u);
}

TEST(Ingest, ErrorsNameRowAndColumn) {
  try {
    ingest_csv_text("a,b,c,cls\n0.2,0.3,0.5,x\n0.2,-0.3,0.5,y\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeComponent);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("data row 2"), std::string::npos);
    EXPECT_NE(msg.find("column 'b'"), std::string::npos);
  }
  EXPECT_EQ(error_kind([] { ingest_csv_text("a,b,cls\n0,0,x\n"); }), ErrorKind::DegenerateInput);
  EXPECT_EQ(error_kind([] { ingest_csv_text("a,b,cls\n0.1,abc,x\n"); }), ErrorKind::Parse);
  EXPECT_EQ(error_kind([] { ingest_csv_text("a,b,cls\n0.1,0.9\n"); }), ErrorKind::Parse);
  EXPECT_EQ(error_kind([] { ingest_csv_text("a,b,cls\n0.1,0.9,x\n", {"klass", {}}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(error_kind([] { ingest_csv("/nonexistent/file.csv"); }), ErrorKind::Io);
}

TEST(Ingest, WriteAndReadBack) {
  testing::CompositionGen gen(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto data = gen.clustered(15, 2 + gen.index(6), 1 + gen.index(3), 1.0);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < data.dimension(); ++i) names.push_back("p" + std::to_string(i));
    std::ostringstream out;
    write_dataset_csv(out, data, names, "group, label");
    const auto back = ingest_csv_text(out.str(), {"group, label", {}});
    EXPECT_EQ(back.data, data);
    EXPECT_EQ(back.part_names, names);
  }
  const auto in = ingest_csv_text(kGlassLike);
  std::ostringstream out;
  write_dataset_csv(out, in.data, in.part_names, in.label_column);
  EXPECT_EQ(ingest_csv_text(out.str()).data, in.data);
}

TEST(Grids, RangeSyntax) {
  const auto alphas = parse_real_grid("-1:1:0.1");
  ASSERT_EQ(alphas.size(), 21u);
  EXPECT_EQ(alphas.front(), -1.0);
  EXPECT_EQ(alphas.back(), 1.0);
  EXPECT_EQ(alphas[3], -0.7);
  EXPECT_EQ(alphas[10], 0.0);
  EXPECT_EQ(parse_real_grid("0.35"), (std::vector<double>{0.35}));
  EXPECT_EQ(parse_real_grid("0.5,1"), (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(parse_count_grid("1:15").size(), 15u);
  EXPECT_EQ(parse_count_grid("2,3"), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(error_kind([] { parse_count_grid("0:3"); }), ErrorKind::Parse);
  EXPECT_EQ(error_kind([] { parse_real_grid("1:0:0.1"); }), ErrorKind::Parse);
  EXPECT_EQ(error_kind([] { parse_real_grid("0:1:0"); }), ErrorKind::Parse);
}

}  // namespace
}  // namespace compknn
