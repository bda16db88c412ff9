#include <gtest/gtest.h>

#include "vpart/vpart.hpp"

using namespace vpart;

TEST(Io, MatrixJsonRoundTrip) {
  const auto a = example_3x6();
  const auto j = matrix_to_json(a);
  EXPECT_EQ(j.at("rows"), 3);
  EXPECT_EQ(j.at("cols"), 6);
  EXPECT_EQ(matrix_from_json(j), a);
  EXPECT_EQ(matrix_from_json(Json::parse(R"({"data": [[1, "2"], [0, 1]]})")), make_int_matrix({{1, 2}, {0, 1}}));
}

TEST(Io, MatrixJsonErrors) {
  for (const char* bad : {R"([1,2])", R"({"data": []})", R"({"data": [[1,2],[3]]})", R"({"rows": 3, "data": [[1]]})",
                          R"({"data": [[1.5]]})"}) {
    try {
      matrix_from_json(Json::parse(bad));
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidInput) << bad;
    }
  }
  EXPECT_THROW(read_matrix_file("/nonexistent/file.json"), Error);
}

TEST(Io, BigIntegersBecomeStrings) {
  const std::vector<BigInt> v{5, parse_bigint("123456789012345678901234567890")};
  const auto j = vector_to_json(v);
  EXPECT_TRUE(j[0].is_number_integer());
  EXPECT_EQ(j[1], "123456789012345678901234567890");
}

TEST(Io, CsvIntegers) {
  EXPECT_EQ(parse_csv_integers("1, 3,-2"), (std::vector<BigInt>{1, 3, -2}));
  EXPECT_EQ(parse_csv_integers("+4"), (std::vector<BigInt>{4}));
  EXPECT_THROW(parse_csv_integers("1,,2"), Error);
  EXPECT_THROW(parse_csv_integers("1,a"), Error);
  EXPECT_THROW(parse_csv_integers(""), Error);
}

TEST(Io, ChamberJsonRoundTrip) {
  const auto c = chamber_of(kostant_matrix(4), {1, 1, 1, -3});
  const auto j = chamber_to_json(c);
  EXPECT_EQ(j.at("signature")[0][0], c.signature[0][0] + 1);
  const auto back = chamber_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.signature, c.signature);
  EXPECT_EQ(back.representative, c.representative);
  EXPECT_EQ(back.inequalities, c.inequalities);
  EXPECT_THROW(chamber_from_json(Json::parse(R"({"signature": [[0]], "representative": [], "inequalities": []})")),
               Error);
}
