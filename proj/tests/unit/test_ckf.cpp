#include <set>

#include <gtest/gtest.h>

#include "iota/ckf/ckf.hpp"
#include "iota/ckf/registry.hpp"
#include "iota/common/error.hpp"
#include "iota/common/rng.hpp"
#include "support/oracles.hpp"

using namespace iota::ckf;

namespace {

TokenParams params(int n_elements = 9, double sw = 64, double sh = 32) {
  return TokenParams::make(n_elements, sw, sh, 16, 16);
}

SemanticElement element(int index, double x, double y, double w = 16, double h = 16,
                        Direction d = Direction::none) {
  SemanticElement e;
  e.index = index;
  e.name = "e" + std::to_string(index);
  e.x = x;
  e.y = y;
  e.w = w;
  e.h = h;
  e.direction = d;
  return e;
}

}  // namespace

TEST(ComputeMu, Examples) {
  EXPECT_EQ(compute_mu(9), 10);
  EXPECT_EQ(compute_mu(11), 100);
  EXPECT_EQ(compute_mu(1), 10);
  EXPECT_EQ(compute_mu(99), 100);
  EXPECT_THROW(compute_mu(100), iota::DomainError);
  EXPECT_THROW(compute_mu(0), iota::DomainError);
}

TEST(ComputeMu, RangeInvariant) {
  for (int n = 1; n < 100; ++n) {
    const int mu = compute_mu(n);
    EXPECT_GT(mu, n);
    EXPECT_GE(10 * n, mu);
  }
}

TEST(ElementKey, Examples) {
  EXPECT_DOUBLE_EQ(element_key(1, 10), 0.1);
  EXPECT_DOUBLE_EQ(element_key(3, 10), 0.3);
  EXPECT_DOUBLE_EQ(element_key(7, 100), 0.07);
  EXPECT_THROW(element_key(10, 10), iota::DomainError);
}

TEST(GridPosition, Examples) {
  const auto p = params();
  const auto origin = grid_position(0, 0, p);
  EXPECT_EQ(origin.u, 0);
  EXPECT_EQ(origin.v, 0);
  EXPECT_EQ(origin.a, 0.0);
  EXPECT_EQ(origin.b, 0.0);

  const auto g = grid_position(40, 23, p);
  EXPECT_EQ(g.u, 2);
  EXPECT_EQ(g.a_digit, 5);
  EXPECT_DOUBLE_EQ(g.a, 0.05);
  EXPECT_EQ(g.v, 1);
  EXPECT_EQ(g.b_digit, 4);
  EXPECT_DOUBLE_EQ(g.b, 0.004);

  EXPECT_THROW(grid_position(-1, 0, p), iota::DomainError);
  EXPECT_THROW(grid_position(0, 33, p), iota::DomainError);
}

TEST(GridPosition, ExhaustiveAgainstDigitReference) {
  const auto p = params();
  for (int x = 0; x <= 64; ++x) {
    const auto g = grid_position(x, 0, p);
    EXPECT_EQ(g.u, x / 16);
    EXPECT_EQ(g.a_digit, (x % 16) * 10 / 16);
  }
}

TEST(DirectionValue, Examples) {
  EXPECT_DOUBLE_EQ(direction_value(Direction::east, 10), 0.0001);
  EXPECT_DOUBLE_EQ(direction_value(Direction::south_east, 10), 0.0008);
  EXPECT_EQ(direction_value(Direction::none, 100), 0.0);
  EXPECT_EQ(direction_from_delta(1, 0), Direction::east);
  EXPECT_EQ(direction_from_delta(0, 1), Direction::north);
  EXPECT_EQ(direction_from_delta(-1, -1), Direction::south_west);
  EXPECT_EQ(direction_from_delta(0, 0), Direction::none);
}

TEST(RelativeSize, Examples) {
  const auto p = params();
  EXPECT_EQ(relative_size(1, 40, 40, p).w, 1);
  EXPECT_EQ(relative_size(1, 40, 40, p).h, 1);
  EXPECT_EQ(relative_size(2, 48, 16, p).w, 3);
  EXPECT_EQ(relative_size(2, 48, 16, p).h, 1);
  EXPECT_EQ(relative_size(2, 17, 1, p).w, 2);
  EXPECT_EQ(relative_size(2, 17, 1, p).h, 1);
  EXPECT_THROW(relative_size(2, 0, 1, p), iota::DomainError);
}

TEST(Tokenize, Examples) {
  EXPECT_DOUBLE_EQ(tokenize_element(element(1, 0, 0), params()).value(), 0.1);

  const auto t = Token::pack(1, 5, 4, 1, 10);
  EXPECT_DOUBLE_EQ(t.value(), 0.1541);
  EXPECT_EQ(oracle::decode_bands(t.value(), 10), (oracle::Bands{1, 5, 4, 1}));

  const auto t2 = Token::pack(3, 5, 4, 2, 100);
  EXPECT_DOUBLE_EQ(t2.value(), 0.03542);
  EXPECT_EQ(oracle::decode_bands(t2.value(), 100), (oracle::Bands{3, 5, 4, 2}));
}

TEST(Tokenize, ElementFieldsReachBands) {
  const auto p = params();
  const auto t = tokenize_element(element(3, 40, 23, 16, 16, Direction::west), p);
  EXPECT_EQ(oracle::decode_bands(t.value(), 10), (oracle::Bands{3, 5, 4, 5}));
}

TEST(DecodeKey, Examples) {
  EXPECT_DOUBLE_EQ(decode_key(token_from_value(0.1541, 10)), 0.1);
  EXPECT_EQ(decode_key(Token()), 0.0);
  EXPECT_DOUBLE_EQ(decode_key(token_from_value(0.03542, 100)), 0.03);
}

TEST(Token, RoundTripAndInjectivity) {
  for (int mu : {10, 100}) {
    std::set<double> values;
    for (int k = 1; k < mu; ++k) {
      for (int a = 0; a < 10; ++a) {
        for (int b = 0; b < 10; ++b) {
          for (int d = 0; d <= 8; ++d) {
            const auto t = Token::pack(k, a, b, d, mu);
            ASSERT_EQ(oracle::decode_bands(t.value(), mu), (oracle::Bands{k, a, b, d}));
            ASSERT_EQ(token_from_value(t.value(), mu), t);
            values.insert(t.value());
          }
        }
      }
    }
    EXPECT_EQ(values.size(), static_cast<std::size_t>((mu - 1) * 10 * 10 * 9));
  }
}

TEST(BuildCkf, MainOnly) {
  const auto p = TokenParams::make(9, 32, 32, 16, 16);
  const auto g = build_ckf({element(1, 0, 0)}, p);
  ASSERT_EQ(g.rows(), 2);
  ASSERT_EQ(g.cols(), 2);
  EXPECT_EQ(g.flatten(), (std::vector<double>{0.1, 0, 0, 0}));
}

TEST(BuildCkf, WidePipeFillsThreeCells) {
  const auto p = params(9, 64, 48);
  const SemanticSet frame = {element(3, 0, 16, 48, 16), element(1, 48, 0)};
  const auto g = build_ckf(frame, p);
  EXPECT_EQ(g.flatten(), oracle::rasterize(frame, p, true));
  for (int c = 0; c < 3; ++c) EXPECT_EQ(g.key_at(1, c), 3);
  EXPECT_EQ(g.key_at(1, 3), 0);
}

TEST(BuildCkf, MainWrittenLast) {
  const auto p = params();
  const SemanticSet frame = {element(1, 16, 0), element(5, 16, 0), element(2, 0, 0, 32, 16)};
  const auto g = build_ckf(frame, p);
  EXPECT_EQ(g.key_at(0, 1), 1);
  EXPECT_EQ(g.key_at(0, 0), 2);
  EXPECT_EQ(build_underlay(frame, p).key_at(0, 1), 5);
}

TEST(BuildCkf, Errors) {
  const auto p = params();
  EXPECT_THROW(build_ckf({}, p), iota::DomainError);
  EXPECT_THROW(build_ckf({element(2, 0, 0)}, p), iota::DomainError);
  EXPECT_THROW(build_ckf({element(1, 0, 0), element(1, 16, 0)}, p), iota::DomainError);
}

TEST(BuildCkf, RandomFramesMatchRasterizerOracle) {
  iota::Rng rng(7);
  const auto p = TokenParams::make(12, 100, 90, 16, 16);
  for (int trial = 0; trial < 500; ++trial) {
    SemanticSet frame;
    const int n = 1 + static_cast<int>(rng.below(8));
    for (int i = 0; i < n; ++i) {
      const int index = 2 + static_cast<int>(rng.below(10));
      frame.push_back(element(index, rng.uniform(0, 100), rng.uniform(0, 90), rng.uniform(1, 50), rng.uniform(1, 50),
                              static_cast<Direction>(rng.below(9))));
    }
    frame.insert(frame.begin() + static_cast<long>(rng.below(frame.size() + 1)),
                 element(1, rng.uniform(0, 100), rng.uniform(0, 90), 16, 16, static_cast<Direction>(rng.below(9))));
    const auto g = build_ckf(frame, p);
    const auto want = oracle::rasterize(frame, p, true);
    const auto got = g.flatten();
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12) << "trial " << trial;
    EXPECT_EQ(g.rows(), 6);
    EXPECT_EQ(g.cols(), 7);
    EXPECT_EQ(build_ckf(frame, p), g);  // determinism
  }
}

TEST(BuildCkf, SubCellShiftIsVisible) {
  const auto p = params();
  const auto a = build_ckf({element(1, 16, 0)}, p);
  const auto b = build_ckf({element(1, 24, 0)}, p);
  EXPECT_NE(a, b);
  EXPECT_EQ(a.key_at(0, 1), b.key_at(0, 1));
}

TEST(Dump, FixedWidth) {
  const auto g = build_ckf({element(1, 0, 0)}, TokenParams::make(9, 32, 16, 16, 16));
  EXPECT_EQ(dump(g), "0.10000 0.00000\n");
  const auto g2 = build_ckf({element(1, 0, 0)}, TokenParams::make(11, 32, 16, 16, 16));
  EXPECT_EQ(dump(g2), "0.010000 0.000000\n");
}

TEST(Registry, IndicesAndEmpty) {
  Registry r({"mario", "ground", "pipe"});
  EXPECT_EQ(r.index_of("mario"), 1);
  EXPECT_EQ(r.index_of("pipe"), 3);
  EXPECT_EQ(r.index_of("empty"), 0);
  EXPECT_EQ(r.mu(), 10);
  EXPECT_FALSE(r.find("ghost").has_value());
  EXPECT_THROW(r.index_of("ghost"), iota::DomainError);
}
