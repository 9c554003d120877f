#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lfc/consistency.hpp"
#include "lfc/error.hpp"
#include "lfc/render.hpp"
#include "lfc/synthetic.hpp"
#include "oracles.hpp"

using namespace lfc;

namespace {

constexpr int kSize = 64;

ViewSet constant_disparity_views(int d, int radius, int size = kSize, std::uint64_t seed = 31) {
  SyntheticScene scene{{full_frame_layer(d, seed, radius, radius, size, size)}};
  return generate_synthetic(scene, radius, radius, size, size).light_field.views();
}

double interior_mse(const ViewImage& a, const ViewImage& b, int border) {
  double sum = 0.0;
  long long n = 0;
  for (int y = border; y < a.height() - border; ++y)
    for (int x = border; x < a.width() - border; ++x)
      for (int c = 0; c < 3; ++c) {
        const double e = static_cast<double>(a.at(x, y, c)) - b.at(x, y, c);
        sum += e * e;
        ++n;
      }
  return sum / static_cast<double>(n);
}

double row_to_row_mad(const ViewImage& epi) {
  double sum = 0.0;
  long long n = 0;
  for (int r = 1; r < epi.height(); ++r)
    for (int x = 0; x < epi.width(); ++x)
      for (int c = 0; c < 3; ++c) {
        sum += std::abs(static_cast<double>(epi.at(x, r, c)) - epi.at(x, r - 1, c));
        ++n;
      }
  return sum / static_cast<double>(n);
}

}  // namespace

TEST(RefocusTest, SlopeEqualToDisparityReproducesCentral) {
  for (int d : {-1, 1, 2}) {
    const ViewSet views = constant_disparity_views(d, 2);
    const FocalSlice slice = refocus(views, d);
    // Away from the border every view contributes and samples land on pixels.
    EXPECT_LT(interior_mse(slice.image, views.at({0, 0}), 2 * std::abs(d) + 1), 1e-12) << d;
    EXPECT_EQ(slice.coverage(kSize / 2, kSize / 2), 25);
  }
}

TEST(RefocusTest, ZeroBaselineIsIdentityAtAnySlope) {
  ViewSet one;
  one.emplace(ViewIndex{0, 0}, constant_disparity_views(0, 0).at({0, 0}));
  for (double slope : {-3.0, 0.0, 1.7}) EXPECT_EQ(refocus(one, slope).image, one.at({0, 0}));
}

TEST(RefocusTest, InFocusSliceIsSharperThanDefocused) {
  const ViewSet views = constant_disparity_views(0, 2);
  const double focused = mean_local_variance(refocus(views, 0.0).image, 4);
  EXPECT_GT(focused, mean_local_variance(refocus(views, 1.0).image, 4));
  EXPECT_GT(focused, mean_local_variance(refocus(views, -1.0).image, 4));
}

TEST(RefocusTest, LinearInTheViews) {
  const ViewSet a = constant_disparity_views(1, 1, 32, 41), b = constant_disparity_views(-1, 1, 32, 42);
  ViewSet mix;
  for (const auto& [v, img] : a) {
    ViewImage m(32, 32);
    for (std::size_t i = 0; i < m.data().size(); ++i) m.data()[i] = 0.25f * img.data()[i] + 0.5f * b.at(v).data()[i];
    mix.emplace(v, std::move(m));
  }
  const double slope = 0.6;
  const FocalSlice fa = refocus(a, slope), fb = refocus(b, slope), fm = refocus(mix, slope);
  for (std::size_t i = 0; i < fm.image.data().size(); ++i) {
    ASSERT_NEAR(fm.image.data()[i], 0.25f * fa.image.data()[i] + 0.5f * fb.image.data()[i], 1e-6f);
  }
}

TEST(RefocusTest, RejectsBadInput) {
  EXPECT_THROW(refocus(ViewSet{}, 1.0), DomainError);
  EXPECT_THROW(refocus(constant_disparity_views(0, 1, 8), std::nan("")), DomainError);
}

TEST(EpiTest, ZeroDisparityRowsAreIdentical) {
  const ViewSet views = constant_disparity_views(0, 3);
  const EpipolarImage epi = extract_epi(views, 20, 0);
  ASSERT_EQ(epi.image.height(), 7);
  for (int r = 1; r < 7; ++r)
    for (int x = 0; x < kSize; ++x) ASSERT_EQ(epi.image.pixel(x, r), epi.image.pixel(x, 0));
}

TEST(EpiTest, RowsFollowIncreasingSAndMiddleRowIsCentral) {
  const ViewSet views = constant_disparity_views(1, 2);
  const EpipolarImage epi = extract_epi(views, 10, 0);
  for (int x = 0; x < kSize; ++x) {
    EXPECT_EQ(epi.image.pixel(x, 2), views.at({0, 0}).pixel(x, 10));
    EXPECT_EQ(epi.image.pixel(x, 0), views.at({-2, 0}).pixel(x, 10));
  }
  const EpipolarImage vert = extract_epi_vertical(views, 12, 1);
  EXPECT_FALSE(vert.horizontal);
  for (int y = 0; y < kSize; ++y) EXPECT_EQ(vert.image.pixel(y, 4), views.at({1, 2}).pixel(12, y));
  EXPECT_THROW(extract_epi(views, kSize, 0), DomainError);
  EXPECT_THROW(extract_epi(views, 0, 3), DomainError);
}

TEST(EpiTest, RampEdgeSlopeMatchesDisparity) {
  for (double d : {-1.0, 0.0, 1.5, 2.0}) {
    const ViewSet views = oracle::ramp_edge_views(64, 4, d, 31.3);
    const EpipolarImage epi = extract_epi(views, 5, 0);
    EXPECT_NEAR(oracle::epi_edge_slope(epi, 16, 48), d, 0.2) << d;
  }
}

TEST(EpiTest, SyntheticLayerSlopesMatchGroundTruth) {
  const int n = 96;
  const auto synth = generate_synthetic(oracle::two_layer_scene(n, 4), 4, 4, n, n);
  const EpipolarImage epi = extract_epi(synth.light_field.views(), n / 2, 0);
  // Interior of the front square, and a background strip left of it.
  EXPECT_NEAR(oracle::epi_track_slope(epi, 40, 56, 12), 2.0, 0.2);
  EXPECT_NEAR(oracle::epi_track_slope(epi, 4, 20, 3), 0.0, 0.2);
}

TEST(EpiTest, WarpBlendSmoothsEpiRows) {
  const int n = 64;
  const auto synth = generate_synthetic(oracle::two_layer_scene(n, 2), 2, 2, n, n);
  const Geometry g = reverse_all(synth.light_field, synth.ground_truth.at({0, 0}));
  const ViewSet naive = pseudo_stylize(synth.light_field, 1);
  const ViewSet blended = warp_blend_all(naive, g);
  // Row 8 only crosses the background (d = 0), where consistent rows agree.
  EXPECT_LT(row_to_row_mad(extract_epi(blended, 8, 0).image), row_to_row_mad(extract_epi(naive, 8, 0).image));
}

TEST(LocalVarianceTest, ConstantIsZeroAndCheckerboardIsKnown) {
  EXPECT_EQ(mean_local_variance(oracle::constant_image(8, 8, {0.4f, 0.4f, 0.4f})), 0.0);
  ViewImage cb(8, 8);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      const float v = (x + y) % 2 ? 1.0f : 0.0f;
      cb.set_pixel(x, y, {v, v, v});
    }
  // 3x3 windows hold 5 of one value and 4 of the other: variance 20/81.
  EXPECT_NEAR(mean_local_variance(cb), 20.0 / 81.0, 1e-6);
}
