#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dirshape/error.hpp"
#include "dirshape/synthetic.hpp"
#include "dirshape/transform.hpp"
#include "oracles.hpp"

using namespace dirshape;
using std::numbers::pi;

namespace {

void expect_map(const AffineMap& m, double a, double b, double c, double d, double tol = 1e-12) {
  EXPECT_NEAR(m.m11, a, tol);
  EXPECT_NEAR(m.m12, b, tol);
  EXPECT_NEAR(m.m21, c, tol);
  EXPECT_NEAR(m.m22, d, tol);
}

}  // namespace

TEST(Transform, ThetaZeroBetaTwo) { expect_map(make_transform({0.0, 2.0}), 2, 0, 0, 0.5); }

TEST(Transform, BetaOneIsIdentity) {
  for (double t : {-pi / 2, -0.3, 0.0, 1.1, pi / 2}) {
    const AffineMap m = make_transform({t, 1.0});
    EXPECT_EQ(m.m11, 1.0);
    EXPECT_EQ(m.m12, 0.0);
    EXPECT_EQ(m.m21, 0.0);
    EXPECT_EQ(m.m22, 1.0);
  }
}

TEST(Transform, QuarterPiBetaTwo) { expect_map(make_transform({pi / 4, 2.0}), 1.25, 0.75, 0.75, 1.25); }

TEST(Transform, RejectsBadParameters) {
  EXPECT_THROW(make_transform({0.0, 0.9}), Error);
  EXPECT_THROW(make_transform({2.0, 2.0}), Error);
  EXPECT_THROW(make_transform({0.0, std::nan("")}), Error);
}

TEST(Transform, DeterminantAndEigenstructure) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> th(-pi / 2, pi / 2), be(1.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = th(rng), b = be(rng);
    const AffineMap m = make_transform({t, b});
    EXPECT_NEAR(m.determinant(), 1.0, 1e-12);
    EXPECT_EQ(m.m12, m.m21);
    // F u = beta u along theta, F v = v / beta along theta + pi/2.
    const Point2 u{std::cos(t), std::sin(t)}, v{-std::sin(t), std::cos(t)};
    const Point2 fu = m.apply(u), fv = m.apply(v);
    EXPECT_NEAR(fu.x, b * u.x, 1e-9);
    EXPECT_NEAR(fu.y, b * u.y, 1e-9);
    EXPECT_NEAR(fv.x, v.x / b, 1e-9);
    EXPECT_NEAR(fv.y, v.y / b, 1e-9);
  }
}

TEST(Transform, IdentityIsNoOp) {
  const BinaryMask c = synthetic::cross(31, 9, 0);
  const BinaryMask out = apply_transform(pad(c, 3, 5, 0, 1), AffineMap::identity(), 6);
  EXPECT_EQ(out, crop_to_content(c, 6));
}

TEST(Transform, DiskToEllipse) {
  const double r = 30;
  const BinaryMask d = synthetic::disk(r);
  const BinaryMask e = apply_transform(d, make_transform({0.0, 2.0}), 4);
  const PixelBox box = bounding_box(e);
  // Semi-axes measured between extreme pixel centers.
  EXPECT_NEAR((box.width() - 1) / 2.0, 2 * r, 0.03 * 2 * r);
  EXPECT_NEAR((box.height() - 1) / 2.0, r / 2, 0.03 * r / 2);
  const double ellipse_area = pi * 2 * r * r / 2;
  EXPECT_NEAR(static_cast<double>(area(e)), ellipse_area, 0.03 * ellipse_area);
  EXPECT_EQ(box.x0, 4);
  EXPECT_EQ(box.y0, 4);
}

TEST(Transform, AreaPreservedOnCorpus) {
  const AffineMap f = make_transform({pi / 4, 3.0});
  for (const auto& s : synthetic::toy_corpus()) {
    const BinaryMask m = fill_holes(s.mask);
    ASSERT_GE(area(m), 256);
    const double a = static_cast<double>(area(m));
    EXPECT_NEAR(static_cast<double>(area(apply_transform(m, f, 4))), a, 0.02 * a) << s.id;
  }
}

TEST(Transform, RoundTripIoU) {
  for (const auto& s : synthetic::toy_corpus()) {
    const BinaryMask m = fill_holes(s.mask);
    for (const TransformParams p : {TransformParams{pi / 4, 2.0}, TransformParams{0.3, 1.5}}) {
      const AffineMap f = make_transform(p);
      const BinaryMask back =
          apply_transform(apply_transform(m, f, 4), f.inverse(), 0);
      const BinaryMask ref = crop_to_content(m, 0);
      // Centroids can differ by a fraction of a pixel, so compare the best
      // integer alignment within one pixel.
      double best = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          best = std::max(best, iou(pad(ref, 1 + dx, 1 + dy, 1 - dx, 1 - dy),
                                    pad(crop_to_content(back, 0), 1, 1, 1, 1)));
      EXPECT_GE(best, 0.98) << s.id << " theta " << p.theta << " beta " << p.beta;
    }
  }
}

TEST(Transform, CanvasGuard) {
  const BinaryMask m = synthetic::rectangle(200, 20);
  try {
    apply_transform(m, make_transform({0.0, 60.0}), 4);
    FAIL() << "expected CanvasTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CanvasTooLarge);
  }
}

TEST(Transform, InverseAndComposition) {
  const AffineMap f = make_transform({0.4, 2.5});
  const AffineMap id = f * f.inverse();
  expect_map(id, 1, 0, 0, 1, 1e-12);
  const AffineMap r = AffineMap::rotation(pi / 2);
  const Point2 p = r.apply({1, 0});
  EXPECT_NEAR(p.x, 0, 1e-15);
  EXPECT_NEAR(p.y, 1, 1e-15);
}
