#include <gtest/gtest.h>

#include <random>

#include "mgs/surface.hpp"
#include "mgs/surface_io.hpp"
#include "figures.hpp"
#include "surfaces.hpp"

using mgs::IceQuiver;
using mgs::TaggedTriangulation;

namespace {

std::vector<mgs::PointId> names_to_ids(const TaggedTriangulation& t, std::vector<std::string> names) {
  std::vector<mgs::PointId> out;
  for (const auto& n : names) out.push_back(t.point_id(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Surface, TorusWithFourPuncturesQuiver) {
  auto t = build::load("torus4_fig1.tagtri");
  EXPECT_TRUE(validate(t).empty());
  EXPECT_EQ(quiver_of(t), figures::figure1_quiver());
}

TEST(Surface, GenusTwoExampleQuiver) {
  auto t = build::load("genus2_tstar.tagtri");
  EXPECT_TRUE(validate(t).empty());
  EXPECT_EQ(quiver_of(t), figures::figure4_quiver());
}

TEST(Surface, OncePuncturedTorusIsMarkov) {
  auto t = build::load("torus1.tagtri");
  auto q = quiver_of(t);
  for (const auto& a : q.arrows()) EXPECT_EQ(a.mult, 2);
  EXPECT_EQ(q.arrows().size(), 3u);
  for (int v = 1; v <= 3; ++v) EXPECT_EQ(mutate(quiver_of(t), v).arrows().size(), 3u);
}

TEST(Surface, DataFilesRoundTrip) {
  for (const char* f : {"torus4_fig1.tagtri", "genus2_tstar.tagtri", "torus10_fig6.tagtri", "sigma_star_fig9.tagtri",
                        "disk5.tagtri", "torus1.tagtri", "annulus11.tagtri"}) {
    auto t = build::load(f);
    EXPECT_TRUE(validate(t).empty()) << f;
    EXPECT_EQ(mgs::parse_triangulation(mgs::serialize_triangulation(t)), t) << f;
  }
}

TEST(Surface, ValidationReportsDefects) {
  auto d = mgs::tagtri_from_json(mgs::detail::parse_json(mgs::serialize_triangulation(build::load("torus4_fig1.tagtri"))));
  auto missing = d;
  missing.arcs.pop_back();
  EXPECT_FALSE(validate(missing).empty());
  auto loop = d;
  loop.arcs[0].ends[1].tag = mgs::Tag::Notched;
  auto v = validate(loop);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v[0].find("mismatched"), std::string::npos);
  auto clash = d;
  clash.arcs[2].ends[1].tag = mgs::Tag::Notched;  // P notched on one arc only
  EXPECT_FALSE(validate(clash).empty());
  EXPECT_THROW(mgs::triangulation_from_data(missing), mgs::InvalidTriangulation);
}

TEST(Surface, ExcludedSurfaces) {
  EXPECT_FALSE(mgs::surface_exclusion({0, {}, 3}).empty());
  EXPECT_FALSE(mgs::surface_exclusion({0, {1}, 1}).empty());
  EXPECT_FALSE(mgs::surface_exclusion({0, {3}, 0}).empty());
  EXPECT_TRUE(mgs::surface_exclusion({0, {5}, 0}).empty());
  EXPECT_TRUE(mgs::surface_exclusion({1, {}, 1}).empty());
  EXPECT_EQ(mgs::expected_arc_count({2, {}, 10}), 36);
  EXPECT_EQ(mgs::expected_arc_count({1, {}, 4}), 12);
}

TEST(Surface, RadialPunctureAndMonogons) {
  auto t = build::load("genus2_tstar.tagtri");
  auto radial = radial_punctures(t);
  ASSERT_EQ(radial.size(), 1u);
  EXPECT_EQ(t.points[radial[0].puncture].name, "S1");
  EXPECT_EQ(radial[0].inner, 24);
  EXPECT_EQ(radial[0].companion, 25);
  auto i24 = iota(t, 24);
  EXPECT_TRUE(i24.loop());
  EXPECT_EQ(i24.first, t.point_id("X"));
  EXPECT_EQ(*i24.encloses, t.point_id("S1"));
  auto i25 = iota(t, 25);
  EXPECT_FALSE(i25.loop());
  EXPECT_EQ(monogon_interior(t, 29), names_to_ids(t, {"R1", "R2", "R3"}));
  EXPECT_THROW(monogon_interior(t, 25), mgs::NotALoop);
  auto tags = tagged_arcs(t);
  EXPECT_EQ(tags[23].ends[1].tag, mgs::Tag::Notched);
}

TEST(Surface, NotchedArcInTorusExample) {
  auto t = build::load("torus10_fig6.tagtri");
  auto b = iota(t, 30);
  EXPECT_TRUE(b.loop());
  EXPECT_EQ(*b.encloses, t.point_id("S"));
}

TEST(Surface, HandleLoopIsNotADisk) {
  auto t = build::load("torus1.tagtri");
  EXPECT_THROW(monogon_interior(t, 1), mgs::NotADisk);
}

TEST(Surface, FlipOfRadiusProducesNotchedArc) {
  auto t = build::load("genus2_tstar.tagtri");
  auto s1 = t.point_id("S1");
  auto f = flip(t, 25);
  EXPECT_FALSE(mgs::is_radial(f, s1));
  bool notched = false;
  for (const auto& a : tagged_arcs(f))
    if (a.id == 25)
      for (const auto& e : a.ends) notched |= e.point == s1 && e.tag == mgs::Tag::Notched;
  EXPECT_TRUE(notched);
  EXPECT_EQ(flip(f, 25), t);
}

TEST(Surface, FlipInvolutionAndMutationOnRandomSurfaces) {
  std::mt19937_64 rng(23);
  int checks = 0;
  struct Shape {
    int genus, punctures;
  };
  for (Shape s : {Shape{0, 4}, Shape{0, 6}, Shape{1, 2}, Shape{1, 4}, Shape{2, 2}}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto t = build::random_closed(rng, s.genus, s.punctures, 40);
      ASSERT_TRUE(validate(t).empty());
      auto q = quiver_of(t);
      for (int a = 1; a <= t.n_arcs; ++a) {
        auto f = flip(t, a);
        auto v = validate(f);
        ASSERT_TRUE(v.empty()) << v[0];
        ASSERT_EQ(quiver_of(f), mutate(q, a));
        ASSERT_EQ(flip(f, a), t);
        ++checks;
      }
    }
  }
  EXPECT_GE(checks, 1000);
}

TEST(Surface, TogglingTagsKeepsQuiver) {
  std::mt19937_64 rng(3);
  auto t = build::random_closed(rng, 1, 3, 30);
  auto u = toggle_all_tags(t);
  EXPECT_NE(u, t);
  EXPECT_EQ(quiver_of(u), quiver_of(t));
  EXPECT_EQ(toggle_all_tags(u), t);
}

TEST(Surface, ArcsAroundTorusPuncture) {
  auto t = build::load("torus4_fig1.tagtri");
  auto around = arcs_around(t, t.point_id("E"));
  EXPECT_EQ(around.size(), 5u);
  EXPECT_EQ(around.front(), 3);
  EXPECT_EQ(arcs_around(t, t.point_id("P")).size(), 11u);
}

TEST(Surface, NestedMonogonBuilder) {
  std::mt19937_64 rng(1);
  auto t = build::nest_monogons(build::random_closed(rng, 0, 4, 10, false), 0, 2);
  EXPECT_TRUE(validate(t).empty());
  EXPECT_EQ(t.n_punctures, 8);
}

TEST(Surface, ClosingBoundary) {
  auto s = build::load("sigma_star_fig9.tagtri");
  auto c = close_surface(s);
  EXPECT_TRUE(validate(c.closed).empty());
  EXPECT_EQ(c.closed.n_arcs, 12);
  EXPECT_EQ(c.added_ids, (std::vector<int>{10, 11, 12}));
  auto qc = quiver_of(c.closed), qs = quiver_of(s);
  for (int i = 1; i <= s.n_arcs; ++i)
    for (int j = 1; j <= s.n_arcs; ++j) EXPECT_EQ(qc.b(i, j), qs.b(i, j));
  for (const char* f : {"disk5.tagtri", "annulus11.tagtri"}) {
    auto cc = close_surface(build::load(f));
    auto v = validate(cc.closed);
    EXPECT_TRUE(v.empty()) << f << ": " << (v.empty() ? "" : v[0]);
  }
  EXPECT_THROW(close_surface(build::load("torus1.tagtri")), mgs::NotABoundedSurface);
}
