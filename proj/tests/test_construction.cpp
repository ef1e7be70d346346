#include <gtest/gtest.h>

#include <random>

#include "mgs/construction.hpp"
#include "figures.hpp"
#include "surfaces.hpp"

using mgs::PointId;
using mgs::TaggedTriangulation;
using mgs::Verdict;
using V = std::vector<int>;

namespace {

std::vector<PointId> ids(const TaggedTriangulation& t, std::vector<std::string> names) {
  std::vector<PointId> out;
  for (const auto& n : names) out.push_back(t.point_id(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Construction, GenusTwoPartition) {
  auto t = build::load("genus2_tstar.tagtri");
  PointId X = mgs::choose_X(t);
  EXPECT_EQ(t.points[X].name, "X");
  auto p = mgs::partition_punctures(t, X);
  EXPECT_EQ(p.S, ids(t, {"S1"}));
  ASSERT_EQ(p.strata.size(), 2u);
  EXPECT_EQ(p.strata[0], ids(t, {"P1", "P2", "P3", "P4", "P5"}));
  EXPECT_EQ(p.strata[1], ids(t, {"R1", "R2", "R3"}));
}

TEST(Construction, GenusTwoIndependence) {
  auto t = build::load("genus2_tstar.tagtri");
  auto d = mgs::independence_data(t, ids(t, {"P1", "P2", "P3", "P4", "P5"}));
  EXPECT_EQ(d.E, (V{3, 4, 5, 10, 16, 17, 18, 19, 20, 21, 29}));
  for (int a : {3, 4, 5, 10, 16, 20, 21, 29}) EXPECT_EQ(d.sigma[a], 0) << a;
  for (int a : {17, 18, 19}) EXPECT_EQ(d.sigma[a], 1) << a;
  EXPECT_EQ(mgs::mu_ind(d), (V{3, 4, 5, 10, 16, 20, 21, 29, 17, 18, 19}));
}

TEST(Construction, TorusIndependenceDepths) {
  auto t = build::load("torus10_fig6.tagtri");
  auto d = mgs::independence_data(t, ids(t, {"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8"}));
  V expect_e;
  for (int a = 3; a <= 18; ++a) expect_e.push_back(a);
  expect_e.push_back(29);
  expect_e.push_back(30);
  EXPECT_EQ(d.E, expect_e);
  for (int a : {3, 4, 5, 6, 30}) EXPECT_EQ(d.sigma[a], 0) << a;
  for (int a = 11; a <= 18; ++a) EXPECT_EQ(d.sigma[a], 1) << a;
  for (int a : {7, 8, 9, 10}) EXPECT_EQ(d.sigma[a], 2) << a;
  EXPECT_EQ(d.sigma[29], 3);
}

TEST(Construction, GenusTwoStages) {
  auto t = build::load("genus2_tstar.tagtri");
  auto tr = mgs::construct_closed(t);
  EXPECT_EQ(tr.verdict.kind, Verdict::ValidMaximalGreen);
  EXPECT_EQ(tr.full.size(), 100u);
  EXPECT_EQ(tr.stage("ind:M0")->seq, (V{3, 4, 5, 10, 16, 20, 21, 29, 17, 18, 19}));
  EXPECT_EQ(tr.stage("cycle:P1")->seq, (V{3, 6, 7, 9, 12, 14, 22, 8, 14, 12, 9, 7, 6, 3}));
  EXPECT_EQ(tr.stage("cycle:P2")->seq, (V{15, 28, 31, 35, 34, 30, 27, 34, 35, 31, 28, 15}));
  EXPECT_EQ(tr.stage("cycle:P3")->seq, (V{16, 20, 21, 16}));
  EXPECT_EQ(tr.stage("ind*:M0")->seq, (V{26, 18, 17, 29, 20, 21, 16, 11, 5, 4, 3}));
  EXPECT_EQ(tr.stage("ind:M1")->seq, (V{32, 33, 36}));
  EXPECT_EQ(tr.stage("ind*:M1")->seq, (V{34, 33, 35}));
  EXPECT_EQ(tr.stage("ind:X")->seq, (V{2, 13, 23, 24, 1}));
  EXPECT_EQ(tr.stage("ind*:X")->seq, (V{1, 24, 23, 13, 2}));
}

// The printed sequence mutates 24 where the reversal rules call for 34; only the latter is maximal green.
TEST(Construction, WorkedExampleReplay) {
  auto q = framed(quiver_of(build::load("genus2_tstar.tagtri")));
  EXPECT_EQ(apply_green_sequence(q, figures::worked_example(34)).verdict.kind, Verdict::ValidMaximalGreen);
  EXPECT_EQ(apply_green_sequence(q, figures::worked_example(34, true)).verdict.kind, Verdict::InvalidAtStep);
  EXPECT_EQ(apply_green_sequence(q, figures::worked_example(24)).verdict, (Verdict{Verdict::InvalidAtStep, 83}));
}

TEST(Construction, ClosedSuite) {
  auto suite = build::closed_suite();
  ASSERT_GE(suite.size(), 20u);
  for (const auto& c : suite) {
    SCOPED_TRACE(c.name);
    ASSERT_TRUE(mgs::validate(c.t).empty());
    auto tr = mgs::construct_closed(c.t);
    EXPECT_EQ(tr.verdict.kind, Verdict::ValidMaximalGreen);
    EXPECT_EQ(mgs::relabel_arcs(tr.final_triangulation, tr.final_relabel), mgs::toggle_all_tags(c.t));
    EXPECT_EQ(apply_green_sequence(framed(quiver_of(c.t)), tr.full).verdict.kind, Verdict::ValidMaximalGreen);
    if (c.radial) EXPECT_FALSE(mgs::radial_punctures(c.t).empty());
    EXPECT_GE(static_cast<int>(tr.partition.strata.size()), c.nesting);
  }
}

TEST(Construction, RandomClosedStress) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    int genus = trial % 3;
    int punctures = 2 + static_cast<int>(rng() % 5) + (genus == 0 ? 2 : 0);
    auto t = build::random_closed(rng, genus, punctures, 30);
    if (trial % 4 == 0) {
      int k = 0;
      build::add_monogon(t, build::triangle_at(t, 0, &k), k);
    }
    SCOPED_TRACE(trial);
    EXPECT_EQ(mgs::construct_closed(t).verdict.kind, Verdict::ValidMaximalGreen);
  }
}

TEST(Construction, BoundaryExamples) {
  for (const char* name : {"sigma_star_fig9.tagtri", "disk5.tagtri", "annulus11.tagtri"}) {
    SCOPED_TRACE(name);
    auto t = build::load(name);
    auto tr = mgs::construct_with_boundary(t);
    EXPECT_EQ(tr.verdict.kind, Verdict::ValidMaximalGreen);
    EXPECT_EQ(apply_green_sequence(framed(quiver_of(t)), tr.full).verdict.kind, Verdict::ValidMaximalGreen);
    EXPECT_FALSE(tr.closed_sequence.empty());
  }
}

// The pentagon quiver is A2; its maximal green sequences are (1,2) and (2,1,2) up to orientation.
TEST(Construction, PentagonAgainstEnumeration) {
  auto t = build::load("disk5.tagtri");
  auto q = framed(quiver_of(t));
  std::vector<V> all;
  for (V s : {V{1, 2}, V{2, 1}, V{1, 2, 1}, V{2, 1, 2}})
    if (apply_green_sequence(q, s).verdict.kind == Verdict::ValidMaximalGreen) all.push_back(s);
  EXPECT_EQ(all.size(), 2u);
  auto got = mgs::construct_with_boundary(t).full;
  EXPECT_NE(std::find(all.begin(), all.end(), got), all.end());
}

TEST(Construction, RandomDisks) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 3 + static_cast<int>(rng() % 4);
    int p = (m == 3 ? 1 : 0) + static_cast<int>(rng() % 3);
    auto t = build::random_disk(rng, m, p, 20);
    SCOPED_TRACE(trial);
    ASSERT_TRUE(mgs::validate(t).empty());
    EXPECT_EQ(mgs::construct_with_boundary(t).verdict.kind, Verdict::ValidMaximalGreen);
  }
}

TEST(Construction, Rejections) {
  EXPECT_THROW(mgs::construct_with_boundary(build::load("torus4_fig1.tagtri")), mgs::NotABoundedSurface);
  EXPECT_THROW(mgs::construct_closed(build::load("torus1.tagtri")), mgs::UnsupportedSurface);
}
