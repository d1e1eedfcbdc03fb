#include "fixtures.hpp"
#include "affine/linalg.hpp"
#include "affine/lp.hpp"

using namespace fx;

namespace {

TEST(Lp, SmallOptimum) {
  // max x + y, x + 2y <= 4, 3x + y <= 6
  lp::Program p(2);
  p.objective = qs({"1", "1"});
  p.add(qs({"1", "2"}), lp::Relation::LessEqual, Rational(4));
  p.add(qs({"3", "1"}), lp::Relation::LessEqual, Rational(6));
  auto r = lp::solve(p);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_EQ(r.value, q("14/5"));
  EXPECT_EQ(r.x, qs({"8/5", "6/5"}));
  EXPECT_TRUE(lp::satisfies(p, r.x));
}

TEST(Lp, InfeasibleAndUnbounded) {
  lp::Program bad(1);
  bad.add(qs({"1"}), lp::Relation::GreaterEqual, Rational(2));
  bad.add(qs({"1"}), lp::Relation::LessEqual, Rational(1));
  EXPECT_EQ(lp::solve(bad).status, lp::Status::Infeasible);

  lp::Program open(2);
  open.objective = qs({"1", "0"});
  open.add(qs({"1", "-1"}), lp::Relation::LessEqual, Rational(1));
  EXPECT_EQ(lp::solve(open).status, lp::Status::Unbounded);
}

TEST(Lp, FreeVariablesAndEqualities) {
  lp::Program p(2);
  p.free = {true, false};
  p.objective = qs({"-1", "0"});
  p.add(qs({"1", "1"}), lp::Relation::Equal, Rational(-3));
  p.add(qs({"0", "1"}), lp::Relation::LessEqual, Rational(2));
  auto r = lp::solve(p);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_EQ(r.x, qs({"-5", "2"}));
}

TEST(Lp, DegenerateDoesNotCycle) {
  // a classic cycling example for the largest-coefficient rule
  lp::Program p(4);
  p.objective = qs({"10", "-57", "-9", "-24"});
  p.add(qs({"1/2", "-11/2", "-5/2", "9"}), lp::Relation::LessEqual, Rational(0));
  p.add(qs({"1/2", "-3/2", "-1/2", "1"}), lp::Relation::LessEqual, Rational(0));
  p.add(qs({"1", "0", "0", "0"}), lp::Relation::LessEqual, Rational(1));
  auto r = lp::solve(p);
  ASSERT_EQ(r.status, lp::Status::Optimal);
  EXPECT_EQ(r.value, 1);
}

TEST(LpProperty, WeakDualityOnRandomPrograms) {
  suite::Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 1 + suite::pick(rng, 4);
    std::size_t mcons = 1 + suite::pick(rng, 4);
    std::vector<std::vector<Rational>> a(mcons);
    std::vector<Rational> b, c;
    lp::Program primal(n);
    for (std::size_t j = 0; j < n; ++j) c.push_back(suite::grid_rational(rng, -2, 3, 1));
    primal.objective = c;
    for (std::size_t k = 0; k < mcons; ++k) {
      for (std::size_t j = 0; j < n; ++j) a[k].push_back(suite::grid_rational(rng, 0, 3, 1));
      b.push_back(suite::grid_rational(rng, 0, 4, 1));
      primal.add(a[k], lp::Relation::LessEqual, b[k]);
    }
    // min b.y, A^T y >= c, y >= 0
    lp::Program dual(mcons);
    for (std::size_t k = 0; k < mcons; ++k) dual.objective[k] = -b[k];
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < mcons; ++k) row.push_back(a[k][j]);
      dual.add(row, lp::Relation::GreaterEqual, c[j]);
    }
    auto pr = lp::solve(primal);
    auto dr = lp::solve(dual);
    if (pr.status == lp::Status::Optimal) {
      ASSERT_EQ(dr.status, lp::Status::Optimal);
      EXPECT_EQ(pr.value, -dr.value);
      EXPECT_TRUE(lp::satisfies(primal, pr.x));
    } else {
      EXPECT_EQ(pr.status, lp::Status::Unbounded);
      EXPECT_EQ(dr.status, lp::Status::Infeasible);
    }
  }
}

TEST(Linalg, SolveAndCertificate) {
  std::vector<std::vector<Rational>> rows{qs({"1", "1"}), qs({"1", "-1"}), qs({"2", "0"})};
  auto ok = solve_linear(rows, qs({"3", "1", "4"}), 2);
  ASSERT_TRUE(ok.consistent);
  EXPECT_EQ(ok.rank, 2u);
  EXPECT_EQ(ok.solution, qs({"2", "1"}));

  auto bad = solve_linear(rows, qs({"3", "1", "5"}), 2);
  ASSERT_FALSE(bad.consistent);
  Rational lhs0 = 0, lhs1 = 0, rhs = 0;
  std::vector<Rational> b = qs({"3", "1", "5"});
  for (const auto& [i, y] : bad.certificate) {
    lhs0 += y * rows[i][0];
    lhs1 += y * rows[i][1];
    rhs += y * b[i];
  }
  EXPECT_EQ(lhs0, 0);
  EXPECT_EQ(lhs1, 0);
  EXPECT_NE(rhs, 0);
  EXPECT_EQ(rank_of(rows, 2), 2u);
  EXPECT_EQ(rank_of({qs({"1", "2"}), qs({"2", "4"})}, 2), 1u);
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(q("6/4"), q("3/2"));
  EXPECT_EQ(q("-2"), Rational(-2));
  EXPECT_EQ(to_pq(q("3/6")), "1/2");
  EXPECT_EQ(to_pq(Rational(1)), "1/1");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

}  // namespace
