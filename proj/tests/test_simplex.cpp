#include <doctest.h>

#include <random>

#include "rvl/simplex.hpp"

using namespace rvl;

namespace {

LinearConstraint row(std::vector<Rat> a, Rel rel, Rat rhs) {
  return LinearConstraint{std::move(a), rel, std::move(rhs)};
}

}  // namespace

TEST_CASE("two-variable optima land on vertices") {
  // min -x - y  s.t.  x + y <= 1.
  const LPResult r1 = solveLP({Rat(-1), Rat(-1)}, {row({Rat(1), Rat(1)}, Rel::LE, Rat(1))});
  REQUIRE(r1.status == LPStatus::Optimal);
  CHECK(r1.objective == Rat(-1));
  CHECK(r1.x[0] + r1.x[1] == Rat(1));

  // min x + 2y  s.t.  x + y >= 2,  y >= 1/2  ->  x = 3/2, y = 1/2.
  const LPResult r2 = solveLP({Rat(1), Rat(2)},
                              {row({Rat(1), Rat(1)}, Rel::GE, Rat(2)),
                               row({Rat(0), Rat(1)}, Rel::GE, Rat(1, 2))});
  REQUIRE(r2.status == LPStatus::Optimal);
  CHECK(r2.objective == Rat(5, 2));
  CHECK(r2.x == std::vector<Rat>{Rat(3, 2), Rat(1, 2)});

  // Equality constraints bind exactly.
  const LPResult r3 = solveLP({Rat(0), Rat(-1)},
                              {row({Rat(1), Rat(1)}, Rel::EQ, Rat(1)),
                               row({Rat(1), Rat(-1)}, Rel::GE, Rat(0))});
  REQUIRE(r3.status == LPStatus::Optimal);
  CHECK(r3.objective == Rat(-1, 2));
  CHECK(r3.x == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
}

TEST_CASE("infeasible and unbounded programs are classified") {
  const LPResult inf = solveLP({Rat(1)}, {row({Rat(1)}, Rel::LE, Rat(1)),
                                          row({Rat(1)}, Rel::GE, Rat(2))});
  CHECK(inf.status == LPStatus::Infeasible);

  const LPResult unb = solveLP({Rat(-1), Rat(0)}, {row({Rat(0), Rat(1)}, Rel::LE, Rat(1))});
  CHECK(unb.status == LPStatus::Unbounded);
}

TEST_CASE("feasibility probe returns a point satisfying every row") {
  std::vector<LinearConstraint> rows = {row({Rat(1), Rat(1)}, Rel::GE, Rat(1)),
                                        row({Rat(1), Rat(-1)}, Rel::EQ, Rat(1, 3)),
                                        row({Rat(1), Rat(0)}, Rel::LE, Rat(4))};
  std::vector<Rat> pt;
  REQUIRE(lpFeasible(rows, 2, &pt));
  REQUIRE(pt.size() == 2);
  CHECK(pt[0] + pt[1] >= Rat(1));
  CHECK(pt[0] - pt[1] == Rat(1, 3));
  CHECK(pt[0] <= Rat(4));
  CHECK(pt[0] >= Rat(0));
  CHECK(pt[1] >= Rat(0));
  CHECK_FALSE(lpFeasible({row({Rat(1)}, Rel::LE, Rat(-1))}, 1, nullptr));
}

TEST_CASE("solutions stay exact under ugly rationals") {
  // min -x  s.t.  (6407/9899) x + (11/17) y <= 25563/39596,  y >= 1/3.
  const LPResult r = solveLP({Rat(-1), Rat(0)},
                             {row({Rat(6407, 9899), Rat(11, 17)}, Rel::LE, Rat(25563, 39596)),
                              row({Rat(0), Rat(1)}, Rel::GE, Rat(1, 3))});
  REQUIRE(r.status == LPStatus::Optimal);
  // x = (25563/39596 - 11/51) * 9899/6407, computed independently.
  const Rat expect = (Rat(25563, 39596) - Rat(11, 51)) * Rat(9899, 6407);
  CHECK(r.x[0] == expect);
  CHECK(r.x[1] == Rat(1, 3));
  CHECK(r.objective == -expect);
}

TEST_CASE("random bounded programs match a vertex-enumeration oracle") {
  std::mt19937_64 rng(271828);
  auto coin = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
  };
  int solved = 0;
  for (int trial = 0; trial < 120 && solved < 50; ++trial) {
    // Random 2-var LP, boxed so it is always bounded; LE rows keep 0 feasible
    // only sometimes, so phase 1 gets exercised too.
    std::vector<LinearConstraint> rows = {row({Rat(1), Rat(0)}, Rel::LE, Rat(coin(1, 4))),
                                          row({Rat(0), Rat(1)}, Rel::LE, Rat(coin(1, 4)))};
    const int extra = coin(1, 3);
    for (int j = 0; j < extra; ++j) {
      std::vector<Rat> a{Rat(coin(-3, 3), coin(1, 3)), Rat(coin(-3, 3), coin(1, 3))};
      rows.push_back(row(std::move(a), coin(0, 1) ? Rel::LE : Rel::GE, Rat(coin(-2, 4), 2)));
    }
    const std::vector<Rat> c{Rat(coin(-4, 4), coin(1, 2)), Rat(coin(-4, 4), coin(1, 2))};
    const LPResult got = solveLP(c, rows);

    // Oracle: enumerate all pairwise intersections of tight hyperplanes
    // (including the axes), keep feasible ones, take the best objective.
    std::vector<std::vector<Rat>> lines;  // a0 x + a1 y = b
    for (const auto& cons : rows) lines.push_back({cons.a[0], cons.a[1], cons.rhs});
    lines.push_back({Rat(1), Rat(0), Rat(0)});
    lines.push_back({Rat(0), Rat(1), Rat(0)});
    bool any = false;
    Rat best;
    for (size_t i = 0; i < lines.size(); ++i)
      for (size_t j = i + 1; j < lines.size(); ++j) {
        const Rat det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
        if (det.isZero()) continue;
        const Rat x = (lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det;
        const Rat y = (lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det;
        if (x < Rat(0) || y < Rat(0)) continue;
        bool ok = true;
        for (const auto& cons : rows) {
          const Rat lhs = cons.a[0] * x + cons.a[1] * y;
          if ((cons.rel == Rel::LE && lhs > cons.rhs) ||
              (cons.rel == Rel::GE && lhs < cons.rhs) ||
              (cons.rel == Rel::EQ && lhs != cons.rhs)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        const Rat obj = c[0] * x + c[1] * y;
        if (!any || obj < best) best = obj;
        any = true;
      }
    if (!any) {
      CHECK(got.status == LPStatus::Infeasible);
      continue;
    }
    REQUIRE(got.status == LPStatus::Optimal);
    CHECK(got.objective == best);
    ++solved;
  }
  CHECK(solved == 50);
}
