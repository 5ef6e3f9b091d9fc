#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcoords/errors.hpp"
#include "mcoords/solve.hpp"
#include "mcoords/tree.hpp"

using namespace mc;

namespace {

SolveResult example_result() {
  auto oracle = make_example2();
  return monodromy_solve(*oracle, oracle->seed_solution(),
                         StoppingCriterion::target_count(12));
}

std::vector<std::int64_t> tags(const std::vector<Solution>& sols) {
  std::vector<std::int64_t> out;
  for (const Solution& s : sols) out.push_back(s.tag);
  return out;
}

const std::vector<std::int64_t> kOrder{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};

}  // namespace

TEST_CASE("encode keeps exactly the fields of each representation") {
  SolveResult r = example_result();

  MonodromyTree t1 = encode(r, RepType::I);
  CHECK(t1.seed.tag == 1);
  CHECK(t1.founders.empty());
  CHECK(t1.cycle_sizes.empty());
  CHECK(t1.rep_groups.empty());

  MonodromyTree t2 = encode(r, RepType::II);
  CHECK(t2.founders == std::vector<std::uint64_t>{2, 3, 6, 9});
  CHECK(t2.cycle_sizes.empty());

  MonodromyTree t3 = encode(r, RepType::III);
  CHECK(t3.cycle_sizes == std::vector<std::uint64_t>{3, 1, 4, 2, 2});

  MonodromyTree t4 = encode(r, RepType::IV);
  REQUIRE(t4.rep_groups.size() == 5);
  for (const auto& g : t4.rep_groups) CHECK(g.size() == 1);
  CHECK(t4.rep_groups[0][0].tag == 1);
  CHECK(t4.rep_groups[2][0].tag == 5);

  MonodromyTree t5 = encode(r, RepType::V, 2);
  // C_2 = (s1, s3, s4, s5, s7, s9, s11), grouped per cycle
  REQUIRE(t5.rep_groups.size() == 5);
  CHECK(tags(t5.rep_groups[0]) == std::vector<std::int64_t>{1, 3});
  CHECK(tags(t5.rep_groups[1]) == std::vector<std::int64_t>{4});
  CHECK(tags(t5.rep_groups[2]) == std::vector<std::int64_t>{5, 7});
  CHECK(tags(t5.rep_groups[3]) == std::vector<std::int64_t>{9});
  CHECK(tags(t5.rep_groups[4]) == std::vector<std::int64_t>{11});
}

TEST_CASE("stored-size accounting on the worked example") {
  SolveResult r = example_result();
  // n=1, k=12: rho(C^n)=128, rho(N)=64, rho(sigma)=640*12=7680
  CHECK(memory_bits(encode(r, RepType::I)) == 128 + 7680);
  CHECK(memory_bits(encode(r, RepType::IV)) == 8896);  // 5*128+9*64+7680
  CHECK(memory_bits(encode(r, RepType::V, 2)) == 9152); // 7*128+9*64+7680
}

TEST_CASE("unpack query tallies match the per-type formulas exactly") {
  SolveResult r = example_result();
  auto check_type = [&](RepType rep, std::uint64_t alpha, std::uint64_t queries) {
    MonodromyTree tree = encode(r, rep, alpha);
    auto oracle = make_example2();
    UnpackResult u = unpack(tree, *oracle);
    CHECK(tags(u.solutions) == kOrder);
    CHECK(u.queries == queries);
  };
  check_type(RepType::I, kAlphaInfinity, 20);   // d + j* - 1
  check_type(RepType::II, kAlphaInfinity, 15);  // d + r - 2
  check_type(RepType::III, kAlphaInfinity, 11); // d - 1
  check_type(RepType::IV, kAlphaInfinity, 7);   // d - r
  check_type(RepType::V, 2, 5);                 // d - sum(ceil(m_i/2))
}

TEST_CASE("unpack rejects an oracle with a different descriptor") {
  SolveResult r = example_result();
  MonodromyTree tree = encode(r, RepType::IV);
  auto other = make_synthetic(12, 1, 999);
  CHECK_THROWS_AS(unpack(tree, *other), DescriptorMismatch);
}

TEST_CASE("successor primitive: free at partial sums and stored positions") {
  SolveResult r = example_result();
  PartialTree partial = encode(r, RepType::IV).as_partial();
  auto oracle = make_example2();

  // j=3 closes the first cycle: s4 is the next stored initial, no query.
  NextResult at3 = next_solution(partial, *oracle, 3, oracle->solution(3));
  CHECK(at3.solution.tag == 4);
  CHECK(at3.queries == 0);

  // j=1 sits inside a cycle: one sigma0 query.
  NextResult at1 = next_solution(partial, *oracle, 1, oracle->solution(1));
  CHECK(at1.solution.tag == 2);
  CHECK(at1.queries == 1);

  // j=4 closes the singleton cycle: s5 is free.
  NextResult at4 = next_solution(partial, *oracle, 4, oracle->solution(4));
  CHECK(at4.solution.tag == 5);
  CHECK(at4.queries == 0);
}

TEST_CASE("new-cycle membership walk with the first two cycles known") {
  SolveResult r = example_result();
  PartialTree two = encode(r, RepType::IV).prefix(2);  // C={s1,s4}, M=(3,1)
  auto oracle = make_example2();

  MembershipResult yes = in_new_cycle(two, *oracle, kAlphaInfinity,
                                      oracle->solution(5));
  CHECK(yes.in_new_cycle);
  CHECK(yes.queries == 2);  // bound min(3, inf) - 1

  MembershipResult no = in_new_cycle(two, *oracle, kAlphaInfinity,
                                     oracle->solution(2));
  CHECK_FALSE(no.in_new_cycle);
  CHECK(no.queries == 2);  // walks s3, s1 before exhausting the bound

  MembershipResult stored = in_new_cycle(two, *oracle, kAlphaInfinity,
                                         oracle->solution(4));
  CHECK_FALSE(stored.in_new_cycle);
  CHECK(stored.queries == 0);  // direct hit, no walk
}

TEST_CASE("iterator pass over type IV spends exactly the unpack tally") {
  SolveResult r = example_result();
  MonodromyTree tree = encode(r, RepType::IV);
  auto oracle = make_example2();
  std::vector<std::int64_t> seen;
  TreeIterator it(tree, *oracle);
  for (; !it.done(); it.advance()) seen.push_back(it.current().tag);
  CHECK(seen == kOrder);
  CHECK(it.queries() == 7);
}

TEST_CASE("expected costs reproduce the reference table") {
  // d = 666841088, n = 10, k = 90; every cell within +-2.
  const std::uint64_t d = 666841088, n = 10, k = 90;
  struct Row {
    RepType rep;
    std::uint64_t alpha;
    double bits, queries;
  };
  const Row rows[] = {
      {RepType::I, 0, 58880, 1000261632},
      {RepType::II, 0, 60116, 666841106},
      {RepType::III, 0, 61416, 666841087},
      {RepType::IV, 0, 112150, 666841067},
      {RepType::V, 100000, 8621709, 666834419},
      {RepType::V, 1000, 853642736, 666174246},
      {RepType::V, 10, 85355745407, 600156979},
      {RepType::V, 2, 426778382463, 333420544},
      {RepType::V, 1, 853556678783, 0},
  };
  for (const Row& row : rows) {
    ExpectedCosts c = expected_costs(d, n, k, row.rep, row.alpha);
    CHECK(std::abs(c.bits - row.bits) <= 2.0);
    CHECK(std::abs(c.queries - row.queries) <= 2.0);
  }
}

TEST_CASE("degenerate d = 1 costs evaluate without faults") {
  for (RepType rep : {RepType::I, RepType::II, RepType::III, RepType::IV}) {
    ExpectedCosts c = expected_costs(1, 1, 1, rep);
    CHECK(c.bits > 0);
    CHECK(c.queries >= 0);
  }
  ExpectedCosts v = expected_costs(1, 1, 1, RepType::V, 1);
  CHECK(v.bits > 0);
}
