#include "doctest.h"
#include "lpm/replay.hpp"
#include "lpm/rng.hpp"

namespace {

Eigen::VectorXd vec1(double v) {
  Eigen::VectorXd x(1);
  x << v;
  return x;
}

}  // namespace

TEST_CASE("transition buffer evicts FIFO at capacity") {
  lpm::TransitionBuffer buf(3);
  for (int i = 0; i < 5; ++i) buf.push({vec1(i), 0, vec1(i)});
  REQUIRE(buf.size() == 3);
  CHECK(buf[0].obs(0) == 2.0);
  CHECK(buf[2].obs(0) == 4.0);
}

TEST_CASE("unbounded transition buffer keeps everything") {
  lpm::TransitionBuffer buf(0);
  for (int i = 0; i < 100; ++i) buf.push({vec1(i), 0, vec1(i)});
  CHECK(buf.size() == 100);
}

TEST_CASE("error queue never exceeds its bound under random op sequences") {
  lpm::Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + rng.uniform_int(8);
    lpm::ErrorQueue q(d);
    const int ops = 200;
    for (int i = 0; i < ops; ++i) {
      q.push({vec1(rng.uniform()), rng.uniform_int(3), rng.normal(), i});
      REQUIRE(q.size() <= d);
    }
    CHECK(q.size() == d);
    // strict FIFO: the oldest surviving record is the (ops - d)-th push
    CHECK(q[0].tau == ops - d);
    CHECK(q.max_tau() == ops - 1);
  }
}

TEST_CASE("error queue rejects nonpositive capacity") {
  CHECK_THROWS_AS(lpm::ErrorQueue(0), std::invalid_argument);
}
