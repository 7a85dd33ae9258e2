#include <catch2/catch_amalgamated.hpp>

#include "rata/network.hpp"
#include "rata/rng.hpp"

using namespace rata;

TEST_CASE("an idle channel serves at the request instant", "[network]") {
  GroundChannel ch;
  double done = channel_transfer(ch, 1, TransferLeg::Downlink, 5.0, 0.0);
  CHECK(done == 51.2);
  REQUIRE(ch.queue_log.size() == 1);
  CHECK(ch.queue_log[0].start_s == 0.0);

  GroundChannel later;
  CHECK(channel_transfer(later, 1, TransferLeg::Downlink, 5.0, 10.0) == 61.2);
  CHECK(later.queue_log[0].start_s == 10.0);
}

TEST_CASE("a busy channel queues in fifo order", "[network]") {
  GroundChannel ch;
  CHECK(channel_transfer(ch, 1, TransferLeg::Downlink, 5.0, 0.0) == 51.2);
  double done = channel_transfer(ch, 2, TransferLeg::Uplink, 5.0, 10.0);
  CHECK(ch.queue_log[1].start_s == 51.2);
  CHECK(done == 102.4);
  // a third request after the backlog drains starts immediately
  CHECK(channel_transfer(ch, 3, TransferLeg::Downlink, 5.0, 200.0) == 251.2);
}

TEST_CASE("equal transfers at time zero serialize exactly", "[network]") {
  GroundChannel ch;
  // 12.5 GB at 100 Mbps is 128 s, a dyadic duration, so sums stay exact
  double done = 0.0;
  for (int i = 0; i < 100; ++i) done = channel_transfer(ch, i, TransferLeg::Downlink, 12.5, 0.0);
  CHECK(done == 100.0 * 128.0);
  for (int i = 0; i < 100; ++i) {
    CHECK(ch.queue_log[std::size_t(i)].start_s == i * 128.0);
    CHECK(ch.queue_log[std::size_t(i)].done_s == (i + 1) * 128.0);
  }
}

TEST_CASE("completion times match the analytic recurrence bit for bit", "[network]") {
  Rng rng(61);
  for (int seq = 0; seq < 50; ++seq) {
    GroundChannel ch;
    ch.bandwidth_mbps = rng.uniform(10.0, 500.0);
    double t = 0.0, busy = 0.0;
    for (int i = 0; i < 200; ++i) {
      t += rng.uniform(0.0, 120.0);
      double size = rng.uniform(0.1, 60.0);
      double done = channel_transfer(ch, i, TransferLeg::Downlink, size, t);

      double start = std::max(t, busy);
      busy = start + size * 1024.0 / ch.bandwidth_mbps;
      CHECK(done == busy);

      const QueueLogEntry& e = ch.queue_log.back();
      CHECK(e.start_s == start);
      CHECK(e.done_s == e.start_s + e.size_gb * 1024.0 / ch.bandwidth_mbps);
      CHECK(e.start_s >= e.request_s);
    }
  }
}

TEST_CASE("requests must be monotone in time", "[network]") {
  GroundChannel ch;
  channel_transfer(ch, 1, TransferLeg::Downlink, 1.0, 5.0);
  CHECK_THROWS_AS(channel_transfer(ch, 2, TransferLeg::Downlink, 1.0, 4.0), ContractFault);
  // equal request times are fine
  CHECK_NOTHROW(channel_transfer(ch, 3, TransferLeg::Downlink, 1.0, 5.0));
}

TEST_CASE("transfer sizes must be positive", "[network]") {
  GroundChannel ch;
  CHECK_THROWS_AS(channel_transfer(ch, 1, TransferLeg::Downlink, 0.0, 0.0), ContractFault);
  CHECK_THROWS_AS(channel_transfer(ch, 1, TransferLeg::Downlink, -2.0, 0.0), ContractFault);
}

TEST_CASE("isl transfers scale with size over bandwidth", "[network]") {
  CHECK(isl_transfer_time(5.0, 20.0) == 256.0);
  CHECK(isl_transfer_time(2.5, 50.0) == 51.2);
}
