// SPDX-License-Identifier: Apache-2.0
//
// Device tests: worked examples pinned by hand, initial-state rules,
// and the trace verifier in both the accepting and rejecting direction.

#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "latchcalc/devices.hpp"
#include "latchcalc/fuzz.hpp"
#include "latchcalc/signal.hpp"
#include "latchcalc/solver.hpp"

using namespace latchcalc;

TEST_CASE("c element waits for consensus") {
  Signal a = Signal::pulse(1, 5, 10);
  Signal b = Signal::pulse(3, 7, 10);
  CHECK(c_element({a, b}, false) == Signal::pulse(3, 7, 10));

  // With one input the element just follows it.
  CHECK(c_element({a}, false) == a);

  // All inputs high before time zero force the initial state.
  Signal hi = Signal::constant(true, 10);
  CHECK(c_element({hi, hi}, true) == hi);
  CHECK_THROWS_AS(c_element({hi, hi}, false), InitError);
  // All low before time zero force it the other way.
  CHECK_THROWS_AS(c_element({a, b}, true), InitError);

  CHECK_THROWS_AS(c_element({}, false), Error);
  CHECK_THROWS_AS(c_element({a, Signal::pulse(3, 7, 12)}, false), HorizonMismatchError);
}

TEST_CASE("rs latch sets and resets on rising input edges") {
  Signal s = Signal::pulse(2, 3, 10);
  Signal r = Signal::pulse(6, 7, 10);
  CHECK(rs_latch(r, s, false) == Signal::pulse(2, 6, 10));
  // Overlapping set and reset are rejected.
  CHECK_THROWS_AS(rs_latch(Signal::pulse(2, 6, 10), Signal::pulse(2, 6, 10), false),
                  AdmissibilityError);
}

TEST_CASE("clocked rs only listens while the clock is high") {
  Signal s = Signal::pulse(1, 3, 10);
  Signal r = Signal::constant(false, 10);
  Signal c = Signal::pulse(2, 4, 10);
  CHECK(clocked_rs(r, s, c, false) == Signal::from_toggles(false, {2}, 10));

  // A constantly high clock reduces to the plain latch.
  Signal hi = Signal::constant(true, 10);
  Signal s2 = Signal::pulse(2, 3, 10);
  Signal r2 = Signal::pulse(6, 7, 10);
  CHECK(clocked_rs(r2, s2, hi, false) == rs_latch(r2, s2, false));
}

TEST_CASE("d latch is transparent while the clock is high") {
  Signal d = Signal::pulse(1, 4, 10);
  Signal c = Signal::pulse(2, 3, 10);
  CHECK(d_latch(d, c, false) == Signal::from_toggles(false, {2}, 10));
  // The D latch is the clocked latch driven by d and its complement.
  CHECK(d_latch(d, c, false) == clocked_rs(~d & c, d, c, false));
}

TEST_CASE("edge-triggered rs updates on the falling clock edge") {
  Signal c = Signal::pulse(1, 4, 10);
  Signal s = Signal::pulse(2, 3, 10);
  Signal r = Signal::constant(false, 10);
  DeviceTrace t = edge_rs_ff(r, s, c, false, false);
  CHECK(t.q == Signal::from_toggles(false, {4}, 10));
  REQUIRE(t.p.has_value());
  CHECK(t.p->eval(2) == true);

  // A clock that starts low ties the two stage states together.
  CHECK_THROWS_AS(edge_rs_ff(r, s, c, true, false), InitError);
}

TEST_CASE("d flip-flop captures the input present at the falling edge") {
  Signal d = Signal::pulse(3, 6, 10);
  Signal c = Signal::from_toggles(false, {1, 4, 5, 8}, 10);
  DeviceTrace t = d_ff(d, c, false, false);
  CHECK(t.q == Signal::pulse(4, 8, 10));
  for (Time edge : c.falling_edges()) {
    CHECK(t.q.eval(edge) == d.left_limit(edge));
  }
}

TEST_CASE("jk flip-flop toggles under j and k both high") {
  Signal j = Signal::constant(true, 10);
  Signal k = Signal::constant(false, 10);
  Signal c = Signal::pulse(1, 2, 10);
  CHECK(jk_ff(j, k, c, false, false).q == Signal::from_toggles(false, {2}, 10));

  // j = k = 1 turns both variants into the toggle flip-flop.
  Signal hi = Signal::constant(true, 10);
  Signal clk = Signal::from_toggles(false, {1, 2, 3, 4, 5, 6}, 10);
  DeviceTrace tt = t_ff(clk, false, false);
  CHECK(jk_ff(hi, hi, clk, false, false).q == tt.q);
  CHECK(jk_ff_variant3(hi, hi, clk, false, false).q == tt.q);
}

TEST_CASE("toggle flip-flop divides the clock by two") {
  Signal c = Signal::from_toggles(false, {1, 2, 3, 4, 5, 6}, 8);
  DeviceTrace t = t_ff(c, false, false);
  CHECK(t.q == Signal::from_toggles(false, {2, 4, 6}, 8));
  CHECK(t.q.toggles() == c.falling_edges());

  // With the clock high before zero the master must hold the complement.
  Signal chi = Signal::from_toggles(true, {2, 3, 4}, 8);
  CHECK_THROWS_AS(t_ff(chi, false, false), InitError);
  DeviceTrace t2 = t_ff(chi, true, false);
  CHECK(t2.q == Signal::from_toggles(false, {2, 4}, 8));
}

TEST_CASE("inertial latch ignores pulses shorter than the window") {
  Signal s = Signal::pulse(2, 6, 10);
  Signal lo = Signal::constant(false, 10);
  CHECK(inertial_rs_latch(lo, s, {2, 2}, false) == Signal::from_toggles(false, {4}, 10));
  // Zero windows reduce to the plain latch.
  Signal r = Signal::pulse(7, 8, 10);
  CHECK(inertial_rs_latch(r, s, {0, 0}, false) == rs_latch(r, s, false));
  // A short set pulse never clears the window and is dropped entirely.
  CHECK(inertial_rs_latch(lo, Signal::pulse(2, 4, 10), {3, 3}, false) ==
        Signal::constant(false, 10));
  // Overlap is judged after windowing: these overlap raw but not windowed.
  Signal wr = Signal::pulse(0, 4, 10);
  Signal ws = Signal::pulse(2, 6, 10);
  CHECK(inertial_rs_latch(wr, ws, {2, 2}, true) == Signal::from_toggles(true, {2, 4}, 10));
  // With no windowing the same pair is inadmissible.
  CHECK_THROWS_AS(inertial_rs_latch(Signal::pulse(2, 6, 10), Signal::pulse(2, 6, 10), {0, 0},
                                    false),
                  AdmissibilityError);
}

TEST_CASE("device traces carry their named inputs") {
  Signal d = Signal::pulse(3, 6, 10);
  Signal c = Signal::pulse(1, 4, 10);
  DeviceTrace t = d_ff(d, c, false, false);
  REQUIRE(t.find_input("D") != nullptr);
  CHECK(*t.find_input("D") == d);
  REQUIRE(t.find_input("C") != nullptr);
  CHECK(t.find_input("Z") == nullptr);
}

TEST_CASE("verify_device accepts constructor output") {
  Signal a = Signal::pulse(1, 5, 12);
  Signal b = Signal::pulse(3, 7, 12);
  DeviceTrace ce{{{"x1", a}, {"x2", b}}, c_element({a, b}, false), std::nullopt};
  CHECK_FALSE(verify_device(DeviceKind::CElement, ce).has_value());

  Signal s = Signal::pulse(2, 3, 12);
  Signal r = Signal::pulse(6, 7, 12);
  DeviceTrace rs{{{"R", r}, {"S", s}}, rs_latch(r, s, false), std::nullopt};
  CHECK_FALSE(verify_device(DeviceKind::RsLatch, rs).has_value());

  Signal c = Signal::pulse(2, 4, 12);
  DeviceTrace crs{{{"R", Signal::constant(false, 12)}, {"S", Signal::pulse(1, 3, 12)}, {"C", c}},
                  clocked_rs(Signal::constant(false, 12), Signal::pulse(1, 3, 12), c, false),
                  std::nullopt};
  CHECK_FALSE(verify_device(DeviceKind::ClockedRs, crs).has_value());

  Signal d = Signal::pulse(3, 6, 12);
  Signal clk = Signal::from_toggles(false, {1, 4, 5, 8}, 12);
  CHECK_FALSE(verify_device(DeviceKind::DFf, d_ff(d, clk, false, false)).has_value());
  CHECK_FALSE(verify_device(DeviceKind::DLatch,
                            DeviceTrace{{{"D", d}, {"C", clk}}, d_latch(d, clk, false),
                                        std::nullopt})
                  .has_value());
  CHECK_FALSE(verify_device(DeviceKind::TFf, t_ff(clk, false, false)).has_value());
  CHECK_FALSE(verify_device(DeviceKind::JkFf,
                            jk_ff(Signal::constant(true, 12), Signal::pulse(6, 9, 12), clk,
                                  false, false))
                  .has_value());
  CHECK_FALSE(verify_device(DeviceKind::JkFf3,
                            jk_ff_variant3(Signal::constant(true, 12), Signal::pulse(6, 9, 12),
                                           clk, false, false))
                  .has_value());
  CHECK_FALSE(verify_device(DeviceKind::EdgeRsFf,
                            edge_rs_ff(Signal::pulse(6, 7, 12), Signal::pulse(2, 3, 12),
                                       Signal::pulse(1, 4, 12), false, false))
                  .has_value());
}

TEST_CASE("verify_device pinpoints a state that missed a falling edge") {
  // The master rises to the complement while the clock is high, so a
  // state that stays put is caught exactly at the falling edge.
  Signal c = Signal::pulse(1, 2, 4);
  DeviceTrace frozen{{{"C", c}},
                     Signal::constant(false, 4),
                     Signal::from_toggles(false, {1}, 4)};
  auto hit = verify_device(DeviceKind::TFf, frozen);
  REQUIRE(hit.has_value());
  CHECK(hit->time == 2);

  // A state that toggles with no clock edge at all is also rejected.
  DeviceTrace ghost{{{"C", Signal::constant(false, 6)}},
                    Signal::pulse(3, 4, 6),
                    Signal::constant(false, 6)};
  CHECK(verify_device(DeviceKind::TFf, ghost).has_value());
}

TEST_CASE("verify_device rejects single flipped toggles") {
  Signal s = Signal::pulse(2, 3, 12);
  Signal r = Signal::pulse(6, 7, 12);
  Signal q = rs_latch(r, s, false);
  DeviceTrace good{{{"R", r}, {"S", s}}, q, std::nullopt};
  REQUIRE_FALSE(verify_device(DeviceKind::RsLatch, good).has_value());
  for (Time t = 0; t < 12; ++t) {
    DeviceTrace bad{{{"R", r}, {"S", s}}, flip_toggle_at(q, t), std::nullopt};
    CHECK(verify_device(DeviceKind::RsLatch, bad).has_value());
  }
}

TEST_CASE("verify_device reports missing trace pieces") {
  Signal c = Signal::pulse(1, 2, 4);
  DeviceTrace no_input{{}, Signal::constant(false, 4), Signal::constant(false, 4)};
  CHECK_THROWS_AS(verify_device(DeviceKind::TFf, no_input), Error);
  DeviceTrace no_p{{{"C", c}}, Signal::constant(false, 4), std::nullopt};
  CHECK_THROWS_AS(verify_device(DeviceKind::TFf, no_p), Error);
  DeviceTrace wrong_h{{{"C", c}}, Signal::constant(false, 5),
                      Signal::from_toggles(false, {1}, 4)};
  CHECK_THROWS_AS(verify_device(DeviceKind::TFf, wrong_h), HorizonMismatchError);
}

TEST_CASE("two-stage states only move on falling clock edges") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    CaseRng rng(31, i);
    Signal c = random_signal(rng, 8, 32);
    Signal d = random_signal(rng, 8, 32);
    // A clock that starts high makes the master transparent before zero,
    // forcing its state; a low clock ties the two stages together.
    Bit ip = c.initial() ? d.initial() : rng.flip();
    Bit iq = c.initial() ? rng.flip() : ip;
    DeviceTrace t = d_ff(d, c, ip, iq);
    EdgeSet falls = c.falling_edges();
    for (Time toggle : t.q.toggles()) {
      CHECK(std::binary_search(falls.begin(), falls.end(), toggle));
    }
    for (Time edge : falls) {
      CHECK(t.q.eval(edge) == d.left_limit(edge));
    }
  }
}
