// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latchcalc/solver.hpp"

namespace latchcalc {

/// How long an input must stay asserted, in ticks beyond the current one,
/// before it sets (`rise`) or resets (`fall`) the state.
struct InertialParams {
    Time rise = 0;
    Time fall = 0;
};

/// Named input signals plus the solved state of one device run. Two-stage
/// devices also carry the internal next-state signal `p`.
struct DeviceTrace {
    std::vector<std::pair<std::string, Signal>> inputs;
    Signal q;
    std::optional<Signal> p;

    const Signal* find_input(std::string_view name) const;
};

/// State that rises once all inputs are 1 and falls once all are 0; in
/// between it holds. At least one input is required.
Signal c_element(const std::vector<Signal>& inputs, Bit init);

/// Set/reset latch: S sets, R resets. S & R must stay 0.
Signal rs_latch(const Signal& r, const Signal& s, Bit init);

/// Set/reset latch gated by a clock: transparent while C is 1, holding
/// while C is 0. R & S & C must stay 0.
Signal clocked_rs(const Signal& r, const Signal& s, const Signal& c, Bit init);

/// Data latch: follows D while C is 1, holds while C is 0.
Signal d_latch(const Signal& d, const Signal& c, Bit init);

/// Master-slave set/reset flip-flop. The master is a clocked RS latch on C;
/// the slave copies the master state while C is 0. Q moves only at falling
/// clock edges.
DeviceTrace edge_rs_ff(const Signal& r, const Signal& s, const Signal& c, Bit init_p, Bit init_q);

/// Master-slave data flip-flop: Q takes the value D held just before each
/// falling clock edge.
DeviceTrace d_ff(const Signal& d, const Signal& c, Bit init_p, Bit init_q);

/// Master-slave JK flip-flop with state feedback: J sets, K resets, both
/// high toggles at the falling clock edge.
DeviceTrace jk_ff(const Signal& j, const Signal& k, const Signal& c, Bit init_p, Bit init_q);

/// JK flip-flop built on the data flip-flop with next state
/// D = J & ~Q | ~K & Q. Agrees with jk_ff on every input.
DeviceTrace jk_ff_variant3(const Signal& j, const Signal& k, const Signal& c, Bit init_p, Bit init_q);

/// Toggle flip-flop: Q flips at every falling clock edge.
DeviceTrace t_ff(const Signal& c, Bit init_p, Bit init_q);

/// Set/reset latch that ignores set pulses shorter than `params.rise` and
/// reset pulses shorter than `params.fall` (strictly: a pulse must cover a
/// closed window of that many extra ticks to act).
Signal inertial_rs_latch(const Signal& r, const Signal& s, InertialParams params, Bit init);

enum class DeviceKind {
    CElement,
    RsLatch,
    ClockedRs,
    DLatch,
    EdgeRsFf,
    DFf,
    JkFf,
    JkFf3,
    TFf,
};

struct DeviceFailure {
    Time time = 0;
    std::string clause;
};

/// Evaluate the device's closed-form defining equation at every tick of
/// [0, horizon] and report the earliest violation. The trace must carry the
/// inputs under their conventional names (R, S, C, D, J, K; any names for
/// the c element) and, for two-stage devices, the internal signal `p`.
std::optional<DeviceFailure> verify_device(DeviceKind kind, const DeviceTrace& trace);

}  // namespace latchcalc
