// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "latchcalc/signal.hpp"

namespace latchcalc {

/// Earliest point where a set/reset pair is simultaneously 1. When the
/// overlap already holds before time zero (both initial values are 1),
/// `before_time_zero` is set and `time` is meaningless.
struct AdmissibilityViolation {
    Time time = 0;
    bool before_time_zero = false;
    bool operator==(const AdmissibilityViolation&) const = default;
};

/// Set and reset overlap somewhere, so no state signal can satisfy the
/// feedback equations.
class AdmissibilityError : public Error {
  public:
    AdmissibilityError(const std::string& what, AdmissibilityViolation violation, std::string stage)
        : Error(what), violation(violation), stage(std::move(stage)) {}
    AdmissibilityViolation violation;
    std::string stage;  // empty, or the sub-circuit the inputs feed
};

/// Requested initial state contradicts what the inputs force before time
/// zero.
class InitError : public Error {
  public:
    InitError(const std::string& what, std::string stage)
        : Error(what), stage(std::move(stage)) {}
    std::string stage;
};

/// Scan u & v for overlap: the initial values, then every tick of
/// [0, horizon]. Returns the earliest violation, or nothing when the pair is
/// admissible.
std::optional<AdmissibilityViolation> check_admissible(const Signal& u, const Signal& v);

/// Throw AdmissibilityError unless check_admissible passes. `stage` names
/// the sub-circuit in the message when nonempty.
void require_admissible(const Signal& u, const Signal& v, const std::string& stage = "");

/// What the inputs' values before time zero force the state's initial value
/// to be: u already 1 forces state 1, v already 1 forces state 0, and with
/// both at 0 either state is consistent.
enum class InitialConstraint { Free, Forced0, Forced1 };

InitialConstraint initial_constraint(const Signal& u, const Signal& v);

/// Alternating schedule of the state's switching instants: starting from the
/// side the initial state makes active next, take the earliest rising edge,
/// then the earliest strictly later rising edge of the other input, and so
/// on until a side runs out.
struct EdgeSchedule {
    enum class First { RiseOfU, RiseOfV };
    std::vector<Time> times;
    First starts_with = First::RiseOfU;
    bool operator==(const EdgeSchedule&) const = default;
};

EdgeSchedule edge_schedule(const Signal& u, const Signal& v, Bit init);

struct LatchSolution {
    Signal x;
    EdgeSchedule schedule;
    Bit initial_used = false;
};

/// State signal of the set/reset feedback system: x rises exactly when u
/// does while x is 0, falls exactly when v does while x is 1, and otherwise
/// holds. `init` is the state before time zero and must agree with
/// `initial_constraint`. The inputs must be admissible.
LatchSolution solve(const Signal& u, const Signal& v, Bit init);

/// Tick-by-tick reference solution of the same system: 1 wherever u is 1,
/// 0 wherever v is 1, previous value otherwise. Deliberately independent of
/// the schedule construction in `solve`; the two agree on every admissible
/// input.
Signal interval_oracle(const Signal& u, const Signal& v, Bit init);

enum class SystemEquation { Rise, Fall, Admissible };

const char* to_string(SystemEquation eq);

struct SystemFailure {
    Time time = 0;
    SystemEquation equation = SystemEquation::Rise;
    bool operator==(const SystemFailure&) const = default;
};

/// The two edge equations plus the overlap ban, at one tick: a rise of x
/// coincides with u being 1, a fall of x with v being 1, and u & v is 0.
bool system_holds_at(const Signal& u, const Signal& v, const Signal& x, Time t);

/// The single characteristic equation at one tick: exactly one of the set
/// case (x=1, u=1, v=0), the reset case (x=0, u=0, v=1) and the hold case
/// (x steady, u=0, v=0) applies. Pointwise equivalent to `system_holds_at`.
bool characteristic_holds_at(const Signal& u, const Signal& v, const Signal& x, Time t);

/// Check the edge-equation system at every tick of [0, horizon]; the last
/// step stands for the constant tail. Reports the earliest failing tick and
/// which equation broke.
std::optional<SystemFailure> check_system(const Signal& u, const Signal& v, const Signal& x);

/// Check the characteristic equation on the same grid; reports the earliest
/// failing tick.
std::optional<Time> check_characteristic(const Signal& u, const Signal& v, const Signal& x);

}  // namespace latchcalc
