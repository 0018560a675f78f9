// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace latchcalc {

/// Simulation time in integer ticks. Comparisons and minima are exact; there
/// is no sub-tick structure.
using Time = std::uint64_t;

/// A single wire value.
using Bit = bool;

/// Subtraction clamped at zero.
constexpr Time sat_sub(Time a, Time b) { return a > b ? a - b : Time{0}; }

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid toggle list handed to a Signal factory. `index` is the position
/// of the offending toggle.
class ConstructionError : public Error {
  public:
    ConstructionError(const std::string& what, std::size_t index)
        : Error(what), index(index) {}
    std::size_t index;
};

/// Binary operation applied to signals with different horizons.
class HorizonMismatchError : public Error {
  public:
    using Error::Error;
};

/// Strictly increasing switching times of one direction (all rising, or all
/// falling, edges of one signal).
using EdgeSet = std::vector<Time>;

/// A piecewise-constant Boolean function of time in canonical toggle-list
/// form.
///
/// The value on (-inf, first toggle) is `initial`, each listed time flips
/// the value, and from the last toggle on the value is constant. Interval
/// semantics are closed-left/open-right: at a toggle the new value already
/// holds. `horizon` is the exclusive bound of the modeled window; every
/// toggle lies strictly below it.
class Signal {
  public:
    Signal() = default;

    /// Signal that starts at `initial` and flips at each of `toggles`.
    /// Toggles must be strictly increasing and below `horizon`.
    static Signal from_toggles(Bit initial, std::vector<Time> toggles, Time horizon);

    /// Constant signal.
    static Signal constant(Bit value, Time horizon);

    /// Indicator of [lo, hi): 0 before lo, 1 on the interval, 0 after.
    /// `hi` at or beyond the horizon leaves the signal high for good.
    static Signal pulse(Time lo, Time hi, Time horizon);

    /// Rebuild a signal from one sample per tick of [0, horizon);
    /// `initial` is the value before tick 0.
    static Signal from_samples(Bit initial, const std::vector<Bit>& samples, Time horizon);

    Bit initial() const { return initial_; }
    const std::vector<Time>& toggles() const { return toggles_; }
    Time horizon() const { return horizon_; }

    /// Value at t.
    Bit eval(Time t) const;

    /// Value immediately before t; equals `initial` for t at or below the
    /// first toggle.
    Bit left_limit(Time t) const;

    /// Constant value from the last toggle on.
    Bit final_value() const;

    /// Times where the value switches 0 -> 1 (left limit 0, value 1).
    EdgeSet rising_edges() const;

    /// Times where the value switches 1 -> 0.
    EdgeSet falling_edges() const;

    /// Same signal on a wider window. `new_horizon` must not shrink.
    Signal extend_horizon(Time new_horizon) const;

    bool operator==(const Signal&) const = default;

  private:
    Bit initial_ = false;
    std::vector<Time> toggles_;
    Time horizon_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Signal& s);

/// Pointwise complement.
Signal operator~(const Signal& x);

/// Pointwise conjunction, disjunction, exclusive or. Operands must share a
/// horizon; the result is canonical and commutes with left limits.
Signal operator&(const Signal& x, const Signal& y);
Signal operator|(const Signal& x, const Signal& y);
Signal operator^(const Signal& x, const Signal& y);

/// 1 at t exactly when x held 1 on the whole closed window [t - d, t]. The
/// stretch of the window before time zero counts as `initial`. A rise whose
/// delayed position would land at or past the horizon is dropped.
Signal window_and(const Signal& x, Time d);

}  // namespace latchcalc
