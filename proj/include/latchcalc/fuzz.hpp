// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "latchcalc/devices.hpp"
#include "latchcalc/waveform.hpp"

namespace latchcalc {

struct FuzzConfig {
    std::uint64_t seed = 0;
    std::uint64_t cases = 0;
    std::uint32_t max_toggles = 8;
    Time horizon = 64;
};

/// Deterministic random stream for one fuzz case. The stream is a pure
/// function of (seed, index), so any failing case can be replayed alone.
class CaseRng {
  public:
    CaseRng(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next();

    /// Uniform-ish value in [0, n); n must be positive. Deliberately avoids
    /// std::uniform_int_distribution so streams are identical across
    /// standard libraries.
    std::uint64_t below(std::uint64_t n);

    Bit flip();

  private:
    std::mt19937_64 eng_;
};

/// Random canonical signal with at most `max_toggles` toggles. A forced
/// initial value can be requested.
Signal random_signal(CaseRng& rng, std::uint32_t max_toggles, Time horizon,
                     std::optional<Bit> force_initial = std::nullopt);

/// Random admissible pair: u free, then v cleared wherever u is 1.
std::pair<Signal, Signal> random_admissible_pair(CaseRng& rng, std::uint32_t max_toggles,
                                                 Time horizon);

/// Random signal made of whole pulses with widths in [1, max_width],
/// separated by gaps of at least one tick.
Signal random_pulse_train(CaseRng& rng, std::uint32_t max_pulses, Time max_width, Time horizon);

/// Copy of `s` with the toggle set membership of `t` flipped: a toggle at t
/// is removed, a missing one inserted. The result differs from `s` at t.
Signal flip_toggle_at(const Signal& s, Time t);

struct FuzzFailure {
    std::uint64_t case_index = 0;
    std::string property;
    std::string detail;
    WaveformDoc doc;
};

/// Run the whole property bundle (solver against oracle, checker agreement,
/// two-solution structure, device reductions, edge discipline, closed-form
/// verification, mutation detection) for one case.
std::optional<FuzzFailure> run_fuzz_case(const FuzzConfig& config, std::uint64_t index);

}  // namespace latchcalc
