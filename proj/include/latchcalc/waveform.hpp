// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latchcalc/signal.hpp"

namespace latchcalc {

/// Syntax or consistency error in a waveform document. Line and column are
/// 1-based.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

/// An ordered set of named signals over one shared horizon.
///
/// Text form: a `horizon N` header, then one `name init : t1 t2 ...` line
/// per signal. Names match [A-Za-z_][A-Za-z0-9_]* and are unique.
struct WaveformDoc {
    Time horizon = 0;
    std::vector<std::pair<std::string, Signal>> entries;

    const Signal* find(std::string_view name) const;

    /// Append a signal, enforcing a well-formed fresh name and the shared
    /// horizon.
    void add(std::string name, Signal s);

    bool operator==(const WaveformDoc&) const = default;
};

/// True when `name` is acceptable as a signal name.
bool valid_signal_name(std::string_view name);

WaveformDoc parse_waveforms(std::string_view text);

/// Canonical text form; parsing it gives back an equal document.
std::string format_waveforms(const WaveformDoc& doc);

/// Four-state-free value change dump of the document: one wire per entry,
/// identifier codes assigned from '!' upward (at most 94 entries), initial
/// values dumped at #0, then one #t section per switching instant.
std::string emit_vcd(const WaveformDoc& doc);

}  // namespace latchcalc
