// SPDX-License-Identifier: Apache-2.0

#include "latchcalc/waveform.hpp"

#include <charconv>
#include <map>

namespace latchcalc {

const Signal* WaveformDoc::find(std::string_view name) const {
    for (const auto& [n, s] : entries)
        if (n == name) return &s;
    return nullptr;
}

void WaveformDoc::add(std::string name, Signal s) {
    if (!valid_signal_name(name)) throw Error("invalid signal name '" + name + "'");
    if (find(name)) throw Error("duplicate signal name '" + name + "'");
    if (s.horizon() != horizon)
        throw HorizonMismatchError("signal '" + name + "' does not match the document horizon");
    entries.emplace_back(std::move(name), std::move(s));
}

bool valid_signal_name(std::string_view name) {
    if (name.empty()) return false;
    auto head = [](char c) { return c == '_' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    if (!head(name[0])) return false;
    for (char c : name.substr(1))
        if (!tail(c)) return false;
    return true;
}

namespace {

// Cursor over one line; remembers 1-based positions for error reporting.
struct LineScanner {
    std::string_view text;
    std::size_t line;
    std::size_t pos = 0;

    void skip_spaces() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool at_end() {
        skip_spaces();
        return pos >= text.size();
    }

    std::size_t column() const { return pos + 1; }

    [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, line, column()); }

    std::string_view word() {
        skip_spaces();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
        return text.substr(start, pos - start);
    }

    Time number(const char* what) {
        skip_spaces();
        std::size_t start = pos;
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc() || ptr == text.data() + pos) {
            pos = start;
            error(std::string("expected ") + what);
        }
        pos = static_cast<std::size_t>(ptr - text.data());
        if (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') {
            pos = start;
            error(std::string("expected ") + what);
        }
        return value;
    }
};

std::vector<std::pair<std::string_view, std::size_t>> split_lines(std::string_view text) {
    std::vector<std::pair<std::string_view, std::size_t>> lines;
    std::size_t start = 0;
    std::size_t number = 1;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.emplace_back(text.substr(start), number);
            break;
        }
        lines.emplace_back(text.substr(start, nl - start), number);
        start = nl + 1;
        ++number;
    }
    return lines;
}

}  // namespace

WaveformDoc parse_waveforms(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("expected 'horizon' header", 1, 1);

    WaveformDoc doc;
    {
        LineScanner sc{lines[0].first, lines[0].second};
        if (sc.word() != "horizon") {
            sc.pos = 0;
            sc.skip_spaces();
            sc.error("expected 'horizon' header");
        }
        doc.horizon = sc.number("horizon value");
        if (!sc.at_end()) sc.error("unexpected text after horizon");
    }

    for (std::size_t li = 1; li < lines.size(); ++li) {
        LineScanner sc{lines[li].first, lines[li].second};
        if (sc.at_end()) sc.error("expected a signal line");
        std::size_t name_col = sc.column();
        std::string name(sc.word());
        if (!valid_signal_name(name))
            throw ParseError("invalid signal name '" + name + "'", sc.line, name_col);
        if (doc.find(name))
            throw ParseError("duplicate signal name '" + name + "'", sc.line, name_col);

        sc.skip_spaces();
        std::size_t init_col = sc.column();
        std::string_view init_tok = sc.word();
        Bit init = false;
        if (init_tok == "0")
            init = false;
        else if (init_tok == "1")
            init = true;
        else
            throw ParseError("expected initial value 0 or 1", sc.line, init_col);

        sc.skip_spaces();
        if (sc.pos >= sc.text.size() || sc.text[sc.pos] != ':') sc.error("expected ':'");
        ++sc.pos;

        std::vector<Time> toggles;
        while (!sc.at_end()) {
            std::size_t col = sc.column();
            Time t = sc.number("toggle time");
            if (!toggles.empty() && t <= toggles.back())
                throw ParseError("toggles not increasing", sc.line, col);
            if (t >= doc.horizon)
                throw ParseError("toggle at or beyond the horizon", sc.line, col);
            toggles.push_back(t);
        }
        doc.entries.emplace_back(std::move(name),
                                 Signal::from_toggles(init, std::move(toggles), doc.horizon));
    }
    return doc;
}

std::string format_waveforms(const WaveformDoc& doc) {
    std::string out = "horizon " + std::to_string(doc.horizon) + "\n";
    for (const auto& [name, s] : doc.entries) {
        out += name;
        out += s.initial() ? " 1 :" : " 0 :";
        for (Time t : s.toggles()) out += ' ' + std::to_string(t);
        out += '\n';
    }
    return out;
}

std::string emit_vcd(const WaveformDoc& doc) {
    if (doc.entries.size() > 94)
        throw Error("too many signals for vcd output (at most 94)");
    auto id = [](std::size_t index) { return static_cast<char>('!' + index); };

    std::string out = "$timescale 1ns $end\n";
    for (std::size_t i = 0; i < doc.entries.size(); ++i)
        out += std::string("$var wire 1 ") + id(i) + ' ' + doc.entries[i].first + " $end\n";
    out += "$enddefinitions $end\n";

    out += "#0\n$dumpvars\n";
    for (std::size_t i = 0; i < doc.entries.size(); ++i)
        out += std::string(doc.entries[i].second.eval(0) ? "1" : "0") + id(i) + '\n';
    out += "$end\n";

    // Toggles at time zero are already covered by the #0 dump.
    std::map<Time, std::vector<std::size_t>> changes;
    for (std::size_t i = 0; i < doc.entries.size(); ++i)
        for (Time t : doc.entries[i].second.toggles())
            if (t > 0) changes[t].push_back(i);
    for (const auto& [t, indices] : changes) {
        out += '#' + std::to_string(t) + '\n';
        for (std::size_t i : indices)
            out += std::string(doc.entries[i].second.eval(t) ? "1" : "0") + id(i) + '\n';
    }
    return out;
}

}  // namespace latchcalc
