// SPDX-License-Identifier: Apache-2.0

#include "latchcalc/signal.hpp"

#include <algorithm>

namespace latchcalc {

Signal Signal::from_toggles(Bit initial, std::vector<Time> toggles, Time horizon) {
    for (std::size_t i = 0; i < toggles.size(); ++i) {
        if (i > 0 && toggles[i] <= toggles[i - 1])
            throw ConstructionError("toggles not increasing at index " + std::to_string(i), i);
        if (toggles[i] >= horizon)
            throw ConstructionError(
                "toggle at index " + std::to_string(i) + " lies at or beyond the horizon", i);
    }
    Signal s;
    s.initial_ = initial;
    s.toggles_ = std::move(toggles);
    s.horizon_ = horizon;
    return s;
}

Signal Signal::constant(Bit value, Time horizon) {
    return from_toggles(value, {}, horizon);
}

Signal Signal::pulse(Time lo, Time hi, Time horizon) {
    if (lo > hi)
        throw ConstructionError("pulse start lies after its end", 0);
    if (lo == hi)
        return constant(false, horizon);
    if (hi < horizon)
        return from_toggles(false, {lo, hi}, horizon);
    return from_toggles(false, {lo}, horizon);
}

Signal Signal::from_samples(Bit initial, const std::vector<Bit>& samples, Time horizon) {
    if (samples.size() != horizon)
        throw Error("sample count must equal the horizon");
    std::vector<Time> out;
    Bit cur = initial;
    for (Time t = 0; t < horizon; ++t) {
        if (samples[static_cast<std::size_t>(t)] != cur) {
            out.push_back(t);
            cur = !cur;
        }
    }
    return from_toggles(initial, std::move(out), horizon);
}

Bit Signal::eval(Time t) const {
    auto n = std::upper_bound(toggles_.begin(), toggles_.end(), t) - toggles_.begin();
    return initial_ != ((n & 1) != 0);
}

Bit Signal::left_limit(Time t) const {
    auto n = std::lower_bound(toggles_.begin(), toggles_.end(), t) - toggles_.begin();
    return initial_ != ((n & 1) != 0);
}

Bit Signal::final_value() const {
    return initial_ != ((toggles_.size() & 1) != 0);
}

EdgeSet Signal::rising_edges() const {
    EdgeSet out;
    for (std::size_t i = 0; i < toggles_.size(); ++i) {
        Bit before = initial_ != ((i & 1) != 0);
        if (!before) out.push_back(toggles_[i]);
    }
    return out;
}

EdgeSet Signal::falling_edges() const {
    EdgeSet out;
    for (std::size_t i = 0; i < toggles_.size(); ++i) {
        Bit before = initial_ != ((i & 1) != 0);
        if (before) out.push_back(toggles_[i]);
    }
    return out;
}

Signal Signal::extend_horizon(Time new_horizon) const {
    if (new_horizon < horizon_)
        throw Error("extend_horizon cannot shrink the window");
    return from_toggles(initial_, toggles_, new_horizon);
}

std::ostream& operator<<(std::ostream& os, const Signal& s) {
    os << "Signal(" << (s.initial() ? 1 : 0) << " :";
    for (Time t : s.toggles()) os << ' ' << t;
    return os << " | h=" << s.horizon() << ")";
}

namespace {

// Merge the toggle lists of two signals, sampling f at every candidate
// switching instant. The output only records real changes, so it is
// canonical by construction.
Signal combine(const Signal& x, const Signal& y, Bit (*f)(Bit, Bit), const char* opname) {
    if (x.horizon() != y.horizon())
        throw HorizonMismatchError(std::string(opname) + " needs operands with equal horizons");
    const auto& tx = x.toggles();
    const auto& ty = y.toggles();
    Bit ax = x.initial();
    Bit ay = y.initial();
    Bit cur = f(ax, ay);
    const Bit init = cur;
    std::vector<Time> out;
    std::size_t i = 0, j = 0;
    while (i < tx.size() || j < ty.size()) {
        Time t;
        if (j >= ty.size() || (i < tx.size() && tx[i] <= ty[j]))
            t = tx[i];
        else
            t = ty[j];
        if (i < tx.size() && tx[i] == t) {
            ax = !ax;
            ++i;
        }
        if (j < ty.size() && ty[j] == t) {
            ay = !ay;
            ++j;
        }
        Bit nv = f(ax, ay);
        if (nv != cur) {
            out.push_back(t);
            cur = nv;
        }
    }
    return Signal::from_toggles(init, std::move(out), x.horizon());
}

}  // namespace

Signal operator~(const Signal& x) {
    return Signal::from_toggles(!x.initial(), x.toggles(), x.horizon());
}

Signal operator&(const Signal& x, const Signal& y) {
    return combine(x, y, [](Bit a, Bit b) { return Bit(a && b); }, "conjunction");
}

Signal operator|(const Signal& x, const Signal& y) {
    return combine(x, y, [](Bit a, Bit b) { return Bit(a || b); }, "disjunction");
}

Signal operator^(const Signal& x, const Signal& y) {
    return combine(x, y, [](Bit a, Bit b) { return Bit(a != b); }, "exclusive or");
}

Signal window_and(const Signal& x, Time d) {
    if (d == 0) return x;
    const auto& tg = x.toggles();
    const Bit init = x.initial();
    std::vector<Time> out;
    std::size_t i = 0;
    if (init) {
        // The run covering time zero stretches back forever, so its end is
        // unaffected by the window.
        if (tg.empty()) return x;
        out.push_back(tg[0]);
        i = 1;
    }
    for (; i < tg.size(); i += 2) {
        Time rise = tg[i] + d;
        if (rise >= x.horizon()) break;
        if (i + 1 < tg.size()) {
            Time fall = tg[i + 1];
            if (rise < fall) {
                out.push_back(rise);
                out.push_back(fall);
            }
        } else {
            out.push_back(rise);
        }
    }
    return Signal::from_toggles(init, std::move(out), x.horizon());
}

}  // namespace latchcalc
