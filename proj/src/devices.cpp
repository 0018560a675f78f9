// SPDX-License-Identifier: Apache-2.0

#include "latchcalc/devices.hpp"

namespace latchcalc {

const Signal* DeviceTrace::find_input(std::string_view name) const {
    for (const auto& [n, s] : inputs)
        if (n == name) return &s;
    return nullptr;
}

namespace {

// Forced-initial rule applied to one stage's inputs as they stand before
// time zero: an asserted set forces state 1, an asserted reset forces 0.
void require_stage_init(Bit set0, Bit reset0, Bit init, const std::string& stage) {
    if (set0 && !init)
        throw InitError(stage + ": initial state 0 conflicts with the set side already 1 before time zero",
                        stage);
    if (reset0 && init)
        throw InitError(stage + ": initial state 1 conflicts with the reset side already 1 before time zero",
                        stage);
}

Signal solve_stage(const Signal& u, const Signal& v, Bit init, const std::string& stage) {
    require_admissible(u, v, stage);
    if (!stage.empty()) require_stage_init(u.initial(), v.initial(), init, stage);
    return solve(u, v, init).x;
}

void require_same_horizons(std::initializer_list<const Signal*> sigs) {
    const Signal* first = *sigs.begin();
    for (const Signal* s : sigs)
        if (s->horizon() != first->horizon())
            throw HorizonMismatchError("device inputs must share one horizon");
}

// Master transparent while the clock is high, slave transparent while it is
// low. `master` yields the master state at tick t given its previous value
// and the (held) slave state.
template <class F>
DeviceTrace clock_phased(const Signal& c, Bit init_p, Bit init_q, F&& master) {
    const Time h = c.horizon();
    std::vector<Bit> pv(static_cast<std::size_t>(h));
    std::vector<Bit> qv(static_cast<std::size_t>(h));
    Bit p = init_p;
    Bit q = init_q;
    for (Time t = 0; t < h; ++t) {
        if (c.eval(t))
            p = master(t, p, q);
        else
            q = p;
        pv[static_cast<std::size_t>(t)] = p;
        qv[static_cast<std::size_t>(t)] = q;
    }
    DeviceTrace tr;
    tr.p = Signal::from_samples(init_p, pv, h);
    tr.q = Signal::from_samples(init_q, qv, h);
    return tr;
}

DeviceTrace slave_of(const Signal& p, const Signal& c, Bit init_q) {
    Signal cn = ~c;
    DeviceTrace tr;
    tr.q = solve_stage(p & cn, ~p & cn, init_q, "slave");
    tr.p = p;
    return tr;
}

}  // namespace

Signal c_element(const std::vector<Signal>& inputs, Bit init) {
    if (inputs.empty()) throw Error("c element needs at least one input");
    Signal all = inputs.front();
    Signal none = ~inputs.front();
    for (std::size_t i = 1; i < inputs.size(); ++i) {
        all = all & inputs[i];
        none = none & ~inputs[i];
    }
    return solve_stage(all, none, init, "");
}

Signal rs_latch(const Signal& r, const Signal& s, Bit init) {
    return solve_stage(s, r, init, "");
}

Signal clocked_rs(const Signal& r, const Signal& s, const Signal& c, Bit init) {
    require_same_horizons({&r, &s, &c});
    return solve_stage(s & c, r & c, init, "");
}

Signal d_latch(const Signal& d, const Signal& c, Bit init) {
    require_same_horizons({&d, &c});
    return solve_stage(d & c, ~d & c, init, "");
}

DeviceTrace edge_rs_ff(const Signal& r, const Signal& s, const Signal& c, Bit init_p, Bit init_q) {
    require_same_horizons({&r, &s, &c});
    Signal p = solve_stage(s & c, r & c, init_p, "master");
    DeviceTrace tr = slave_of(p, c, init_q);
    tr.inputs = {{"R", r}, {"S", s}, {"C", c}};
    return tr;
}

DeviceTrace d_ff(const Signal& d, const Signal& c, Bit init_p, Bit init_q) {
    require_same_horizons({&d, &c});
    Signal p = solve_stage(d & c, ~d & c, init_p, "master");
    DeviceTrace tr = slave_of(p, c, init_q);
    tr.inputs = {{"D", d}, {"C", c}};
    return tr;
}

DeviceTrace jk_ff(const Signal& j, const Signal& k, const Signal& c, Bit init_p, Bit init_q) {
    require_same_horizons({&j, &k, &c});
    Bit c0 = c.initial();
    require_stage_init(j.initial() && !init_q && c0, k.initial() && init_q && c0, init_p, "master");
    require_stage_init(init_p && !c0, !init_p && !c0, init_q, "slave");
    DeviceTrace tr = clock_phased(c, init_p, init_q, [&](Time t, Bit p, Bit q) {
        if (j.eval(t) && !q) return Bit(true);
        if (k.eval(t) && q) return Bit(false);
        return p;
    });
    tr.inputs = {{"J", j}, {"K", k}, {"C", c}};
    return tr;
}

DeviceTrace jk_ff_variant3(const Signal& j, const Signal& k, const Signal& c, Bit init_p, Bit init_q) {
    require_same_horizons({&j, &k, &c});
    Bit c0 = c.initial();
    Bit d0 = (j.initial() && !init_q) || (!k.initial() && init_q);
    require_stage_init(d0 && c0, !d0 && c0, init_p, "master");
    require_stage_init(init_p && !c0, !init_p && !c0, init_q, "slave");
    DeviceTrace tr = clock_phased(c, init_p, init_q, [&](Time t, Bit, Bit q) {
        return Bit((j.eval(t) && !q) || (!k.eval(t) && q));
    });
    tr.inputs = {{"J", j}, {"K", k}, {"C", c}};
    return tr;
}

DeviceTrace t_ff(const Signal& c, Bit init_p, Bit init_q) {
    Bit c0 = c.initial();
    require_stage_init(!init_q && c0, init_q && c0, init_p, "master");
    require_stage_init(init_p && !c0, !init_p && !c0, init_q, "slave");
    DeviceTrace tr = clock_phased(c, init_p, init_q, [&](Time, Bit, Bit q) { return Bit(!q); });
    tr.inputs = {{"C", c}};
    return tr;
}

Signal inertial_rs_latch(const Signal& r, const Signal& s, InertialParams params, Bit init) {
    require_same_horizons({&r, &s});
    Signal u = window_and(s, params.rise);
    Signal v = window_and(r, params.fall);
    return solve_stage(u, v, init, "");
}

namespace {

struct At {
    Bit cur;
    Bit pre;
};

At at(const Signal& s, Time t) { return At{s.eval(t), s.left_limit(t)}; }

bool steady(At s) { return s.cur == s.pre; }

// Set, reset and hold cases of the plain latch equation.
bool latch_form(At x, Bit set, Bit reset) {
    return (x.cur && set && !reset) || (!x.cur && !set && reset) || (steady(x) && !set && !reset);
}

// Slave half of a master-slave device while the clock is low: the state has
// settled on a steady master value it agrees with.
bool slave_form(At q, At p) {
    return (!q.cur && !p.pre && !p.cur) || (q.cur && p.pre && p.cur);
}

const Signal& need_input(const DeviceTrace& trace, std::string_view name) {
    const Signal* s = trace.find_input(name);
    if (!s) throw Error("trace is missing input '" + std::string(name) + "'");
    return *s;
}

const Signal& need_p(const DeviceTrace& trace) {
    if (!trace.p) throw Error("trace is missing the internal signal p");
    return *trace.p;
}

std::optional<DeviceFailure> fail(Time t, const char* clause) {
    return DeviceFailure{t, clause};
}

}  // namespace

std::optional<DeviceFailure> verify_device(DeviceKind kind, const DeviceTrace& trace) {
    const Time h = trace.q.horizon();
    for (const auto& [name, s] : trace.inputs)
        if (s.horizon() != h)
            throw HorizonMismatchError("trace input '" + name + "' has a different horizon");
    if (trace.p && trace.p->horizon() != h)
        throw HorizonMismatchError("trace signal p has a different horizon");

    switch (kind) {
        case DeviceKind::CElement: {
            if (trace.inputs.empty()) throw Error("c element trace has no inputs");
            for (Time t = 0; t <= h; ++t) {
                At x = at(trace.q, t);
                bool all1 = true;
                bool all0 = true;
                for (const auto& [name, s] : trace.inputs) {
                    Bit v = s.eval(t);
                    all1 = all1 && v;
                    all0 = all0 && !v;
                }
                bool ok = (x.cur && all1) || (!x.cur && all0) || (steady(x) && !all1 && !all0);
                if (!ok) return fail(t, "state equation");
            }
            return std::nullopt;
        }
        case DeviceKind::RsLatch: {
            const Signal& r = need_input(trace, "R");
            const Signal& s = need_input(trace, "S");
            for (Time t = 0; t <= h; ++t)
                if (!latch_form(at(trace.q, t), s.eval(t), r.eval(t)))
                    return fail(t, "state equation");
            return std::nullopt;
        }
        case DeviceKind::ClockedRs: {
            const Signal& r = need_input(trace, "R");
            const Signal& s = need_input(trace, "S");
            const Signal& c = need_input(trace, "C");
            for (Time t = 0; t <= h; ++t) {
                At q = at(trace.q, t);
                bool ok = c.eval(t) ? latch_form(q, s.eval(t), r.eval(t)) : steady(q);
                if (!ok) return fail(t, c.eval(t) ? "clock-high clause" : "clock-low clause");
            }
            return std::nullopt;
        }
        case DeviceKind::DLatch: {
            const Signal& d = need_input(trace, "D");
            const Signal& c = need_input(trace, "C");
            for (Time t = 0; t <= h; ++t) {
                At q = at(trace.q, t);
                bool ok = c.eval(t) ? (q.cur == d.eval(t)) : steady(q);
                if (!ok) return fail(t, c.eval(t) ? "clock-high clause" : "clock-low clause");
            }
            return std::nullopt;
        }
        case DeviceKind::EdgeRsFf: {
            const Signal& r = need_input(trace, "R");
            const Signal& s = need_input(trace, "S");
            const Signal& c = need_input(trace, "C");
            const Signal& p = need_p(trace);
            for (Time t = 0; t <= h; ++t) {
                At q = at(trace.q, t);
                At pp = at(p, t);
                if (c.eval(t)) {
                    if (!steady(q)) return fail(t, "state moved while the clock is high");
                    if (!latch_form(pp, s.eval(t), r.eval(t))) return fail(t, "master clause");
                } else if (!slave_form(q, pp)) {
                    return fail(t, "slave clause");
                }
            }
            return std::nullopt;
        }
        case DeviceKind::DFf: {
            const Signal& d = need_input(trace, "D");
            const Signal& c = need_input(trace, "C");
            const Signal& p = need_p(trace);
            for (Time t = 0; t <= h; ++t) {
                At q = at(trace.q, t);
                At pp = at(p, t);
                if (c.eval(t)) {
                    if (!steady(q)) return fail(t, "state moved while the clock is high");
                    if (pp.cur != d.eval(t)) return fail(t, "master clause");
                } else if (!slave_form(q, pp)) {
                    return fail(t, "slave clause");
                }
            }
            return std::nullopt;
        }
        case DeviceKind::JkFf: {
            const Signal& j = need_input(trace, "J");
            const Signal& k = need_input(trace, "K");
            const Signal& c = need_input(trace, "C");
            const Signal& p = need_p(trace);
            for (Time t = 0; t <= h; ++t) {
                At q = at(trace.q, t);
                At pp = at(p, t);
                if (c.eval(t)) {
                    if (!steady(q)) return fail(t, "state moved while the clock is high");
                    Bit jv = j.eval(t);
                    Bit kv = k.eval(t);
                    bool hold_guard = (!jv && !kv) || (!jv && !q.cur) || (!kv && q.cur);
                    bool ok = (pp.cur && jv && !q.cur) || (!pp.cur && kv && q.cur) ||
                              (steady(pp) && hold_guard);
                    if (!ok) return fail(t, "master clause");
                } else if (!slave_form(q, pp)) {
                    return fail(t, "slave clause");
                }
            }
            return std::nullopt;
        }
        case DeviceKind::JkFf3: {
            const Signal& j = need_input(trace, "J");
            const Signal& k = need_input(trace, "K");
            const Signal& c = need_input(trace, "C");
            const Signal& p = need_p(trace);
            for (Time t = 0; t <= h; ++t) {
                At q = at(trace.q, t);
                At pp = at(p, t);
                if (c.eval(t)) {
                    if (!steady(q)) return fail(t, "state moved while the clock is high");
                    Bit jv = j.eval(t);
                    Bit kv = k.eval(t);
                    bool ok = (pp.cur && jv && !q.cur) || (!pp.cur && kv && q.cur) ||
                              (!pp.cur && !jv && !q.cur) || (pp.cur && !kv && q.cur);
                    if (!ok) return fail(t, "master clause");
                } else if (!slave_form(q, pp)) {
                    return fail(t, "slave clause");
                }
            }
            return std::nullopt;
        }
        case DeviceKind::TFf: {
            const Signal& c = need_input(trace, "C");
            const Signal& p = need_p(trace);
            for (Time t = 0; t <= h; ++t) {
                At q = at(trace.q, t);
                At pp = at(p, t);
                if (c.eval(t)) {
                    bool ok = (!q.pre && !q.cur && pp.cur) || (q.pre && q.cur && !pp.cur);
                    if (!ok) return fail(t, "toggle clause");
                } else if (!slave_form(q, pp)) {
                    return fail(t, "slave clause");
                }
            }
            return std::nullopt;
        }
    }
    throw Error("unknown device kind");
}

}  // namespace latchcalc
