// SPDX-License-Identifier: Apache-2.0

#include "latchcalc/fuzz.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace latchcalc {

CaseRng::CaseRng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    eng_.seed(seq);
}

std::uint64_t CaseRng::next() { return eng_(); }

std::uint64_t CaseRng::below(std::uint64_t n) { return eng_() % n; }

Bit CaseRng::flip() { return (eng_() & 1) != 0; }

Signal random_signal(CaseRng& rng, std::uint32_t max_toggles, Time horizon,
                     std::optional<Bit> force_initial) {
    std::uint64_t want = rng.below(std::uint64_t(max_toggles) + 1);
    want = std::min<std::uint64_t>(want, horizon);
    std::set<Time> picks;
    while (picks.size() < want) picks.insert(rng.below(horizon));
    Bit initial = force_initial ? *force_initial : rng.flip();
    return Signal::from_toggles(initial, std::vector<Time>(picks.begin(), picks.end()), horizon);
}

std::pair<Signal, Signal> random_admissible_pair(CaseRng& rng, std::uint32_t max_toggles,
                                                 Time horizon) {
    Signal u = random_signal(rng, max_toggles, horizon);
    Signal v = random_signal(rng, max_toggles, horizon);
    return {u, v & ~u};
}

Signal random_pulse_train(CaseRng& rng, std::uint32_t max_pulses, Time max_width, Time horizon) {
    std::vector<Time> tg;
    Time t = rng.below(4);
    std::uint64_t pulses = rng.below(std::uint64_t(max_pulses) + 1);
    for (std::uint64_t i = 0; i < pulses; ++i) {
        Time start = t + rng.below(6);
        if (start >= horizon) break;
        Time width = 1 + rng.below(max_width);
        tg.push_back(start);
        Time end = start + width;
        if (end >= horizon) break;
        tg.push_back(end);
        t = end + 1;
    }
    return Signal::from_toggles(false, std::move(tg), horizon);
}

Signal flip_toggle_at(const Signal& s, Time t) {
    std::vector<Time> tg = s.toggles();
    auto it = std::lower_bound(tg.begin(), tg.end(), t);
    if (it != tg.end() && *it == t)
        tg.erase(it);
    else
        tg.insert(it, t);
    return Signal::from_toggles(s.initial(), std::move(tg), s.horizon());
}

namespace {

using NamedSignal = std::pair<const char*, const Signal*>;

FuzzFailure make_failure(std::uint64_t index, std::string property, std::string detail, Time h,
                         std::initializer_list<NamedSignal> sigs) {
    FuzzFailure f;
    f.case_index = index;
    f.property = std::move(property);
    f.detail = std::move(detail);
    f.doc.horizon = h;
    for (const auto& [name, s] : sigs) f.doc.add(name, *s);
    return f;
}

std::vector<std::pair<Time, Time>> one_runs(const Signal& c) {
    std::vector<std::pair<Time, Time>> runs;
    Bit val = c.initial();
    Time start = 0;
    for (Time t : c.toggles()) {
        if (val) runs.emplace_back(start, t);
        val = !val;
        if (val) start = t;
    }
    if (val) runs.emplace_back(start, c.horizon());
    return runs;
}

std::uint64_t toggles_within(const Signal& s, Time lo, Time hi) {
    const auto& tg = s.toggles();
    auto a = std::lower_bound(tg.begin(), tg.end(), lo);
    auto b = std::lower_bound(tg.begin(), tg.end(), hi);
    return static_cast<std::uint64_t>(b - a);
}

// Candidate initial-state pairs in random order; returns the first the
// device accepts. The feedback equations always leave at least one pair
// consistent, so exhausting all four is itself a failure.
template <class Build>
std::optional<DeviceTrace> try_inits(CaseRng& rng, Build&& build) {
    std::array<std::pair<Bit, Bit>, 4> cands{{{false, false}, {false, true}, {true, false}, {true, true}}};
    for (std::size_t i = cands.size() - 1; i > 0; --i)
        std::swap(cands[i], cands[rng.below(i + 1)]);
    for (auto [ip, iq] : cands) {
        try {
            return build(ip, iq);
        } catch (const InitError&) {
        }
    }
    return std::nullopt;
}

std::optional<FuzzFailure> check_solver_case(CaseRng& rng, const FuzzConfig& cfg,
                                             std::uint64_t index) {
    const Time h = cfg.horizon;
    auto [u, v] = random_admissible_pair(rng, cfg.max_toggles, h);

    InitialConstraint constraint = initial_constraint(u, v);
    std::vector<Bit> inits;
    if (constraint != InitialConstraint::Forced0) inits.push_back(true);
    if (constraint != InitialConstraint::Forced1) inits.push_back(false);

    for (Bit init : inits) {
        LatchSolution sol = solve(u, v, init);
        Signal oracle = interval_oracle(u, v, init);
        if (!(sol.x == oracle))
            return make_failure(index, "solver-oracle agreement",
                                "schedule and sweep solutions differ", h,
                                {{"u", &u}, {"v", &v}, {"x", &sol.x}});
        if (auto bad = check_system(u, v, sol.x))
            return make_failure(index, "solution satisfies the system",
                                std::string("fails at t=") + std::to_string(bad->time) + " (" +
                                    to_string(bad->equation) + ")",
                                h, {{"u", &u}, {"v", &v}, {"x", &sol.x}});
        if (auto bad = check_characteristic(u, v, sol.x))
            return make_failure(index, "solution satisfies the characteristic equation",
                                "fails at t=" + std::to_string(*bad), h,
                                {{"u", &u}, {"v", &v}, {"x", &sol.x}});

        // Schedule structure: strictly increasing, alternating sides, each
        // time the earliest eligible rising edge.
        EdgeSet ru = u.rising_edges();
        EdgeSet rv = v.rising_edges();
        const EdgeSet* side = init ? &rv : &ru;
        const EdgeSet* other = init ? &ru : &rv;
        bool have_prev = false;
        Time prev = 0;
        for (Time t : sol.schedule.times) {
            auto it = have_prev ? std::upper_bound(side->begin(), side->end(), prev) : side->begin();
            if (it == side->end() || *it != t)
                return make_failure(index, "schedule picks earliest edges",
                                    "unexpected schedule time " + std::to_string(t), h,
                                    {{"u", &u}, {"v", &v}});
            prev = t;
            have_prev = true;
            std::swap(side, other);
        }
        if ((have_prev ? std::upper_bound(side->begin(), side->end(), prev) : side->begin()) !=
            side->end())
            return make_failure(index, "schedule exhausts eligible edges", "schedule stopped early",
                                h, {{"u", &u}, {"v", &v}});

        // The latch solution doubles as an RS device trace.
        DeviceTrace rs_trace{{{"R", v}, {"S", u}}, sol.x, std::nullopt};
        if (auto bad = verify_device(DeviceKind::RsLatch, rs_trace))
            return make_failure(index, "closed form holds on solver output",
                                "fails at t=" + std::to_string(bad->time), h,
                                {{"u", &u}, {"v", &v}, {"x", &sol.x}});
        if (h > 0) {
            Signal mutated = flip_toggle_at(sol.x, rng.below(h));
            DeviceTrace bad_trace{{{"R", v}, {"S", u}}, mutated, std::nullopt};
            if (!verify_device(DeviceKind::RsLatch, bad_trace))
                return make_failure(index, "closed form rejects a mutated solution",
                                    "mutated state accepted", h,
                                    {{"u", &u}, {"v", &v}, {"x", &mutated}});
        }
    }

    // Checker agreement on an unrelated candidate state signal.
    Signal x = random_signal(rng, cfg.max_toggles, h);
    for (Time t = 0; t <= h; ++t)
        if (system_holds_at(u, v, x, t) != characteristic_holds_at(u, v, x, t))
            return make_failure(index, "per-tick checker agreement",
                                "verdicts differ at t=" + std::to_string(t), h,
                                {{"u", &u}, {"v", &v}, {"x", &x}});
    auto sys = check_system(u, v, x);
    auto chr = check_characteristic(u, v, x);
    if (sys.has_value() != chr.has_value() || (sys && sys->time != *chr))
        return make_failure(index, "first-failure agreement", "checkers disagree", h,
                            {{"u", &u}, {"v", &v}, {"x", &x}});

    // With nothing forced before time zero the two solutions coincide from
    // their first meeting point on, and they never start switching together.
    if (constraint == InitialConstraint::Free) {
        LatchSolution s0 = solve(u, v, false);
        LatchSolution s1 = solve(u, v, true);
        if (!s0.schedule.times.empty() && !s1.schedule.times.empty() &&
            s0.schedule.times.front() == s1.schedule.times.front())
            return make_failure(index, "distinct first switching times",
                                "both solutions first switch at t=" +
                                    std::to_string(s0.schedule.times.front()),
                                h, {{"u", &u}, {"v", &v}});
        bool met = false;
        for (Time t = 0; t < h; ++t) {
            bool eq = s0.x.eval(t) == s1.x.eval(t);
            if (met && !eq)
                return make_failure(index, "solutions coincide after meeting",
                                    "solutions separate again at t=" + std::to_string(t), h,
                                    {{"u", &u}, {"v", &v}, {"x0", &s0.x}, {"x1", &s1.x}});
            met = met || eq;
        }
    }
    return std::nullopt;
}

std::optional<FuzzFailure> check_device_case(CaseRng& rng, const FuzzConfig& cfg,
                                             std::uint64_t index) {
    const Time h = cfg.horizon;
    auto [s, r] = random_admissible_pair(rng, cfg.max_toggles, h);
    Signal c = random_signal(rng, cfg.max_toggles, h);
    Signal d = random_signal(rng, cfg.max_toggles, h);
    Signal j = random_signal(rng, cfg.max_toggles, h);
    Signal k = random_signal(rng, cfg.max_toggles, h);
    Signal one = Signal::constant(true, h);

    // Gating a set/reset latch with an always-high clock changes nothing.
    InitialConstraint rc = initial_constraint(s, r);
    Bit rs_init = rc == InitialConstraint::Forced1   ? true
                  : rc == InitialConstraint::Forced0 ? false
                                                     : rng.flip();
    if (!(clocked_rs(r, s, one, rs_init) == rs_latch(r, s, rs_init)))
        return make_failure(index, "always-open clocked latch reduces to the plain latch", "", h,
                            {{"R", &r}, {"S", &s}});

    // A data latch is a clocked latch with derived set/reset inputs.
    Bit dl_u0 = d.initial() && c.initial();
    Bit dl_v0 = !d.initial() && c.initial();
    Bit dl_init = dl_u0 ? true : (dl_v0 ? false : rng.flip());
    Signal derived_r = ~(d & c);
    if (!(d_latch(d, c, dl_init) == clocked_rs(derived_r, d, c, dl_init)))
        return make_failure(index, "data latch reduces to a clocked latch", "", h,
                            {{"D", &d}, {"C", &c}});

    // Same reduction through the two-stage devices.
    Bit ff_ip = dl_init;
    Bit ff_iq = c.initial() ? rng.flip() : ff_ip;
    DeviceTrace dff_tr = d_ff(d, c, ff_ip, ff_iq);
    DeviceTrace ers_tr = edge_rs_ff(derived_r, d, c, ff_ip, ff_iq);
    if (!(dff_tr.q == ers_tr.q) || !(*dff_tr.p == *ers_tr.p))
        return make_failure(index, "data flip-flop reduces to the edge-triggered latch", "", h,
                            {{"D", &d}, {"C", &c}});
    if (auto bad = verify_device(DeviceKind::DFf, dff_tr))
        return make_failure(index, "data flip-flop closed form",
                            "fails at t=" + std::to_string(bad->time) + " (" + bad->clause + ")", h,
                            {{"D", &d}, {"C", &c}, {"P", &*dff_tr.p}, {"Q", &dff_tr.q}});
    if (auto bad = verify_device(DeviceKind::EdgeRsFf, ers_tr))
        return make_failure(index, "edge-triggered latch closed form",
                            "fails at t=" + std::to_string(bad->time) + " (" + bad->clause + ")", h,
                            {{"R", &derived_r}, {"S", &d}, {"C", &c}, {"P", &*ers_tr.p},
                             {"Q", &ers_tr.q}});

    // Captured value at each falling clock edge is D just before the edge.
    for (Time t : c.falling_edges())
        if (dff_tr.q.eval(t) != d.left_limit(t))
            return make_failure(index, "falling-edge capture",
                                "capture at t=" + std::to_string(t) + " missed", h,
                                {{"D", &d}, {"C", &c}, {"Q", &dff_tr.q}});

    // Both JK constructions, the toggle device, and their agreements.
    Bit t_iq = rng.flip();
    Bit t_ip = c.initial() ? !t_iq : t_iq;
    DeviceTrace t_tr = t_ff(c, t_ip, t_iq);
    DeviceTrace jk_ones = jk_ff(one, one, c, t_ip, t_iq);
    DeviceTrace jk3_ones = jk_ff_variant3(one, one, c, t_ip, t_iq);
    if (!(t_tr.q == jk_ones.q) || !(*t_tr.p == *jk_ones.p))
        return make_failure(index, "toggle device equals JK with both inputs high", "", h,
                            {{"C", &c}});
    if (!(t_tr.q == jk3_ones.q) || !(*t_tr.p == *jk3_ones.p))
        return make_failure(index, "toggle device equals derived JK with both inputs high", "", h,
                            {{"C", &c}});
    if (t_tr.q.toggles() != c.falling_edges())
        return make_failure(index, "toggle device flips at every falling edge", "", h,
                            {{"C", &c}, {"Q", &t_tr.q}});
    Signal t_qn = ~t_tr.q;
    DeviceTrace t_as_dff{{{"D", t_qn}, {"C", c}}, t_tr.q, t_tr.p};
    if (auto bad = verify_device(DeviceKind::DFf, t_as_dff))
        return make_failure(index, "toggle trace satisfies the data flip-flop form",
                            "fails at t=" + std::to_string(bad->time), h,
                            {{"C", &c}, {"Q", &t_tr.q}});
    DeviceTrace t_as_ers{{{"R", t_tr.q}, {"S", t_qn}, {"C", c}}, t_tr.q, t_tr.p};
    if (auto bad = verify_device(DeviceKind::EdgeRsFf, t_as_ers))
        return make_failure(index, "toggle trace satisfies the edge-triggered form",
                            "fails at t=" + std::to_string(bad->time), h,
                            {{"C", &c}, {"Q", &t_tr.q}});

    auto jk_tr = try_inits(rng, [&](Bit ip, Bit iq) { return jk_ff(j, k, c, ip, iq); });
    if (!jk_tr)
        return make_failure(index, "JK accepts some initial state", "", h,
                            {{"J", &j}, {"K", &k}, {"C", &c}});
    auto jk3_tr = try_inits(rng, [&](Bit ip, Bit iq) { return jk_ff_variant3(j, k, c, ip, iq); });
    if (!jk3_tr)
        return make_failure(index, "derived JK accepts some initial state", "", h,
                            {{"J", &j}, {"K", &k}, {"C", &c}});
    if (auto bad = verify_device(DeviceKind::JkFf, *jk_tr))
        return make_failure(index, "JK closed form",
                            "fails at t=" + std::to_string(bad->time) + " (" + bad->clause + ")", h,
                            {{"J", &j}, {"K", &k}, {"C", &c}, {"P", &*jk_tr->p}, {"Q", &jk_tr->q}});
    if (auto bad = verify_device(DeviceKind::JkFf3, *jk3_tr))
        return make_failure(index, "derived JK closed form",
                            "fails at t=" + std::to_string(bad->time) + " (" + bad->clause + ")", h,
                            {{"J", &j}, {"K", &k}, {"C", &c}, {"P", &*jk3_tr->p},
                             {"Q", &jk3_tr->q}});

    // Edge discipline and master stability.
    std::array<const DeviceTrace*, 5> staged{&dff_tr, &ers_tr, &t_tr, &*jk_tr, &*jk3_tr};
    EdgeSet falls = c.falling_edges();
    for (const DeviceTrace* tr : staged) {
        for (Time t : tr->q.toggles())
            if (!std::binary_search(falls.begin(), falls.end(), t))
                return make_failure(index, "state toggles only at falling clock edges",
                                    "stray toggle at t=" + std::to_string(t), h,
                                    {{"C", &c}, {"Q", &tr->q}});
    }
    for (auto [lo, hi] : one_runs(c))
        if (toggles_within(*jk_tr->p, lo, hi) > 1)
            return make_failure(index, "JK master settles once per high clock phase",
                                "several master toggles in [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + ")",
                                h, {{"J", &j}, {"K", &k}, {"C", &c}, {"P", &*jk_tr->p}});

    // A flipped toggle in the state must break the closed form.
    if (h > 0) {
        DeviceTrace mutated = *jk_tr;
        mutated.q = flip_toggle_at(mutated.q, rng.below(h));
        if (!verify_device(DeviceKind::JkFf, mutated))
            return make_failure(index, "closed form rejects a mutated device state",
                                "mutated state accepted", h,
                                {{"J", &j}, {"K", &k}, {"C", &c}, {"Q", &mutated.q}});
    }
    return std::nullopt;
}

std::optional<FuzzFailure> check_inertial_case(CaseRng& rng, const FuzzConfig& cfg,
                                               std::uint64_t index) {
    const Time h = cfg.horizon;
    Signal s = random_pulse_train(rng, cfg.max_toggles / 2 + 1, 6, h);
    Signal r0 = random_pulse_train(rng, cfg.max_toggles / 2 + 1, 6, h);
    Signal r = r0 & ~s;
    Bit init = rng.flip();

    if (!(inertial_rs_latch(r, s, InertialParams{0, 0}, init) == rs_latch(r, s, init)))
        return make_failure(index, "zero-width windows reduce to the plain latch", "", h,
                            {{"R", &r}, {"S", &s}});

    const InertialParams win{3, 3};
    Signal q = inertial_rs_latch(r, s, win, init);
    const auto& tg = s.toggles();
    for (std::size_t i = s.initial() ? 1 : 0; i + 1 < tg.size(); i += 2) {
        Time width = tg[i + 1] - tg[i];
        if (width >= win.rise) continue;
        std::vector<Time> trimmed;
        for (std::size_t m = 0; m < tg.size(); ++m)
            if (m != i && m != i + 1) trimmed.push_back(tg[m]);
        Signal s_trim = Signal::from_toggles(s.initial(), trimmed, h);
        if (!(inertial_rs_latch(r, s_trim, win, init) == q))
            return make_failure(index, "short set pulses are invisible",
                                "pulse at t=" + std::to_string(tg[i]) + " mattered", h,
                                {{"R", &r}, {"S", &s}});
    }
    return std::nullopt;
}

}  // namespace

std::optional<FuzzFailure> run_fuzz_case(const FuzzConfig& config, std::uint64_t index) {
    if (config.horizon == 0) throw Error("fuzzing needs a positive horizon");
    CaseRng rng(config.seed, index);
    if (auto f = check_solver_case(rng, config, index)) return f;
    if (auto f = check_device_case(rng, config, index)) return f;
    if (auto f = check_inertial_case(rng, config, index)) return f;
    return std::nullopt;
}

}  // namespace latchcalc
