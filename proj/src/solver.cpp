// SPDX-License-Identifier: Apache-2.0

#include "latchcalc/solver.hpp"

#include <algorithm>

namespace latchcalc {

std::optional<AdmissibilityViolation> check_admissible(const Signal& u, const Signal& v) {
    Signal both = u & v;
    if (both.initial()) return AdmissibilityViolation{0, true};
    if (!both.toggles().empty()) return AdmissibilityViolation{both.toggles().front(), false};
    return std::nullopt;
}

void require_admissible(const Signal& u, const Signal& v, const std::string& stage) {
    auto violation = check_admissible(u, v);
    if (!violation) return;
    std::string where = stage.empty() ? std::string() : stage + ": ";
    std::string msg = violation->before_time_zero
        ? where + "set and reset are both 1 before time zero"
        : where + "set and reset are both 1 at t=" + std::to_string(violation->time);
    throw AdmissibilityError(msg, *violation, stage);
}

InitialConstraint initial_constraint(const Signal& u, const Signal& v) {
    Bit u0 = u.initial();
    Bit v0 = v.initial();
    if (u0 && v0)
        throw AdmissibilityError("set and reset are both 1 before time zero",
                                 AdmissibilityViolation{0, true}, "");
    if (u0) return InitialConstraint::Forced1;
    if (v0) return InitialConstraint::Forced0;
    return InitialConstraint::Free;
}

namespace {

void require_init_compatible(const Signal& u, const Signal& v, Bit init, const std::string& stage) {
    InitialConstraint c = initial_constraint(u, v);
    if (c == InitialConstraint::Forced1 && !init)
        throw InitError((stage.empty() ? std::string() : stage + ": ") +
                            "initial state 0 conflicts with the set input already 1 before time zero",
                        stage);
    if (c == InitialConstraint::Forced0 && init)
        throw InitError((stage.empty() ? std::string() : stage + ": ") +
                            "initial state 1 conflicts with the reset input already 1 before time zero",
                        stage);
}

}  // namespace

EdgeSchedule edge_schedule(const Signal& u, const Signal& v, Bit init) {
    if (u.horizon() != v.horizon())
        throw HorizonMismatchError("edge schedule needs inputs with equal horizons");
    EdgeSet ru = u.rising_edges();
    EdgeSet rv = v.rising_edges();
    const EdgeSet* cur = init ? &rv : &ru;
    const EdgeSet* nxt = init ? &ru : &rv;
    EdgeSchedule sch;
    sch.starts_with = init ? EdgeSchedule::First::RiseOfV : EdgeSchedule::First::RiseOfU;
    bool have_last = false;
    Time last = 0;
    while (true) {
        auto it = have_last ? std::upper_bound(cur->begin(), cur->end(), last) : cur->begin();
        if (it == cur->end()) break;
        last = *it;
        have_last = true;
        sch.times.push_back(last);
        std::swap(cur, nxt);
    }
    return sch;
}

LatchSolution solve(const Signal& u, const Signal& v, Bit init) {
    require_admissible(u, v);
    require_init_compatible(u, v, init, "");
    EdgeSchedule sch = edge_schedule(u, v, init);
    Signal x = Signal::from_toggles(init, sch.times, u.horizon());
    return LatchSolution{std::move(x), std::move(sch), init};
}

Signal interval_oracle(const Signal& u, const Signal& v, Bit init) {
    require_admissible(u, v);
    require_init_compatible(u, v, init, "");
    const Time h = u.horizon();
    std::vector<Bit> samples(static_cast<std::size_t>(h));
    Bit cur = init;
    for (Time t = 0; t < h; ++t) {
        if (u.eval(t))
            cur = true;
        else if (v.eval(t))
            cur = false;
        samples[static_cast<std::size_t>(t)] = cur;
    }
    return Signal::from_samples(init, samples, h);
}

const char* to_string(SystemEquation eq) {
    switch (eq) {
        case SystemEquation::Rise: return "rise";
        case SystemEquation::Fall: return "fall";
        case SystemEquation::Admissible: return "admissibility";
    }
    return "?";
}

namespace {

void require_same_horizon(const Signal& u, const Signal& v, const Signal& x) {
    if (u.horizon() != v.horizon() || u.horizon() != x.horizon())
        throw HorizonMismatchError("check needs u, v and x with equal horizons");
}

}  // namespace

bool system_holds_at(const Signal& u, const Signal& v, const Signal& x, Time t) {
    Bit xp = x.left_limit(t);
    Bit xc = x.eval(t);
    Bit uc = u.eval(t);
    Bit vc = v.eval(t);
    bool rise_ok = (!xp && xc) == (!xp && uc);
    bool fall_ok = (xp && !xc) == (xp && vc);
    return rise_ok && fall_ok && !(uc && vc);
}

bool characteristic_holds_at(const Signal& u, const Signal& v, const Signal& x, Time t) {
    Bit xp = x.left_limit(t);
    Bit xc = x.eval(t);
    Bit uc = u.eval(t);
    Bit vc = v.eval(t);
    bool set_case = xc && uc && !vc;
    bool reset_case = !xc && !uc && vc;
    bool hold_case = (xp == xc) && !uc && !vc;
    return set_case || reset_case || hold_case;
}

std::optional<SystemFailure> check_system(const Signal& u, const Signal& v, const Signal& x) {
    require_same_horizon(u, v, x);
    for (Time t = 0; t <= u.horizon(); ++t) {
        Bit xp = x.left_limit(t);
        Bit xc = x.eval(t);
        Bit uc = u.eval(t);
        Bit vc = v.eval(t);
        if ((!xp && xc) != (!xp && uc)) return SystemFailure{t, SystemEquation::Rise};
        if ((xp && !xc) != (xp && vc)) return SystemFailure{t, SystemEquation::Fall};
        if (uc && vc) return SystemFailure{t, SystemEquation::Admissible};
    }
    return std::nullopt;
}

std::optional<Time> check_characteristic(const Signal& u, const Signal& v, const Signal& x) {
    require_same_horizon(u, v, x);
    for (Time t = 0; t <= u.horizon(); ++t)
        if (!characteristic_holds_at(u, v, x, t)) return t;
    return std::nullopt;
}

}  // namespace latchcalc
