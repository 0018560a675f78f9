// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "latchcalc/devices.hpp"
#include "latchcalc/fuzz.hpp"
#include "latchcalc/solver.hpp"
#include "latchcalc/waveform.hpp"

namespace lc = latchcalc;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lc::Error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lc::Error("cannot open output file '" + path + "'");
    out << data;
}

void emit_doc(const lc::WaveformDoc& doc, const std::string& format, const std::string& out_path) {
    write_output(out_path, format == "vcd" ? lc::emit_vcd(doc) : lc::format_waveforms(doc));
}

const lc::Signal& need(const lc::WaveformDoc& doc, const char* name) {
    const lc::Signal* s = doc.find(name);
    if (!s) throw lc::Error(std::string("document must provide signal '") + name + "'");
    return *s;
}

struct SolveOpts {
    std::string input;
    int init = 0;
    std::string format = "text";
    std::string output;
};

int run_solve(const SolveOpts& o) {
    lc::WaveformDoc doc = lc::parse_waveforms(read_input(o.input));
    const lc::Signal& u = need(doc, "u");
    const lc::Signal& v = need(doc, "v");
    lc::LatchSolution sol = lc::solve(u, v, o.init != 0);
    doc.add("x", sol.x);
    emit_doc(doc, o.format, o.output);
    return 0;
}

struct DeviceOpts {
    std::string kind;
    std::string input;
    int init_q = 0;
    int init_p = 0;
    lc::Time dr = 0;
    lc::Time df = 0;
    std::string format = "text";
    std::string output;
};

int run_device(const DeviceOpts& o) {
    lc::WaveformDoc doc = lc::parse_waveforms(read_input(o.input));
    const bool iq = o.init_q != 0;
    const bool ip = o.init_p != 0;

    if (o.kind == "c") {
        std::vector<lc::Signal> ins;
        for (const auto& [name, s] : doc.entries) ins.push_back(s);
        doc.add("Q", lc::c_element(ins, iq));
    } else if (o.kind == "rs") {
        doc.add("Q", lc::rs_latch(need(doc, "R"), need(doc, "S"), iq));
    } else if (o.kind == "crs") {
        doc.add("Q", lc::clocked_rs(need(doc, "R"), need(doc, "S"), need(doc, "C"), iq));
    } else if (o.kind == "dlatch") {
        doc.add("Q", lc::d_latch(need(doc, "D"), need(doc, "C"), iq));
    } else if (o.kind == "irs") {
        doc.add("Q", lc::inertial_rs_latch(need(doc, "R"), need(doc, "S"),
                                           lc::InertialParams{o.dr, o.df}, iq));
    } else {
        lc::DeviceTrace tr;
        if (o.kind == "edgers")
            tr = lc::edge_rs_ff(need(doc, "R"), need(doc, "S"), need(doc, "C"), ip, iq);
        else if (o.kind == "dff")
            tr = lc::d_ff(need(doc, "D"), need(doc, "C"), ip, iq);
        else if (o.kind == "jk")
            tr = lc::jk_ff(need(doc, "J"), need(doc, "K"), need(doc, "C"), ip, iq);
        else if (o.kind == "jk3")
            tr = lc::jk_ff_variant3(need(doc, "J"), need(doc, "K"), need(doc, "C"), ip, iq);
        else
            tr = lc::t_ff(need(doc, "C"), ip, iq);
        doc.add("Q", tr.q);
        doc.add("P", *tr.p);
    }
    emit_doc(doc, o.format, o.output);
    return 0;
}

struct CheckOpts {
    std::string input;
};

int run_check(const CheckOpts& o) {
    lc::WaveformDoc doc = lc::parse_waveforms(read_input(o.input));
    const lc::Signal& u = need(doc, "u");
    const lc::Signal& v = need(doc, "v");
    const lc::Signal& x = need(doc, "x");
    auto sys = lc::check_system(u, v, x);
    auto chr = lc::check_characteristic(u, v, x);

    std::string out;
    if (sys)
        out += "system: fails at t=" + std::to_string(sys->time) + " (" +
               lc::to_string(sys->equation) + ")\n";
    else
        out += "system: holds\n";
    if (chr)
        out += "characteristic: fails at t=" + std::to_string(*chr) + "\n";
    else
        out += "characteristic: holds\n";
    bool agree = sys.has_value() == chr.has_value() && (!sys || sys->time == *chr);
    out += agree ? "agreement: ok\n" : "agreement: MISMATCH\n";
    std::cout << out;
    return (sys || chr || !agree) ? 1 : 0;
}

struct FuzzOpts {
    std::uint64_t seed = 0;
    std::uint64_t cases = 0;
    std::uint32_t max_toggles = 8;
    lc::Time horizon = 64;
};

int run_fuzz(const FuzzOpts& o) {
    lc::FuzzConfig cfg{o.seed, o.cases, o.max_toggles, o.horizon};
    for (std::uint64_t i = 0; i < cfg.cases; ++i) {
        if (auto f = lc::run_fuzz_case(cfg, i)) {
            std::cerr << "case " << f->case_index << ": property '" << f->property << "' failed"
                      << (f->detail.empty() ? "" : ": " + f->detail) << "\n";
            std::cout << lc::format_waveforms(f->doc);
            return 1;
        }
    }
    std::cout << "fuzz: " << cfg.cases << " cases ok (seed " << cfg.seed << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ideal latches and flip-flops over piecewise-constant boolean signals"};
    app.require_subcommand(1);

    SolveOpts solve_opts;
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "solve the set/reset feedback system for signals u and v");
    solve_cmd->add_option("--input", solve_opts.input, "waveform document, or - for stdin")
        ->required();
    solve_cmd->add_option("--init", solve_opts.init, "state before time zero")
        ->required()
        ->check(CLI::Range(0, 1));
    solve_cmd->add_option("--format", solve_opts.format, "output format")
        ->check(CLI::IsMember({"text", "vcd"}));
    solve_cmd->add_option("--output", solve_opts.output, "output file, default stdout");

    DeviceOpts device_opts;
    CLI::App* device_cmd = app.add_subcommand("device", "run one device on named input signals");
    device_cmd->add_option("kind", device_opts.kind, "device kind")
        ->required()
        ->check(CLI::IsMember({"c", "rs", "crs", "dlatch", "edgers", "dff", "jk", "jk3", "tff",
                               "irs"}));
    device_cmd->add_option("--input", device_opts.input, "waveform document, or - for stdin")
        ->required();
    device_cmd->add_option("--init-q", device_opts.init_q, "state before time zero")
        ->check(CLI::Range(0, 1));
    device_cmd->add_option("--init-p", device_opts.init_p, "internal state before time zero")
        ->check(CLI::Range(0, 1));
    device_cmd->add_option("--dr", device_opts.dr, "set window width in ticks (irs)");
    device_cmd->add_option("--df", device_opts.df, "reset window width in ticks (irs)");
    device_cmd->add_option("--format", device_opts.format, "output format")
        ->check(CLI::IsMember({"text", "vcd"}));
    device_cmd->add_option("--output", device_opts.output, "output file, default stdout");

    CheckOpts check_opts;
    CLI::App* check_cmd =
        app.add_subcommand("check", "check a document with u, v and x against both latch forms");
    check_cmd->add_option("--input", check_opts.input, "waveform document, or - for stdin")
        ->required();

    FuzzOpts fuzz_opts;
    CLI::App* fuzz_cmd =
        app.add_subcommand("fuzz", "run the randomized property suite with a fixed seed");
    fuzz_cmd->add_option("--seed", fuzz_opts.seed, "random seed")->required();
    fuzz_cmd->add_option("--cases", fuzz_opts.cases, "number of cases")->required();
    fuzz_cmd->add_option("--max-toggles", fuzz_opts.max_toggles, "toggle budget per signal")
        ->required();
    fuzz_cmd->add_option("--horizon", fuzz_opts.horizon, "window length in ticks")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_opts);
        if (device_cmd->parsed()) return run_device(device_opts);
        if (check_cmd->parsed()) return run_check(check_opts);
        if (fuzz_cmd->parsed()) return run_fuzz(fuzz_opts);
    } catch (const lc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
