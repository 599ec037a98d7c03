#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mm/analysis.hpp"
#include "mm/equivalence.hpp"
#include "mm/sim.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) mm::fail(mm::Err::IoFailure, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) mm::fail(mm::Err::IoFailure, "cannot write " + path);
    out << text;
    if (!out) mm::fail(mm::Err::IoFailure, "short write to " + path);
}

// Advisory write lock: one writer per state file.
struct FileLock {
    int fd = -1;
    explicit FileLock(const std::string& path) {
        fd = ::open(path.c_str(), O_RDONLY);
        if (fd >= 0 && ::flock(fd, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd);
            fd = -1;
            mm::fail(mm::Err::IoFailure, "state file is locked by another process: " + path);
        }
    }
    ~FileLock() {
        if (fd >= 0) {
            ::flock(fd, LOCK_UN);
            ::close(fd);
        }
    }
};

std::string state_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("MM_STATE")) return env;
    mm::fail(mm::Err::InvalidParameter, "no state file: pass --state or set MM_STATE");
}

std::vector<double> parse_vector(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            mm::fail(mm::Err::InvalidParameter, "bad number in vector: '" + item + "'");
        }
    }
    if (out.empty()) mm::fail(mm::Err::InvalidParameter, "empty vector");
    return out;
}

json trade_record_json(const mm::TradeRecord& rec) {
    json j;
    j["delta"] = rec.delta.q;
    j["payment"] = rec.payment;
    j["prices_before"] = rec.prices_before;
    j["prices_after"] = rec.prices_after;
    j["seq"] = rec.seq;
    return j;
}

void require_open(const mm::MarketState& s) {
    if (s.resolved()) mm::fail(mm::Err::MarketResolved, "market is resolved; no further trades");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-loss market maker: quoting, trading, equivalence, analysis"};
    app.require_subcommand(1);

    std::string state_flag, spec_path, delta_csv, belief_csv, at_csv, a_path, b_path, config_path;
    int outcome = -1;
    std::size_t liq_index = 0;
    double qmax = 0.0, tol = 1e-8;
    int samples = 100, curve_samples = 201;
    bool force = false;

    auto add_state = [&](CLI::App* c) { c->add_option("--state", state_flag, "state file path (or MM_STATE)"); };

    auto* init = app.add_subcommand("init", "create a state file from a maker spec");
    init->add_option("--spec", spec_path, "maker spec JSON file")->required();
    init->add_flag("--force", force, "overwrite an existing state file");
    add_state(init);

    auto* quote = app.add_subcommand("quote", "print current prices");
    add_state(quote);

    auto* trade_cmd = app.add_subcommand("trade", "apply a trade");
    trade_cmd->add_option("--delta", delta_csv, "quantity delta, comma separated");
    trade_cmd->add_option("--to-belief", belief_csv, "move prices to this belief");
    add_state(trade_cmd);

    auto* resolve = app.add_subcommand("resolve", "settle the market on an outcome");
    resolve->add_option("--outcome", outcome, "winning outcome index (0-based)")->required();
    add_state(resolve);

    auto* loss = app.add_subcommand("loss", "worst-case loss and liquidity bound report");
    add_state(loss);

    auto* liq = app.add_subcommand("liquidity", "instantaneous liquidity at a state");
    liq->add_option("--at", at_csv, "quantity vector, comma separated")->required();
    liq->add_option("--i", liq_index, "outcome index");
    add_state(liq);

    auto* curve = app.add_subcommand("curve", "liquidity curve CSV along the first axis");
    curve->add_option("--qmax", qmax, "grid upper end")->required();
    curve->add_option("--samples", curve_samples, "grid points");
    add_state(curve);

    auto* equiv = app.add_subcommand("equiv", "behavioral equivalence of two maker specs");
    equiv->add_option("--a", a_path, "first maker spec JSON file")->required();
    equiv->add_option("--b", b_path, "second maker spec JSON file")->required();
    equiv->add_option("--samples", samples, "trade sequences");
    equiv->add_option("--tol", tol, "pass tolerance");

    auto* sim = app.add_subcommand("simulate", "trader-population simulation");
    sim->add_option("--config", config_path, "simulation config JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (init->parsed()) {
            const std::string path = state_path(state_flag);
            const auto spec = mm::spec_from_json(read_file(spec_path));
            if (!force && std::ifstream(path).good())
                mm::fail(mm::Err::IoFailure, "state file exists (use --force): " + path);
            const auto cf = spec.to_cost_function();
            const auto state = mm::MarketState::fresh(cf);
            write_file(path, mm::state_save(state, spec));
            json j;
            j["state"] = path;
            j["outcomes"] = cf.outcomes();
            j["prices"] = cf.prices(state.quantities).entries();
            std::cout << j.dump() << "\n";
        } else if (quote->parsed()) {
            const std::string path = state_path(state_flag);
            auto [state, spec] = mm::state_load(read_file(path));
            const auto cf = spec.to_cost_function();
            json j;
            j["prices"] = cf.prices(state.quantities).entries();
            j["collected"] = state.collected;
            j["resolved_outcome"] = state.resolved_outcome;
            std::cout << j.dump() << "\n";
        } else if (trade_cmd->parsed()) {
            if (delta_csv.empty() == belief_csv.empty())
                mm::fail(mm::Err::InvalidParameter, "pass exactly one of --delta / --to-belief");
            const std::string path = state_path(state_flag);
            FileLock lock(path);
            auto [state, spec] = mm::state_load(read_file(path));
            require_open(state);
            const auto cf = spec.to_cost_function();
            std::pair<mm::MarketState, mm::TradeRecord> res =
                delta_csv.empty()
                    ? mm::move_to_belief(cf, state,
                                         mm::ProbVector::validate(parse_vector(belief_csv), true))
                    : mm::trade(cf, state, mm::QuantityVector(parse_vector(delta_csv)));
            write_file(path, mm::state_save(res.first, spec));
            std::cout << trade_record_json(res.second).dump() << "\n";
        } else if (resolve->parsed()) {
            const std::string path = state_path(state_flag);
            FileLock lock(path);
            auto [state, spec] = mm::state_load(read_file(path));
            require_open(state);
            if (outcome < 0 || static_cast<std::size_t>(outcome) >= spec.outcomes())
                mm::fail(mm::Err::InvalidParameter, "outcome index out of range");
            state.resolved_outcome = outcome;
            const double payout = state.quantities[static_cast<std::size_t>(outcome)];
            const auto wealth = mm::wealth_from_state(state);
            write_file(path, mm::state_save(state, spec));
            json j;
            j["outcome"] = outcome;
            j["payout"] = payout;  // winning shares redeem at 1 each
            j["maker_pnl"] = wealth[static_cast<std::size_t>(outcome)];
            std::cout << j.dump() << "\n";
        } else if (loss->parsed()) {
            const std::string path = state_path(state_flag);
            auto [state, spec] = mm::state_load(read_file(path));
            std::cout << mm::theorem9_check(spec.to_cost_function()).to_json() << "\n";
        } else if (liq->parsed()) {
            const std::string path = state_path(state_flag);
            auto [state, spec] = mm::state_load(read_file(path));
            const auto cf = spec.to_cost_function();
            const mm::QuantityVector q(parse_vector(at_csv));
            json j;
            j["at"] = q.q;
            j["i"] = liq_index;
            j["liquidity"] = mm::instantaneous_liquidity(cf, q, liq_index);
            std::cout << j.dump() << "\n";
        } else if (curve->parsed()) {
            const std::string path = state_path(state_flag);
            auto [state, spec] = mm::state_load(read_file(path));
            std::cout << mm::figure2_curve(spec.to_cost_function(), qmax, curve_samples).to_csv();
        } else if (equiv->parsed()) {
            const auto a = mm::spec_from_json(read_file(a_path));
            const auto b = mm::spec_from_json(read_file(b_path));
            const auto rep = mm::verify_behavioral_equivalence(a, b, samples, tol);
            std::cout << rep.to_json(a_path + " vs " + b_path) << "\n";
            return rep.pass ? 0 : 1;
        } else if (sim->parsed()) {
            const auto cfg = mm::sim_config_from_json(read_file(config_path));
            std::cout << mm::simulate(cfg).to_json() << "\n";
        }
    } catch (const mm::MarketError& e) {
        json j;
        j["error"] = mm::err_name(e.code());
        j["message"] = e.what();
        j["exit"] = mm::err_category(e.code());
        std::cout << j.dump() << "\n";
        return mm::err_category(e.code());
    }
    return 0;
}
