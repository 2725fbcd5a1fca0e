#include "narrevo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace narrevo {

using nlohmann::json;

SimParams Overrides::apply(SimParams base) const {
    if (p) base.menu.true_p = *p;
    if (rho2) base.menu.rho2 = *rho2;
    if (tau) base.tau = *tau;
    if (n) base.n = *n;
    if (delta) base.delta = *delta;
    return base;
}

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& what) {
    throw ValidationError("config key '" + key + "': " + what);
}

double get_real(const json& j, const std::string& key) {
    if (!j.is_number()) bad_key(key, "expected a number");
    return j.get<double>();
}

long long get_integer(const json& j, const std::string& key) {
    if (!j.is_number_integer()) bad_key(key, "expected an integer");
    return j.get<long long>();
}

int get_int(const json& j, const std::string& key) {
    const long long v = get_integer(j, key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad_key(key, "out of range");
    return static_cast<int>(v);
}

Overrides parse_overrides(const json& j, std::size_t index) {
    const std::string where = "overrides[" + std::to_string(index) + "]";
    if (!j.is_object()) bad_key(where, "expected an object");
    Overrides o;
    for (const auto& [key, value] : j.items()) {
        const std::string path = where + "." + key;
        if (key == "p") o.p = get_real(value, path);
        else if (key == "rho2") o.rho2 = get_real(value, path);
        else if (key == "tau") o.tau = get_int(value, path);
        else if (key == "n") o.n = get_int(value, path);
        else if (key == "delta") o.delta = get_real(value, path);
        else bad_key(path, "unknown key");
    }
    return o;
}

json overrides_to_json(const Overrides& o) {
    json j = json::object();
    if (o.p) j["p"] = *o.p;
    if (o.rho2) j["rho2"] = *o.rho2;
    if (o.tau) j["tau"] = *o.tau;
    if (o.n) j["n"] = *o.n;
    if (o.delta) j["delta"] = *o.delta;
    return j;
}

} // namespace

ExperimentConfig parse_config_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("config root must be a JSON object");
    if (doc.contains("artifact") && doc.contains("config")) return parse_config_json(doc.at("config"));

    ExperimentConfig c;
    for (const auto& [key, v] : doc.items()) {
        if (key == "n") c.base.n = get_int(v, key);
        else if (key == "T") c.base.T = get_int(v, key);
        else if (key == "tau") c.base.tau = get_int(v, key);
        else if (key == "p") c.base.menu.true_p = get_real(v, key);
        else if (key == "rho1") c.base.menu.rho1 = get_real(v, key);
        else if (key == "rho2") c.base.menu.rho2 = get_real(v, key);
        else if (key == "mu0") {
            const double mu0 = get_real(v, key);
            if (!(mu0 >= 0.0 && mu0 <= 1.0)) bad_key(key, "must lie in [0,1]");
            c.base.mu0 = Belief(mu0);
        } else if (key == "delta") c.base.delta = get_real(v, key);
        else if (key == "q_grid") {
            if (!v.is_array()) bad_key(key, "expected an array of numbers");
            c.q_grid.clear();
            for (const auto& q : v) c.q_grid.push_back(get_real(q, key));
        } else if (key == "laws") {
            if (!v.is_array()) bad_key(key, "expected an array of law names");
            c.laws.clear();
            for (const auto& law : v) {
                if (!law.is_string()) bad_key(key, "expected law names");
                try {
                    c.laws.push_back(law_from_string(law.get<std::string>()));
                } catch (const ValidationError& e) {
                    bad_key(key, e.what());
                }
            }
        } else if (key == "reps") c.reps = get_int(v, key);
        else if (key == "master_seed") {
            if (!v.is_number_unsigned()) bad_key(key, "expected a non-negative 64-bit integer");
            c.master_seed = v.get<std::uint64_t>();
        } else if (key == "overrides") {
            if (!v.is_array()) bad_key(key, "expected an array of objects");
            c.overrides.clear();
            for (std::size_t i = 0; i < v.size(); ++i) c.overrides.push_back(parse_overrides(v[i], i));
            if (c.overrides.empty()) c.overrides.emplace_back();
        } else if (key == "emit_timeseries") {
            if (!v.is_boolean()) bad_key(key, "expected true or false");
            c.emit_timeseries = v.get<bool>();
        } else if (key == "output_dir") {
            if (!v.is_string()) bad_key(key, "expected a path string");
            c.output_dir = v.get<std::string>();
        } else if (key == "persistent_redraw") {
            if (!v.is_string()) bad_key(key, "expected a string");
            try {
                c.base.persistent_redraw = redraw_from_string(v.get<std::string>());
            } catch (const ValidationError& e) {
                bad_key(key, e.what());
            }
        } else bad_key(key, "unknown key");
    }
    validate_config(c);
    return c;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
        const auto line_start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
        const std::size_t column = line_start == std::string::npos ? offset + 1 : offset - line_start;
        throw ValidationError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(column) +
                              ": JSON parse error: " + e.what());
    }
    return parse_config_json(doc);
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["n"] = c.base.n;
    j["T"] = c.base.T;
    j["tau"] = c.base.tau;
    j["p"] = c.base.menu.true_p;
    j["rho1"] = c.base.menu.rho1;
    j["rho2"] = c.base.menu.rho2;
    j["mu0"] = c.base.mu0.value();
    j["delta"] = c.base.delta;
    j["persistent_redraw"] = std::string(to_string(c.base.persistent_redraw));
    j["q_grid"] = c.q_grid;
    j["laws"] = json::array();
    for (auto law : c.laws) j["laws"].push_back(std::string(to_string(law)));
    j["reps"] = c.reps;
    j["master_seed"] = c.master_seed;
    j["overrides"] = json::array();
    for (const auto& o : c.overrides) j["overrides"].push_back(overrides_to_json(o));
    j["emit_timeseries"] = c.emit_timeseries;
    j["output_dir"] = c.output_dir.string();
    return j;
}

std::vector<Cell> expand_cells(const ExperimentConfig& config) {
    std::vector<LawOfMotion> laws = config.laws;
    std::sort(laws.begin(), laws.end());
    laws.erase(std::unique(laws.begin(), laws.end()), laws.end());
    std::vector<double> grid = config.q_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<Cell> cells;
    for (auto law : laws)
        for (std::size_t o = 0; o < config.overrides.size(); ++o)
            for (double q : grid) {
                Cell cell;
                cell.index = cells.size();
                cell.law = law;
                cell.override_index = o;
                cell.q = q;
                cell.params = config.overrides[o].apply(config.base);
                cell.params.law = law;
                cell.params.q = q;
                cells.push_back(cell);
            }
    return cells;
}

void validate_config(const ExperimentConfig& config) {
    if (config.reps < 1) throw ValidationError("config key 'reps': must be at least 1");
    if (config.q_grid.empty()) throw ValidationError("config key 'q_grid': must not be empty");
    for (double q : config.q_grid)
        if (!(q > 0.0 && q <= 1.0)) throw ValidationError("config key 'q_grid': values must lie in (0,1]");
    if (config.laws.empty()) throw ValidationError("config key 'laws': must not be empty");
    if (config.overrides.empty()) throw ValidationError("config key 'overrides': must not be empty");
    for (const auto& cell : expand_cells(config)) {
        try {
            validate_params(cell.params);
        } catch (const ValidationError& e) {
            std::ostringstream msg;
            msg << "cell " << cell.index << " (law=" << to_string(cell.law) << ", q=" << cell.q
                << ", overrides[" << cell.override_index << "]): " << e.what();
            throw ValidationError(msg.str());
        }
    }
}

std::uint64_t cell_seed_base(std::uint64_t master_seed, std::size_t cell_index) noexcept {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(static_cast<std::uint64_t>(cell_index)));
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t cell_index, std::size_t rep_index) noexcept {
    return splitmix64(cell_seed_base(master_seed, cell_index) ^ splitmix64(~static_cast<std::uint64_t>(rep_index)));
}

namespace {

struct MeanSd {
    double mean;
    double sd;
};

// Sorting first makes the floating-point sums independent of input order.
MeanSd mean_sd(std::vector<double> values) {
    if (values.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return {mean, 0.0};
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(), [mean](double v) { return (v - mean) * (v - mean); });
    std::sort(sq.begin(), sq.end());
    double ss = 0.0;
    for (double s : sq) ss += s;
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

} // namespace

std::array<KindAggregate, kKindCount> aggregate_replications(std::span<const ReplicationResult> reps) {
    std::array<KindAggregate, kKindCount> out{};
    for (std::size_t k = 0; k < kKindCount; ++k) {
        std::vector<double> shares, mses;
        for (const auto& r : reps) {
            shares.push_back(r.final_shares[k]);
            if (r.final_mse[k]) mses.push_back(*r.final_mse[k]);
        }
        const auto s = mean_sd(std::move(shares));
        const auto m = mean_sd(std::move(mses));
        out[k] = {s.mean, s.sd, m.mean, m.sd};
    }
    return out;
}

unsigned resolve_workers(std::optional<unsigned> requested) {
    if (requested && *requested > 0) return *requested;
    if (const char* env = std::getenv("NARREVO_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentRun run_experiment(const ExperimentConfig& config, unsigned workers) {
    validate_config(config);
    const auto cells = expand_cells(config);
    const auto reps = static_cast<std::size_t>(config.reps);

    ExperimentRun run;
    run.replications.assign(cells.size(), std::vector<ReplicationResult>(reps));

    const std::size_t jobs = cells.size() * reps;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    RunOptions options;
    options.record_epochs = config.emit_timeseries;

    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t c = job / reps;
            const std::size_t r = job % reps;
            try {
                run.replications[c][r] =
                    run_replication(cells[c].params, derive_seed(config.master_seed, c, r), options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = jobs;
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    run.aggregate.reps = config.reps;
    run.aggregate.master_seed = config.master_seed;
    for (std::size_t c = 0; c < cells.size(); ++c)
        run.aggregate.cells.push_back({cells[c], aggregate_replications(run.replications[c])});
    return run;
}

} // namespace narrevo
