#include "xlsim/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace xlsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

class KeyReader {
  public:
    explicit KeyReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return false;
        seen_.insert(key);
        return true;
    }
    std::string raw(const std::string& key) {
        seen_.insert(key);
        return kv_.at(key);
    }

    double number(const std::string& key) {
        const std::string v = raw(key);
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
        }
    }
    std::int64_t integer(const std::string& key) {
        const double d = number(key);
        if (d != std::floor(d)) {
            throw ConfigError("config key '" + key + "': expected an integer");
        }
        return static_cast<std::int64_t>(d);
    }

    void fail_on_unknown() const {
        for (const auto& [k, _] : kv_) {
            if (!seen_.count(k)) throw ConfigError("unknown config key '" + k + "'");
        }
    }

  private:
    std::map<std::string, std::string> kv_;
    std::set<std::string> seen_;
};

}  // namespace

std::string mode_name(Mode m) {
    return m == Mode::CrossLayer ? "cross-layer" : "ra-only";
}

std::optional<Mode> mode_from_name(const std::string& name) {
    if (name == "cross-layer") return Mode::CrossLayer;
    if (name == "ra-only") return Mode::RaOnly;
    return std::nullopt;
}

void ScenarioConfig::validate() const {
    if (duration < 0.0) throw ConfigError("duration must be >= 0");
    if (max_requests < 0) throw ConfigError("max_requests must be >= 0");
    if (static_cast<double>(max_requests) > duration) {
        throw ConfigError("max_requests must not exceed duration in seconds "
                          "(one request per second)");
    }
    if (capacity_list.empty()) throw ConfigError("capacity_list must not be empty");
    for (auto c : capacity_list) {
        if (c <= 0) throw ConfigError("capacities must be > 0");
    }
    if (!(ladder.r_min > 0.0) || !(ladder.r_min < ladder.r_max)) {
        throw InvalidLadderBounds("ladder requires 0 < r_min < r_max");
    }
    if (!(ladder.psnr_min < ladder.psnr_max)) {
        throw InvalidLadderBounds("ladder requires psnr_min < psnr_max");
    }
    if (gop.fps <= 0 || gop.gop_len <= 0 || gop.payload_bytes <= 0) {
        throw ConfigError("gop fields must be positive");
    }
    if (link.queue_capacity < 1) throw ConfigError("link.queue_capacity must be >= 1");
    if (!(link.ecn_threshold > 0.0 && link.ecn_threshold <= 1.0)) {
        throw ConfigError("link.ecn_threshold must lie in (0, 1]");
    }
    if (link.one_way_delay.usec < 0) throw ConfigError("link.one_way_delay must be >= 0");
    if (!(window > 0.0)) throw ConfigError("admission.window must be > 0");
    if (!(ewma_alpha > 0.0 && ewma_alpha <= 1.0)) {
        throw ConfigError("admission.alpha must lie in (0, 1]");
    }
    if (session_cap < 1) throw ConfigError("admission.session_cap must be >= 1");
    if (sla_variant < 0 || sla_variant >= kLadderSize) {
        throw ConfigError("admission.sla_variant must lie in [0, 30)");
    }
    if (source.downshift_step < 1) throw ConfigError("source.downshift must be >= 1");
    if (source.upshift_clean_gops < 1) throw ConfigError("source.upshift_after must be >= 1");
    if (source.initial_variant &&
        (*source.initial_variant < 0 || *source.initial_variant >= kLadderSize)) {
        throw ConfigError("source.initial_variant must lie in [0, 30) or be 'sla'");
    }
    if (!(qoe.loss_floor_psnr >= 0.0)) throw ConfigError("qoe.loss_floor_psnr must be >= 0");
    const auto& t = qoe.mos_thresholds;
    if (!(t[0] < t[1] && t[1] < t[2] && t[2] < t[3])) {
        throw ConfigError("qoe.mos_thresholds must be strictly increasing");
    }
}

AdmissionConfig ScenarioConfig::admission_for(std::int64_t capacity, Mode run_mode) const {
    AdmissionConfig a;
    a.mode = run_mode;
    a.estimator = estimator;
    a.window = SimTime::from_seconds(window);
    a.ewma_alpha = ewma_alpha;
    a.capacity = capacity;
    a.session_cap = session_cap;
    return a;
}

ScenarioConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        if (!kv.emplace(key, val).second) {
            throw ConfigError("duplicate config key '" + key + "'");
        }
    }

    ScenarioConfig cfg;
    KeyReader r(std::move(kv));

    if (r.has("mode")) {
        const std::string m = r.raw("mode");
        const auto parsed = mode_from_name(m);
        if (!parsed) throw ConfigError("mode must be 'cross-layer' or 'ra-only'");
        cfg.mode = *parsed;
    }
    if (r.has("seed")) cfg.seed = static_cast<std::uint64_t>(r.integer("seed"));
    if (r.has("duration")) cfg.duration = r.number("duration");
    if (r.has("max_requests")) cfg.max_requests = static_cast<int>(r.integer("max_requests"));
    if (r.has("capacity_list")) {
        cfg.capacity_list.clear();
        for (const auto& item : split_list(r.raw("capacity_list"))) {
            try {
                cfg.capacity_list.push_back(std::stoll(item));
            } catch (const std::exception&) {
                throw ConfigError("capacity_list: expected integers, got '" + item + "'");
            }
        }
    }
    if (r.has("ladder.r_min")) cfg.ladder.r_min = r.number("ladder.r_min");
    if (r.has("ladder.r_max")) cfg.ladder.r_max = r.number("ladder.r_max");
    if (r.has("ladder.psnr_min")) cfg.ladder.psnr_min = r.number("ladder.psnr_min");
    if (r.has("ladder.psnr_max")) cfg.ladder.psnr_max = r.number("ladder.psnr_max");
    if (r.has("gop.fps")) cfg.gop.fps = static_cast<int>(r.integer("gop.fps"));
    if (r.has("gop.gop_len")) cfg.gop.gop_len = static_cast<int>(r.integer("gop.gop_len"));
    if (r.has("gop.payload")) cfg.gop.payload_bytes = static_cast<int>(r.integer("gop.payload"));
    if (r.has("link.queue_capacity")) {
        cfg.link.queue_capacity = static_cast<int>(r.integer("link.queue_capacity"));
    }
    if (r.has("link.ecn_threshold")) cfg.link.ecn_threshold = r.number("link.ecn_threshold");
    if (r.has("link.one_way_delay")) {
        cfg.link.one_way_delay = SimTime::from_seconds(r.number("link.one_way_delay"));
    }
    if (r.has("admission.estimator")) {
        const std::string e = r.raw("admission.estimator");
        if (e == "instantaneous") {
            cfg.estimator = Estimator::Instantaneous;
        } else if (e == "window-average") {
            cfg.estimator = Estimator::WindowAverage;
        } else {
            throw ConfigError("admission.estimator must be 'instantaneous' or 'window-average'");
        }
    }
    if (r.has("admission.window")) cfg.window = r.number("admission.window");
    if (r.has("admission.alpha")) cfg.ewma_alpha = r.number("admission.alpha");
    if (r.has("admission.session_cap")) {
        cfg.session_cap = static_cast<int>(r.integer("admission.session_cap"));
    }
    if (r.has("admission.sla_variant")) {
        cfg.sla_variant = static_cast<int>(r.integer("admission.sla_variant"));
    }
    if (r.has("source.downshift")) {
        cfg.source.downshift_step = static_cast<int>(r.integer("source.downshift"));
    }
    if (r.has("source.upshift_after")) {
        cfg.source.upshift_clean_gops = static_cast<int>(r.integer("source.upshift_after"));
    }
    if (r.has("source.initial_variant")) {
        const std::string v = r.raw("source.initial_variant");
        if (v == "sla") {
            cfg.source.initial_variant.reset();
        } else {
            cfg.source.initial_variant = static_cast<int>(r.integer("source.initial_variant"));
        }
    }
    if (r.has("qoe.loss_floor_psnr")) cfg.qoe.loss_floor_psnr = r.number("qoe.loss_floor_psnr");
    if (r.has("qoe.mos_thresholds")) {
        const auto items = split_list(r.raw("qoe.mos_thresholds"));
        if (items.size() != 4) {
            throw ConfigError("qoe.mos_thresholds: expected four cut points");
        }
        for (std::size_t i = 0; i < 4; ++i) {
            try {
                cfg.qoe.mos_thresholds[i] = std::stod(items[i]);
            } catch (const std::exception&) {
                throw ConfigError("qoe.mos_thresholds: expected numbers");
            }
        }
    }
    if (r.has("verify_determinism")) {
        const std::string v = r.raw("verify_determinism");
        if (v == "true" || v == "1") {
            cfg.verify_determinism = true;
        } else if (v == "false" || v == "0") {
            cfg.verify_determinism = false;
        } else {
            throw ConfigError("verify_determinism must be true or false");
        }
    }

    r.fail_on_unknown();
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "mode = " << mode_name(cfg.mode) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "duration = " << cfg.duration << "\n";
    out << "max_requests = " << cfg.max_requests << "\n";
    out << "capacity_list =";
    for (auto c : cfg.capacity_list) out << " " << c;
    out << "\n";
    out << "ladder.r_min = " << cfg.ladder.r_min << "\n";
    out << "ladder.r_max = " << cfg.ladder.r_max << "\n";
    out << "ladder.psnr_min = " << cfg.ladder.psnr_min << "\n";
    out << "ladder.psnr_max = " << cfg.ladder.psnr_max << "\n";
    out << "gop.fps = " << cfg.gop.fps << "\n";
    out << "gop.gop_len = " << cfg.gop.gop_len << "\n";
    out << "gop.payload = " << cfg.gop.payload_bytes << "\n";
    out << "link.queue_capacity = " << cfg.link.queue_capacity << "\n";
    out << "link.ecn_threshold = " << cfg.link.ecn_threshold << "\n";
    out << "link.one_way_delay = " << cfg.link.one_way_delay.seconds() << "\n";
    out << "admission.estimator = "
        << (cfg.estimator == Estimator::Instantaneous ? "instantaneous" : "window-average")
        << "\n";
    out << "admission.window = " << cfg.window << "\n";
    out << "admission.alpha = " << cfg.ewma_alpha << "\n";
    out << "admission.session_cap = " << cfg.session_cap << "\n";
    out << "admission.sla_variant = " << cfg.sla_variant << "\n";
    out << "source.downshift = " << cfg.source.downshift_step << "\n";
    out << "source.upshift_after = " << cfg.source.upshift_clean_gops << "\n";
    out << "source.initial_variant = ";
    if (cfg.source.initial_variant) {
        out << *cfg.source.initial_variant;
    } else {
        out << "sla";
    }
    out << "\n";
    out << "qoe.loss_floor_psnr = " << cfg.qoe.loss_floor_psnr << "\n";
    out << "qoe.mos_thresholds =";
    for (double t : cfg.qoe.mos_thresholds) out << " " << t;
    out << "\n";
    out << "verify_determinism = " << (cfg.verify_determinism ? "true" : "false") << "\n";
    return out.str();
}

}  // namespace xlsim
