// SPDX-License-Identifier: Apache-2.0
#include "raqmimo/config_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "raqmimo/channel.hpp"
#include "raqmimo/rng.hpp"

namespace raqmimo::io {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
    throw Error(Err::config, origin + ": " + msg);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// One section instance: ordered key -> raw value, with read tracking so
// unknown keys can be reported.
struct Section {
    std::string name;
    std::map<std::string, std::string> values;
    mutable std::map<std::string, bool> used;
};

struct Document {
    std::string origin;
    std::vector<Section> sections;

    const Section* find(const std::string& name) const {
        for (const auto& s : sections) {
            if (s.name == name) return &s;
        }
        return nullptr;
    }
};

double parse_number(const Document& doc, const Section& sec, const std::string& key,
                    const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos); // accepts "inf" for pure-LoS flags
        if (!trim(raw.substr(pos)).empty()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        fail(doc.origin, "[" + sec.name + "] " + key + ": cannot parse number '" + raw + "'");
    }
}

class Reader {
public:
    Reader(const Document& doc, const Section& sec) : doc_(doc), sec_(sec) {}

    // Looks up `base` under the accepted unit suffixes and returns the value
    // in linear/SI units. Exactly one spelling may be present.
    std::optional<double> get(const std::string& base, const std::string& kind) const {
        struct Form {
            const char* suffix;
            double (*convert)(double);
        };
        static const auto ident = +[](double v) { return v; };
        static const auto db = +[](double v) { return db_to_linear(v); };
        static const auto dbm = +[](double v) { return dbm_to_watts(v); };
        static const auto deg = +[](double v) { return v * M_PI / 180.0; };

        std::vector<Form> forms = {{"", ident}};
        if (kind == "gain") forms.push_back({"_db", db});
        if (kind == "power") {
            forms.push_back({"_dbw", db});
            forms.push_back({"_dbm", dbm});
        }
        if (kind == "angle") forms.push_back({"_deg", deg});

        std::optional<double> out;
        for (const auto& f : forms) {
            const std::string key = base + f.suffix;
            auto it = sec_.values.find(key);
            if (it == sec_.values.end()) continue;
            if (out) fail(doc_.origin, "[" + sec_.name + "] " + base + ": duplicate unit spellings");
            sec_.used[key] = true;
            out = f.convert(parse_number(doc_, sec_, key, it->second));
        }
        return out;
    }

    double require_value(const std::string& base, const std::string& kind) const {
        auto v = get(base, kind);
        if (!v) fail(doc_.origin, "[" + sec_.name + "] missing required key '" + base + "'");
        return *v;
    }

    double value_or(const std::string& base, const std::string& kind, double fallback) const {
        return get(base, kind).value_or(fallback);
    }

    void check_all_used() const {
        for (const auto& [key, raw] : sec_.values) {
            if (!sec_.used[key]) {
                fail(doc_.origin, "[" + sec_.name + "] unknown key '" + key + "'");
            }
        }
    }

private:
    const Document& doc_;
    const Section& sec_;
};

Document read_document(std::istream& in, const std::string& origin) {
    Document doc;
    doc.origin = origin;
    std::string line;
    Section* current = nullptr;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, "line " + std::to_string(lineno) + ": bad section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name != "user") {
                for (const auto& s : doc.sections) {
                    if (s.name == name) {
                        fail(origin, "line " + std::to_string(lineno) + ": duplicate section [" + name + "]");
                    }
                }
            }
            doc.sections.push_back({name, {}, {}});
            current = &doc.sections.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || current == nullptr) {
            fail(origin, "line " + std::to_string(lineno) + ": expected 'key = value' inside a section");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            fail(origin, "line " + std::to_string(lineno) + ": empty key or value");
        }
        if (!current->values.emplace(key, value).second) {
            fail(origin, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
    }
    return doc;
}

FrontEnd parse_raq_front_end(const Document& doc, const Section& sec, raqr::PhaseConfig& phase) {
    Reader r(doc, sec);
    const double rho = r.require_value("rho", "gain");
    const double sigma2 = r.require_value("sigma2", "power");
    phase.theta_l = r.value_or("theta_l", "angle", 0.0);
    phase.varphi = r.value_or("varphi", "angle", 0.0);
    r.check_all_used();
    return FrontEnd(rho, raqr::phase_shift(phase), sigma2);
}

FrontEnd parse_rf_front_end(const Document& doc, const Section& sec) {
    Reader r(doc, sec);
    if (sec.values.count("wavelength_m") != 0) {
        RfFrontEndSpec spec;
        spec.wavelength = r.require_value("wavelength_m", "plain");
        spec.antenna_efficiency = r.value_or("antenna_efficiency", "plain", 1.0);
        spec.antenna_gain = r.value_or("antenna_gain", "gain", 1.0);
        spec.lna_gain = r.value_or("lna_gain", "gain", 1.0);
        spec.temperature = r.value_or("temperature_k", "plain", 290.0);
        spec.bandwidth = r.require_value("bandwidth_hz", "plain");
        spec.noise_factor = r.value_or("noise_factor", "gain", 1.0);
        r.check_all_used();
        return rf_front_end(spec);
    }
    const double rho = r.require_value("rho", "gain");
    const double sigma2 = r.require_value("sigma2", "power");
    r.check_all_used();
    return FrontEnd(rho, 1.0, sigma2);
}

UserLink parse_user(const Document& doc, const Section& sec) {
    Reader r(doc, sec);
    const double beta = r.require_value("beta", "gain");
    const double rician = r.value_or("rician", "gain", 0.0);
    const double elevation = r.value_or("elevation", "angle", 0.0);
    const double azimuth = r.value_or("azimuth", "angle", 0.0);
    const double pilot_power = r.require_value("pilot_power", "power");
    const double data_power = r.require_value("data_power", "power");
    r.check_all_used();
    return UserLink(beta, rician, elevation, azimuth, pilot_power, data_power);
}

std::vector<UserLink> generate_placement(const Document& doc, const Section& sec,
                                         Scenario& meta) {
    Reader r(doc, sec);
    const int count = static_cast<int>(r.require_value("count", "plain"));
    const double radius_m = r.require_value("radius_m", "plain");
    const double altitude_km = r.require_value("altitude_km", "plain");
    const double carrier_ghz = r.require_value("carrier_ghz", "plain");
    const double rician = r.value_or("rician", "gain", 0.0);
    const double user_gain_db = r.value_or("user_gain_db", "plain", 0.0);
    const double pilot_power = r.require_value("pilot_power", "power");
    const double data_power = r.require_value("data_power", "power");
    const auto seed = static_cast<std::uint64_t>(r.value_or("seed", "plain", 1.0));
    r.check_all_used();

    if (count < 1) fail(doc.origin, "[placement] count must be >= 1");
    meta.carrier_ghz = carrier_ghz;
    meta.user_gain_db = user_gain_db;

    rng::Stream stream(seed, 0);
    std::vector<UserLink> users;
    users.reserve(count);
    const double altitude_m = altitude_km * 1000.0;
    for (int i = 0; i < count; ++i) {
        const double radial = radius_m * std::sqrt(stream.next_unit());
        const double angle = 2.0 * M_PI * stream.next_unit();
        const double distance_km = std::hypot(altitude_m, radial) / 1000.0;
        const double loss_db = channel::pathloss_db(distance_km, carrier_ghz);
        const double beta = db_to_linear(-loss_db + user_gain_db);
        const double elevation = std::atan2(radial, altitude_m);
        users.emplace_back(beta, rician, elevation, angle, pilot_power, data_power);
    }
    return users;
}

} // namespace

Scenario parse_scenario(std::istream& in, const std::string& origin) {
    const Document doc = read_document(in, origin);

    const Section* sys_sec = doc.find("system");
    if (!sys_sec) fail(origin, "missing [system] section");
    const Section* fe_sec = doc.find("front_end");
    if (!fe_sec) fail(origin, "missing [front_end] section");

    raqr::PhaseConfig phase;
    const FrontEnd fe = parse_raq_front_end(doc, *fe_sec, phase);

    std::optional<FrontEnd> rf;
    if (const Section* rf_sec = doc.find("rf_baseline")) {
        rf = parse_rf_front_end(doc, *rf_sec);
    }

    Scenario meta{SystemConfig(1, {UserLink(1, 0, 0, 0, 0, 0)}, 1, 2, 0.5, 0.0, fe), {}, 0.0, phase};

    std::vector<UserLink> users;
    for (const auto& sec : doc.sections) {
        if (sec.name == "user") users.push_back(parse_user(doc, sec));
    }
    if (const Section* placement = doc.find("placement")) {
        if (!users.empty()) fail(origin, "give either [user] sections or [placement], not both");
        users = generate_placement(doc, *placement, meta);
    }
    if (users.empty()) fail(origin, "no users configured ([user] sections or [placement])");

    Reader sys(doc, *sys_sec);
    const int sensors = static_cast<int>(sys.require_value("sensors", "plain"));
    const int pilot_length =
        static_cast<int>(sys.value_or("pilot_length", "plain", static_cast<double>(users.size())));
    const int coherence = static_cast<int>(sys.require_value("coherence", "plain"));
    const double spacing = sys.value_or("element_spacing", "plain", 0.5);
    const double lo_arrival = sys.value_or("lo_arrival", "angle", 0.0);
    if (auto carrier = sys.get("carrier_ghz", "plain")) meta.carrier_ghz = carrier;
    if (auto gain = sys.get("user_gain_db", "plain")) meta.user_gain_db = *gain;
    sys.check_all_used();

    meta.cfg = SystemConfig(sensors, std::move(users), pilot_length, coherence, spacing,
                            lo_arrival, fe, rf);
    return meta;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Err::config, path + ": cannot open config file");
    return parse_scenario(in, path);
}

} // namespace raqmimo::io
