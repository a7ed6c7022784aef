#include "nlcap/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlcap {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

void parse_line(std::map<std::string, std::string>& kv, const std::string& raw,
                int lineno) {
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) return;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected \"key = value\"");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key))
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": bad key \"" + key + "\"");
    if (value.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": empty value for \"" + key + "\"");
    kv[key] = value;
}

} // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) parse_line(cfg.kv_, line, ++lineno);
    return cfg;
}

void RunConfig::override_entry(const std::string& keyval) {
    parse_line(kv_, keyval, 0);
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string RunConfig::get_string(const std::string& key,
                                  std::optional<std::string> fallback) const {
    const auto it = kv_.find(key);
    if (it != kv_.end()) return it->second;
    if (fallback) return *fallback;
    throw std::invalid_argument("config: missing required key \"" + key + "\"");
}

double RunConfig::get_number(const std::string& key,
                             std::optional<double> fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) {
        if (fallback) return *fallback;
        throw std::invalid_argument("config: missing required key \"" + key + "\"");
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key \"" + key + "\" is not a number");
    }
    if (pos != it->second.size())
        throw std::invalid_argument("config: key \"" + key + "\" is not a number");
    return v;
}

long RunConfig::get_integer(const std::string& key,
                            std::optional<long> fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) {
        if (fallback) return *fallback;
        throw std::invalid_argument("config: missing required key \"" + key + "\"");
    }
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(it->second, &pos, 10);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key \"" + key + "\" is not an integer");
    }
    if (pos != it->second.size())
        throw std::invalid_argument("config: key \"" + key + "\" is not an integer");
    return v;
}

std::vector<double> RunConfig::get_number_list(const std::string& key) const {
    const std::string raw = get_string(key);
    std::vector<double> out;
    std::istringstream in(raw);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw std::invalid_argument("config: empty entry in list \"" + key + "\"");
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad number in list \"" + key + "\"");
        }
        if (pos != item.size())
            throw std::invalid_argument("config: bad number in list \"" + key + "\"");
        out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("config: empty list for \"" + key + "\"");
    return out;
}

void RunConfig::restrict_keys(const std::vector<std::string>& allowed) const {
    for (const auto& [key, value] : kv_) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw std::invalid_argument("config: unknown key \"" + key + "\"");
    }
}

std::string RunConfig::echo() const {
    std::ostringstream out;
    for (const auto& [key, value] : kv_) out << key << " = " << value << "\n";
    return out.str();
}

} // namespace nlcap
