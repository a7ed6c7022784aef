#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nlcap {

// Plain-text run configuration: "key = value" lines with '#' comments, plus
// later "key=value" command-line overrides. Keys are validated against the
// accepting command's list; unknown keys are errors, not warnings, so stale
// configs fail loudly.
class RunConfig {
public:
    RunConfig() = default;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_text(const std::string& text);

    // Command-line override, "key=value" (spaces around '=' allowed).
    void override_entry(const std::string& keyval);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key,
                           std::optional<std::string> fallback = {}) const;
    double get_number(const std::string& key,
                      std::optional<double> fallback = {}) const;
    long get_integer(const std::string& key, std::optional<long> fallback = {}) const;
    // Comma-separated list of numbers.
    std::vector<double> get_number_list(const std::string& key) const;

    // Throws when a stored key is not in the allowed list.
    void restrict_keys(const std::vector<std::string>& allowed) const;

    // Fully-resolved settings, sorted, in config-file syntax (for echoing
    // into the output directory).
    std::string echo() const;

    const std::map<std::string, std::string>& entries() const { return kv_; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace nlcap
