#include "hml/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace hml {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> load_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        out[key] = val;
    }
    return out;
}

std::map<std::string, std::string> load_config_env() {
    const char* path = std::getenv("HML_CONFIG");
    if (!path || !*path) return {};
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot open config file ") + path);
    return load_config(in);
}

}  // namespace hml
