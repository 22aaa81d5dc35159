#pragma once

#include <istream>
#include <map>
#include <string>

namespace hml {

// key=value per line, '#' comments, surrounding whitespace ignored.
std::map<std::string, std::string> load_config(std::istream& in);

// Reads the file named by HML_CONFIG. Unset -> empty map; set but
// unreadable -> std::runtime_error (a usage error at the CLI).
std::map<std::string, std::string> load_config_env();

}  // namespace hml
