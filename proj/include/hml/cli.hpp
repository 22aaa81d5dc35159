#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hml {

// Exit codes: 0 success (and passing experiments), 1 failed experiment
// assertions, 2 usage or parse errors, 3 numerical failures
// (non-convergence, tail bound, quadrature self-check).
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace hml
