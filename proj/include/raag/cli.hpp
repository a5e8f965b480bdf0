#ifndef RAAG_CLI_HPP
#define RAAG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace raag {

// Runs one workbench command and writes its report: JSON on --json, plain
// text otherwise.  Returns the process exit code: 0 success, 1 a check or
// verification failed, 2 unparseable input, 3 precondition violated.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace raag

#endif
