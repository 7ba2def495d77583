// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage
// error. Data goes to `out`, diagnostics to `err`.

#ifndef QQS_CLI_HPP
#define QQS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qqs {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qqs

#endif  // QQS_CLI_HPP
