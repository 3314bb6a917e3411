#pragma once

#include <string>
#include <vector>

namespace fano {

/// Runs the command line. Exit contract: 0 success, 1 domain error (with a
/// structured error JSON on stdout), 2 usage error.
int runCli(const std::vector<std::string>& args, std::string& out, std::string& err);

int cliMain(int argc, char** argv);

}  // namespace fano
