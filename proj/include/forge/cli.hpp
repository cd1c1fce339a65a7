#ifndef FORGE_CLI_HPP
#define FORGE_CLI_HPP

namespace forge::cli {

// Exit codes: 0 success, 1 validation failure, 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace forge::cli

#endif
