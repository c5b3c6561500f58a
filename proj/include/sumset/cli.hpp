#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sumset/errors.hpp"
#include "sumset/intset.hpp"
#include "sumset/verifier.hpp"

namespace sumset::cli {

enum ExitCode : int {
    kOk = 0,
    kViolation = 1,
    kUsage = 2,
    kBudget = 3,
};

class ParseError : public DomainError {
public:
    ParseError(std::size_t line, const std::string& message)
        : DomainError("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Instance text: one set per line as strictly ascending non-negative
/// integers separated by spaces. Blank lines and lines starting with '#' are
/// skipped; CRLF line endings are accepted.
SetSequence parse_instance(std::string_view text);
SetSequence read_instance_file(const std::string& path);

/// Test seams for the command dispatcher.
struct Hooks {
    /// Replaces the sigma_size < bound comparison in verify.
    ViolationTest is_violation;
};

/// Runs one command line (args excludes the program name) and returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace sumset::cli
