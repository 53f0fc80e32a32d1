#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sst {

/// A single validation finding.  Validators return lists of these instead of
/// throwing, so callers can collect every violation in one pass.
struct Diagnostic {
    std::string code;     // stable kebab-case identifier, e.g. "lagrange-violation"
    std::string message;  // human-readable detail

    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_code(const Diagnostics& ds, const std::string& code) {
    for (const auto& d : ds)
        if (d.code == code) return true;
    return false;
}

/// Contract violations (bad arguments, inconsistent inputs) throw this.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace sst
