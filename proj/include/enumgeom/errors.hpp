#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace enumgeom {

/// Base class for failures that are mathematical in nature (bad degrees,
/// degenerate presentations, ill-defined ring maps, ...).
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ContextMismatch : public MathError {
public:
    ContextMismatch() : MathError("polynomials live in different variable contexts") {}
    using MathError::MathError;
};

class DegreeError : public MathError {
public:
    using MathError::MathError;
};

class DegenerateRing : public MathError {
public:
    using MathError::MathError;
};

/// Raised when several independent checks fail; each failure is kept.
class ValidationError : public MathError {
public:
    explicit ValidationError(std::vector<std::string> failures)
        : MathError(join(failures)), failures_(std::move(failures)) {}

    const std::vector<std::string>& failures() const noexcept { return failures_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& s : items) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> failures_;
};

}  // namespace enumgeom
