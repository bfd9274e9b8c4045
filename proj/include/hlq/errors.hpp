#ifndef HLQ_ERRORS_HPP
#define HLQ_ERRORS_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlq {

// Raised when an input fails structural validation. The violation list is
// the machine-readable report; what() joins it for display.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "validation failed:";
        for (const auto& x : v) s += "\n  " + x;
        return s;
    }
    std::vector<std::string> violations_;
};

// Raised when an enumeration would exceed a configured cap. Never a silent
// wrong answer: callers either raise the cap or get this.
class size_cap_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeCaps {
    // Brute-force group isomorphism search refuses groups above this order.
    std::uint64_t group_iso_cap = 64;
    // Generic enumeration budget (functor groupoids, nerve levels, ...).
    std::uint64_t enum_cap = 1000000;

    static SizeCaps from_env() {
        SizeCaps caps;
        if (const char* s = std::getenv("HLQ_SIZE_CAP")) {
            caps.enum_cap = std::strtoull(s, nullptr, 10);
            if (caps.enum_cap == 0) caps.enum_cap = 1;
        }
        return caps;
    }
};

}  // namespace hlq

#endif
