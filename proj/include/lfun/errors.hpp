#ifndef LFUN_ERRORS_HPP
#define LFUN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lfun {

// Error classes map to CLI exit codes: parse/domain problems are usage
// errors (exit 1), refusals of well-formed but excluded inputs exit 2.
enum class errc {
    parse_error,    // malformed input text
    domain_error,   // structurally invalid argument (bad modulus, bad field spec, ...)
    excluded_case,  // (n=1, trivial character): deliberately refused
    trivial_zero,   // L(chi, 1-n) = 0 exactly, log-derivative undefined
    pole            // evaluation at a pole (s=1 of the trivial character)
};

class error : public std::runtime_error {
public:
    error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    errc code() const noexcept { return code_; }

    static const char* code_name(errc c) {
        switch (c) {
            case errc::parse_error:   return "parse_error";
            case errc::domain_error:  return "domain_error";
            case errc::excluded_case: return "excluded_case";
            case errc::trivial_zero:  return "trivial_zero";
            case errc::pole:          return "pole";
        }
        return "unknown";
    }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

} // namespace lfun

#endif
