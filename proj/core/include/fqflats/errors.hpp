#pragma once

#include <stdexcept>
#include <string>

namespace fqflats {

enum class errc {
    order_not_prime_power,
    even_characteristic,
    division_by_zero,
    dimension_mismatch,
    degenerate_span,
    invalid_dimension,
    parameter_mismatch,
    identical_flats,
    invalid_parameters,
    too_large,
    bad_subset,
    not_symmetric,
    parse_error,
    internal_check_failed,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace fqflats
