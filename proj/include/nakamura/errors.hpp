#pragma once

#include <stdexcept>
#include <string>

namespace nakamura {

enum class errc {
    not_unimodular,
    not_diagonalizable,
    non_positive_eigenvalue,
    complex_eigenvalue,
    torus_factor,
    bad_diagonalizer,
    tau_mismatch,
    bad_parameter,
    all_sums_zero,
    resonant_tau_unsupported,
    precision_exhausted,
    sampling_exhausted,
    no_witness,
    symbolic_non_zero,
    bad_input,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_unimodular: return "NotUnimodular";
        case errc::not_diagonalizable: return "NotDiagonalizable";
        case errc::non_positive_eigenvalue: return "NonPositiveEigenvalue";
        case errc::complex_eigenvalue: return "ComplexEigenvalue";
        case errc::torus_factor: return "TorusFactor";
        case errc::bad_diagonalizer: return "BadDiagonalizer";
        case errc::tau_mismatch: return "TauMismatch";
        case errc::bad_parameter: return "BadParameter";
        case errc::all_sums_zero: return "AllSumsZero";
        case errc::resonant_tau_unsupported: return "ResonantTauUnsupported";
        case errc::precision_exhausted: return "PrecisionExhausted";
        case errc::sampling_exhausted: return "SamplingExhausted";
        case errc::no_witness: return "NoWitness";
        case errc::symbolic_non_zero: return "SymbolicNonZero";
        case errc::bad_input: return "BadInput";
    }
    return "Unknown";
}

// Single exception type; `code` selects the failure class and `detail`
// carries context (e.g. the torus-factor count, the offending field).
class error : public std::runtime_error {
public:
    error(errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& detail) { throw error(code, detail); }

} // namespace nakamura
