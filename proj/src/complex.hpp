#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace isolens {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

/// Formats as `a+bi` / `a-bi` with round-trip precision.
std::string format_complex(Complex z);

/// Parses `a+bi`, `a-bi`, `bi`, `a` (exponents allowed). Throws InvalidParam.
Complex parse_complex(std::string_view text);

}  // namespace isolens
