#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tto/common.hpp"

namespace tto {

class Symbol;
class ScalarFunction;

/// Shortest round-trip decimal for a double.
std::string format_double(double x);
/// "re", "im i" or "re+im i" (e.g. "0.5", "0.3i", "1-2i").
std::string format_complex(cplx z);

/// Accepts "1", "-0.5", "0.3i", "-i", "1+2i", "1e-3-4.5e-2i". Throws kInvalidArgument.
cplx parse_complex(std::string_view text);
double parse_real(std::string_view text);
long long parse_integer(std::string_view text);

/// Comma-separated values; surrounding whitespace is ignored.
std::vector<std::string> split_list(std::string_view text, char sep = ',');
std::vector<cplx> parse_complex_list(std::string_view text);

/// Either a preset name or "c<k>=<value>,..." coefficients.
Symbol parse_symbol(std::string_view text);
/// Either a preset name or "poly:c0,c1,...".
ScalarFunction parse_function(std::string_view text);

}  // namespace tto
