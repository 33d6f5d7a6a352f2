#include "tto/parse.hpp"

#include <charconv>
#include <system_error>

#include "tto/symbol.hpp"

namespace tto {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_number(std::string_view text) {
  fail(ErrorCode::kInvalidArgument, "cannot parse number '" + std::string(text) + "'");
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return format_double(z.real());
  const std::string im = format_double(z.imag()) + "i";
  if (z.real() == 0.0) return im;
  return format_double(z.real()) + (z.imag() > 0.0 ? "+" : "") + im;
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) bad_number(text);
  return v;
}

long long parse_integer(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) bad_number(text);
  return v;
}

cplx parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) bad_number(text);
  if (text.back() != 'i') return parse_real(text);

  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the leading one and not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag_of = [&](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string_view::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split)), imag_of(body.substr(split))};
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(sep, start);
    const auto piece = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<cplx> parse_complex_list(std::string_view text) {
  std::vector<cplx> out;
  for (const auto& item : split_list(text)) out.push_back(parse_complex(item));
  if (out.empty()) fail(ErrorCode::kInvalidArgument, "empty number list");
  return out;
}

Symbol parse_symbol(std::string_view text) {
  text = trim(text);
  if (text.find('=') == std::string_view::npos) return Symbol::preset(std::string(text));
  Symbol::Coefficients coeffs;
  for (const auto& item : split_list(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || item.empty() || item.front() != 'c')
      fail(ErrorCode::kInvalidArgument, "symbol term '" + item + "' is not of the form c<k>=<value>");
    const auto k = parse_integer(std::string_view(item).substr(1, eq - 1));
    coeffs[static_cast<int>(k)] += parse_complex(std::string_view(item).substr(eq + 1));
  }
  return Symbol::trig(std::move(coeffs));
}

ScalarFunction parse_function(std::string_view text) {
  text = trim(text);
  if (text.starts_with("poly:")) return ScalarFunction::polynomial(parse_complex_list(text.substr(5)));
  return ScalarFunction::preset(std::string(text));
}

}  // namespace tto
