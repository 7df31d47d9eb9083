#pragma once

#include <string>
#include <string_view>

#include "smith/factor.hpp"
#include "smith/matpoly.hpp"

namespace smith {

/// Text format:
///   matpoly <rows> <cols> over Q|QI
///   entry <i> <j>: <c0> <c1> ... <cd>
/// 1-based indices, ascending coefficients, missing entries are zero.
/// Output lists the nonzero entries in row-major order.
template <Field F>
std::string write_matpoly(const MatPoly<F>& A);

/// Throws ParseError, including when the declared field is not F.
template <Field F>
MatPoly<F> read_matpoly(std::string_view text);

/// JSON mirror: {"matpoly": {"rows", "cols", "over", "entries": [{"i", "j", "coeffs"}]}}
template <Field F>
std::string write_matpoly_json(const MatPoly<F>& A);
template <Field F>
MatPoly<F> read_matpoly_json(std::string_view text);

/// Either format, sniffed from the first non-blank character.
template <Field F>
MatPoly<F> read_matpoly_any(std::string_view text);

/// "Q" or "QI" from the header of either format; throws ParseError.
std::string detect_field(std::string_view text);

/// Space-separated ascending coefficients, or a human form in `l` such as
/// "l^2+2", "-3/2*l + 1", "(1+2i)*l^3 - i". Throws ParseError.
template <Field F>
Poly<F> parse_poly(std::string_view text);

/// "unit <c>" then one "factor <e>: <coeffs>" line per prime power.
template <Field F>
std::string write_factored(const FactoredPoly<F>& f);
/// Inverse of write_factored; factors are canonicalized. Throws ParseError.
template <Field F>
FactoredPoly<F> read_factored(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace smith
