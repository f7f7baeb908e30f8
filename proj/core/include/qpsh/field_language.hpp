#pragma once

// Text form of scalar fields used on the command line; grammar in docs/fields.md.
//
//   field := ['-'] term (('+' | '-') term)*
//   term  := [number '*'] atom
//   atom  := norm2 | sqrt_norm2_eps(e) | logcosh_norm_eps(e)
//          | quadratic(m_11, ..., m_NN) | affine(c0, c_1, ..., c_N)
//          | poly(coef @ e_1, ..., e_N; ...) | x(v)
// with N = 4n real coordinates ordered (t, x, y, z) per quaternion.

#include <string>
#include <string_view>

#include "qpsh/field.hpp"

namespace qpsh {

/// Throws InvalidArgument with the offending position on syntax errors.
/// Backend::polynomial is available when every atom is polynomial.
ScalarField parse_field(std::string_view text, int n, Backend backend = Backend::autodiff);

}  // namespace qpsh
