#pragma once

#include "qpsh/random_inputs.hpp"

namespace qpsh::testing {
using namespace qpsh::random;
}  // namespace qpsh::testing
