#pragma once

#include <string>

namespace twisted {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace twisted
