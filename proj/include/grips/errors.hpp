#pragma once

#include <stdexcept>
#include <string>

namespace grips {

// Error categories aligned with the CLI exit codes:
//   input_error      -> 1 (invalid input or configuration)
//   resource_error   -> 2 (a configured cap or budget was exceeded)
//   truncation_error -> 3 (the answer cannot be certified inside the
//                          truncated universe; a larger radius may help)
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace grips
