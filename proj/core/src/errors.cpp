#include "ier/errors.hpp"

namespace ier {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config:
    case ErrorKind::domain:
      return 2;
    case ErrorKind::convergence:
      return 3;
    case ErrorKind::resource:
      return 4;
  }
  return 1;
}

}  // namespace ier
