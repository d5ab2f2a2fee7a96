#include "lipa/error.hpp"

namespace lipa {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::aliasing: return "aliasing";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::undefined_ratio: return "undefined_ratio";
    case ErrorKind::not_applicable: return "not_applicable";
    case ErrorKind::box_mismatch: return "box_mismatch";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace lipa
