#include "asep/generator.hpp"

namespace asep {

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Forward: return "forward";
    case GeneratorKind::Adjoint: return "adjoint";
    case GeneratorKind::Symmetric: return "symmetric";
  }
  return "unknown";
}

}  // namespace asep
