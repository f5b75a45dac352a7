#include "qc/etd.hpp"

#include "qc/error.hpp"

#include <string>

namespace qc {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::Etdrk4 ? "etdrk4" : "etdrk2";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "etdrk2") return Scheme::Etdrk2;
  if (text == "etdrk4") return Scheme::Etdrk4;
  throw Error(ErrorCode::BadValue, "unknown scheme '" + std::string(text) + "'");
}

}  // namespace qc
