#include "state.hpp"

namespace dgmc {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::P1: return "P1";
    case Scheme::P2: return "P2";
    case Scheme::P3: return "P3";
    case Scheme::E1: return "E1";
    case Scheme::E2: return "E2";
  }
  return "?";
}

bool scheme_from_string(std::string_view text, Scheme& out) {
  if (text == "P1") out = Scheme::P1;
  else if (text == "P2") out = Scheme::P2;
  else if (text == "P3") out = Scheme::P3;
  else if (text == "E1") out = Scheme::E1;
  else if (text == "E2") out = Scheme::E2;
  else return false;
  return true;
}

} // namespace dgmc
