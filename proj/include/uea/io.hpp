#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "uea/algebras.hpp"

namespace uea {

// Malformed or inconsistent algebra file; the message names the line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AlgebraKind { LInfinity, DgLie, AInfinity };

const char* kind_name(AlgebraKind k);

// Text format, one statement per line, '#' starts a comment:
//   format 1
//   kind l-infinity | dg-lie | a-infinity
//   arity K                 (optional: structure maps of arity > K are zero / unknown)
//   top-degree N            (a-infinity only, optional: products known up to output degree N)
//   generator NAME DEGREE
//   bracket A B ... -> COEF NAME, COEF NAME     (l-infinity, dg-lie)
//   product A B ... -> COEF NAME, ...          (a-infinity)
// Coefficients are exact fractions "p" or "p/q".
struct AlgebraFile {
  int format = 1;
  AlgebraKind kind = AlgebraKind::LInfinity;
  LInfinityAlgebra lie;                     // l-infinity, dg-lie
  std::shared_ptr<AInfinityAlgebra> assoc;  // a-infinity
};

AlgebraFile parse_algebra(std::string_view text);
AlgebraFile load_algebra(const std::string& path);

// Canonical text: fixed statement order, canonical coefficients.
std::string serialize(const AlgebraFile& f);
std::string serialize_lie(const LInfinityAlgebra& g, AlgebraKind kind = AlgebraKind::LInfinity);
std::string serialize_assoc(const AInfinityAlgebra& a);

// Strict morphism of L∞-algebras, one statement per line:
//   format 1
//   kind morphism
//   source PATH             (relative to the morphism file)
//   target PATH
//   map NAME -> COEF NAME, ...   (generators with no 'map' line go to 0)
StrictMorphism parse_morphism(std::string_view text, const std::string& base_dir);
StrictMorphism load_morphism(const std::string& path);

}  // namespace uea
