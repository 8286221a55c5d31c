#pragma once

#include "kst/decomposition.hpp"
#include "kst/ksvariety.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace kst {

// JSON wire formats (see README for examples):
//   curvature tensor  {"format":"act-v1","basis":"01,02,03,23,31,12",
//                      "matrix":[[...6x6...]]}
//   diagonal tensor   {"w":[w1,w2,w3],"t":[t1,t2,t3],"s":s}
//   symmetric tensor  {"sym4":[[...4x4...]]}
//   KS-matrix         {"format":"ks-v1","delta":[...],"t":[...]}
// Parsers throw InvalidInput on malformed documents.

std::string to_json(const AlgCurvTensor& r);
std::string to_json(const DiagonalACT& d);
std::string to_json(const Sym4& h);
std::string to_json(const KSMatrix& m);

AlgCurvTensor act_from_json(const std::string& text);
DiagonalACT diagonal_from_json(const std::string& text);
Sym4 sym4_from_json(const std::string& text);
KSMatrix ks_from_json(const std::string& text);

/// Tensor input accepted by the CLI: either the 6x6 form or diagonal
/// parameters (converted on load).
struct TensorInput {
  AlgCurvTensor act;
  bool was_diagonal = false;
  DiagonalACT diagonal{Vec3::Zero(), Vec3::Zero(), 0.0};
};

TensorInput tensor_from_json(const std::string& text);

/// Reads a whole stream (used with "-" for stdin in the CLI).
std::string slurp(std::istream& in);

}  // namespace kst
