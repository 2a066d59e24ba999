#pragma once

#include <stdexcept>
#include <string>

namespace lidepth {

// Error taxonomy mirrored by the CLI exit codes (see tools/lidepth_main.cpp).

// Unreadable / unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: bad scan size, calibration text, pose lines, PNG encoding.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension / length mismatch between inputs that must agree.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An evaluation that ended up with nothing to evaluate.
class EmptyEvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lidepth
