/*
Copyright 2026 qdopt developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace qdopt {

// Error taxonomy; the CLI maps these onto exit codes (parse -> 2,
// input/capacity -> 3, numeric -> 4).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Inconsistent or out-of-contract arguments (dimension mismatches, bad flags).
class InputError : public Error {
  public:
    using Error::Error;
};

// Malformed problem/dataset/model files.
class ParseError : public Error {
  public:
    using Error::Error;
};

// Requests beyond hard size caps (exhaustive enumeration, exact RBM tables).
class CapacityError : public Error {
  public:
    using Error::Error;
};

// Non-finite values encountered mid-computation.
class NumericError : public Error {
  public:
    using Error::Error;
};

}  // namespace qdopt
