// Copyright 2026 The formation-dqn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FDQN_ERRORS_HPP_
#define FDQN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fdqn {

// Root of every error thrown by the library. Catch this to handle any of them.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FDQN_DECLARE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

FDQN_DECLARE_ERROR(InvalidStateError);     // non-finite simulator state
FDQN_DECLARE_ERROR(IndexError);            // uav index out of range
FDQN_DECLARE_ERROR(DimensionError);        // feature vector / network width mismatch
FDQN_DECLARE_ERROR(NumericalError);        // NaN/Inf in loss or parameters
FDQN_DECLARE_ERROR(FormatError);           // bad model or formation document
FDQN_DECLARE_ERROR(EpisodeFinishedError);  // stepping a finished episode
FDQN_DECLARE_ERROR(ArityError);            // wrong number of actions
FDQN_DECLARE_ERROR(InvariantError);        // malformed transition
FDQN_DECLARE_ERROR(InsufficientDataError); // sampling more than stored
FDQN_DECLARE_ERROR(NotReadyError);         // training before warm-up
FDQN_DECLARE_ERROR(ParameterError);        // bad smoothing / config parameter
FDQN_DECLARE_ERROR(ParseError);            // malformed CSV or config input

#undef FDQN_DECLARE_ERROR

}  // namespace fdqn

#endif  // FDQN_ERRORS_HPP_
