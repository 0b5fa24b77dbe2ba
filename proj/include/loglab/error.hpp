// Copyright 2026 The loglab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOGLAB_ERROR_HPP
#define LOGLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace loglab {

// Every failure in the library derives from this. The CLI maps the concrete
// type onto an exit status (see exit_code()).
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain (e.g. t < 0 for y log y = t).
class domain_error : public error {
 public:
  using error::error;
};

// Argument outside the range an already-built table covers.
class range_error : public error {
 public:
  using error::error;
};

// A floor could not be certified even at the highest working precision.
class escalation_failure : public error {
 public:
  using error::error;
};

class capacity_error : public error {
 public:
  using error::error;
};

// A prime image does not contain every prime that could take part in a sum.
class coverage_error : public error {
 public:
  using error::error;
};

// A floating-point transform disagreed with the exact enumeration.
class precision_error : public error {
 public:
  using error::error;
};

class grid_too_small : public error {
 public:
  using error::error;
};

class pole_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

class corrupt_cache : public error {
 public:
  using error::error;
};

class usage_error : public error {
 public:
  using error::error;
};

}  // namespace loglab

#endif  // LOGLAB_ERROR_HPP
