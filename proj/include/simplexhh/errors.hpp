/* Copyright 2026 the simplexhh authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace simplexhh {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometry
struct DimensionMismatch : Error { using Error::Error; };
struct DegenerateSimplex : Error { using Error::Error; };
struct DegenerateFace : Error { using Error::Error; };
struct NotFullDimensional : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// Integration
struct NotPolynomial : Error { using Error::Error; };
struct UnsupportedDegree : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };

// Partitions
struct GroundSetTooLarge : Error { using Error::Error; };
struct GroundSetMismatch : Error { using Error::Error; };
struct NotADivisor : Error { using Error::Error; };
struct NotARefinement : Error { using Error::Error; };

// Bounds
struct WrongCount : Error { using Error::Error; };

// Input handling
struct ParseError : Error { using Error::Error; };

}  // namespace simplexhh
