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

#include "simplexhh/avg_result.hpp"
#include "simplexhh/bounds.hpp"
#include "simplexhh/errors.hpp"
#include "simplexhh/exact_poly.hpp"
#include "simplexhh/faceset.hpp"
#include "simplexhh/functions.hpp"
#include "simplexhh/geometry.hpp"
#include "simplexhh/integrate.hpp"
#include "simplexhh/io.hpp"
#include "simplexhh/monte_carlo.hpp"
#include "simplexhh/partitions.hpp"
#include "simplexhh/quadrature.hpp"
#include "simplexhh/rng.hpp"
#include "simplexhh/util.hpp"
#include "simplexhh/verify.hpp"
