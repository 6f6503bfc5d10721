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

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include "simplexhh/errors.hpp"

namespace simplexhh {

/// Nonempty set of vertex indices selecting a face of a simplex.
/// Indices are stored sorted and distinct; validity against a particular
/// vertex count is checked where a face is actually taken.
class FaceSet {
 public:
  FaceSet() = default;

  explicit FaceSet(std::vector<int> indices) : ix_(std::move(indices)) {
    std::sort(ix_.begin(), ix_.end());
    ix_.erase(std::unique(ix_.begin(), ix_.end()), ix_.end());
    for (int i : ix_)
      if (i < 0) throw IndexOutOfRange("negative vertex index in face set");
  }

  FaceSet(std::initializer_list<int> indices)
      : FaceSet(std::vector<int>(indices)) {}

  int card() const { return static_cast<int>(ix_.size()); }
  bool empty() const { return ix_.empty(); }
  const std::vector<int>& indices() const { return ix_; }

  bool contains(int i) const {
    return std::binary_search(ix_.begin(), ix_.end(), i);
  }

  bool subset_of(const FaceSet& other) const {
    return std::includes(other.ix_.begin(), other.ix_.end(), ix_.begin(),
                         ix_.end());
  }

  bool disjoint_with(const FaceSet& other) const {
    std::vector<int> tmp;
    std::set_intersection(ix_.begin(), ix_.end(), other.ix_.begin(),
                          other.ix_.end(), std::back_inserter(tmp));
    return tmp.empty();
  }

  FaceSet united(const FaceSet& other) const {
    std::vector<int> u;
    std::set_union(ix_.begin(), ix_.end(), other.ix_.begin(), other.ix_.end(),
                   std::back_inserter(u));
    return FaceSet(std::move(u));
  }

  /// Complement within {0,...,n_vertices-1}.
  FaceSet complement(int n_vertices) const {
    std::vector<int> c;
    for (int i = 0; i < n_vertices; ++i)
      if (!contains(i)) c.push_back(i);
    return FaceSet(std::move(c));
  }

  /// All vertices {0,...,n_vertices-1}.
  static FaceSet full(int n_vertices) {
    std::vector<int> v(static_cast<std::size_t>(n_vertices));
    for (int i = 0; i < n_vertices; ++i) v[static_cast<std::size_t>(i)] = i;
    return FaceSet(std::move(v));
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < ix_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(ix_[i]);
    }
    s += "}";
    return s;
  }

  auto operator<=>(const FaceSet&) const = default;

 private:
  std::vector<int> ix_;
};

}  // namespace simplexhh
