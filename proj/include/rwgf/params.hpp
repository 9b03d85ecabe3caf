// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rwgf/matrix.hpp"

namespace rwgf {

struct Tensor {
  std::string name;
  Matrix value;
  bool frozen = false;
};

/// Named parameter tensors in insertion order. Gradient stores share the
/// layout of the parameters they belong to (see zeros_like).
class ParamStore {
 public:
  Matrix& add(const std::string& name, std::size_t rows, std::size_t cols);
  bool contains(std::string_view name) const;

  Matrix& operator[](std::string_view name);
  const Matrix& operator[](std::string_view name) const;

  std::size_t size() const noexcept { return tensors_.size(); }
  Tensor& at(std::size_t i) { return tensors_[i]; }
  const Tensor& at(std::size_t i) const { return tensors_[i]; }
  auto begin() const { return tensors_.begin(); }
  auto end() const { return tensors_.end(); }

  bool frozen(std::string_view name) const;
  /// Freezes or unfreezes every tensor whose name starts with `prefix`.
  void set_frozen(std::string_view prefix, bool value);

  std::size_t scalar_count() const noexcept;
  ParamStore zeros_like() const;
  void zero();
  /// this += alpha * other; layouts must match.
  void add_scaled(const ParamStore& other, double alpha);

  bool operator==(const ParamStore& other) const;

 private:
  std::size_t index(std::string_view name) const;

  std::vector<Tensor> tensors_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Fills with N(0, scale^2) draws from the given stream.
void init_normal(Matrix& m, double scale, std::uint64_t seed);

}  // namespace rwgf
