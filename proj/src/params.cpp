// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#include "rwgf/params.hpp"

#include "rwgf/error.hpp"
#include "rwgf/rng.hpp"

namespace rwgf {

Matrix& ParamStore::add(const std::string& name, std::size_t rows, std::size_t cols) {
  if (index_.count(name)) fail(Errc::config_error, "duplicate parameter " + name);
  index_.emplace(name, tensors_.size());
  tensors_.push_back({name, Matrix(rows, cols), false});
  return tensors_.back().value;
}

bool ParamStore::contains(std::string_view name) const { return index_.find(name) != index_.end(); }

std::size_t ParamStore::index(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) fail(Errc::config_error, "unknown parameter " + std::string(name));
  return it->second;
}

Matrix& ParamStore::operator[](std::string_view name) { return tensors_[index(name)].value; }
const Matrix& ParamStore::operator[](std::string_view name) const { return tensors_[index(name)].value; }

bool ParamStore::frozen(std::string_view name) const { return tensors_[index(name)].frozen; }

void ParamStore::set_frozen(std::string_view prefix, bool value) {
  for (auto& t : tensors_) {
    if (std::string_view(t.name).starts_with(prefix)) t.frozen = value;
  }
}

std::size_t ParamStore::scalar_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += t.value.size();
  return n;
}

ParamStore ParamStore::zeros_like() const {
  ParamStore out;
  for (const auto& t : tensors_) {
    out.add(t.name, t.value.rows(), t.value.cols());
    out.tensors_.back().frozen = t.frozen;
  }
  return out;
}

void ParamStore::zero() {
  for (auto& t : tensors_) t.value.fill(0.0);
}

void ParamStore::add_scaled(const ParamStore& other, double alpha) {
  if (other.size() != size()) fail(Errc::dimension_mismatch, "parameter stores differ in layout");
  for (std::size_t i = 0; i < size(); ++i) {
    auto dst = tensors_[i].value.flat();
    auto src = other.tensors_[i].value.flat();
    if (dst.size() != src.size()) fail(Errc::dimension_mismatch, "tensor " + tensors_[i].name + " differs in shape");
    axpy(alpha, src, dst);
  }
}

bool ParamStore::operator==(const ParamStore& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (tensors_[i].name != other.tensors_[i].name || !(tensors_[i].value == other.tensors_[i].value)) return false;
  }
  return true;
}

void init_normal(Matrix& m, double scale, std::uint64_t seed) {
  Rng rng(seed);
  for (double& x : m.flat()) x = scale * standard_normal(rng);
}

}  // namespace rwgf
