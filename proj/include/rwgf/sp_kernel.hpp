// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "rwgf/graph.hpp"
#include "rwgf/matrix.hpp"

namespace rwgf {

struct SPTriplet {
  int a = 0;  // a <= b
  int b = 0;
  Hop distance = 0;

  auto operator<=>(const SPTriplet&) const = default;
};

/// Multiset of triplets, value -> multiplicity.
using SPTripletSet = std::map<SPTriplet, std::size_t>;

/// Triplets over all unordered node pairs of a graph, with distances taken
/// inside the graph itself. Node labels are used when present, otherwise
/// the degree. Throws DisconnectedBall when some pair is unreachable.
SPTripletSet sp_triplets(const Graph& g);
SPTripletSet sp_triplets(const Ball& b);

std::size_t triplet_count(const SPTripletSet& s);

double kernel(const SPTripletSet& a, const SPTripletSet& b);
double kernel(const Ball& a, const Ball& b);

Matrix gram(std::span<const SPTripletSet> sets);
Matrix gram(std::span<const Ball> balls);

/// sqrt(k(a,a) + k(b,b) - 2 k(a,b)).
double kernel_distance(const SPTripletSet& a, const SPTripletSet& b);

}  // namespace rwgf
