// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "rwgf/graph.hpp"

namespace rwgf {

// Line-oriented text format:
//
//   graph <node_count> <feature_dim> <dataset_tag>
//   edge <u> <v>
//   nodefeat <u> <f1> ... <fd>
//   edgefeat <u> <v> <f1> ... <fd>
//   label <u> <int>
//
// Blank lines and lines starting with '#' are ignored. Edge ids follow the
// order of `edge` lines. Missing features are zero vectors.

Graph parse_graph(std::istream& in, const std::string& source = "<stream>");
Graph load_graph(const std::filesystem::path& path);

void write_graph(std::ostream& out, const Graph& g);
void save_graph(const std::filesystem::path& path, const Graph& g);

}  // namespace rwgf
