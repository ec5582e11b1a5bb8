// Copyright 2026 The cssep Authors
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

#ifndef CSSEP_IO_HPP
#define CSSEP_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "cssep/gme.hpp"
#include "cssep/named_states.hpp"
#include "cssep/separability.hpp"
#include "cssep/structured.hpp"

namespace cssep {

using nlohmann::json;

enum class StateFormat { Dense, CsCompressed };

/// State document:
///   {"parties": d, "dim": N, "format": "dense", "dense": [[[re, im], ...], ...]}
///   {"parties": d, "dim": N, "format": "cs-compressed",
///    "csEntries": [{"index": [sorted 2d slots], "value": v}, ...]}
/// Throws InputError on malformed documents or when N^d exceeds the dense size limit.
DensityMatrix parse_state(const json &doc);
DensityMatrix parse_state_text(const std::string &text);

/// cs-compressed output requires a CS state and lists every nonzero multiset once.
json state_to_json(const DensityMatrix &rho, StateFormat format = StateFormat::Dense);

json complex_vector_json(const VectorXcd &v);
json real_vector_json(const VectorXd &v);
json real_matrix_json(const MatrixXd &m);

json certificate_to_json(const Certificate &cert);
json named_state_to_json(const NamedState &s);
json gme_to_json(const GmeResult &r);
json dicke_matrix_to_json(const DickeMatrix &m);
json vandermonde_to_json(const std::vector<VandermondeTerm> &terms);
json scan_record_to_json(const ScanRecord &rec, int d);
json scan_summary_to_json(const ScanReport &report);

}  // namespace cssep

#endif
