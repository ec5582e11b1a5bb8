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

#include "cssep/io.hpp"

#include "cssep/tensor.hpp"

namespace cssep {

namespace {

int get_int(const json &doc, const char *key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) {
        throw InputError(std::string("state document needs an integer '") + key + "'");
    }
    return doc[key].get<int>();
}

double get_number(const json &v, const char *what) {
    if (!v.is_number()) {
        throw InputError(std::string("expected a number in ") + what);
    }
    return v.get<double>();
}

const char *format_name(StateFormat f) {
    return f == StateFormat::Dense ? "dense" : "cs-compressed";
}

}  // namespace

DensityMatrix parse_state(const json &doc) {
    if (!doc.is_object()) {
        throw InputError("state document must be a JSON object");
    }
    int d = get_int(doc, "parties");
    int N = get_int(doc, "dim");
    if (d < 1 || N < 1) {
        throw InputError("parties and dim must be positive");
    }
    size_t n = checked_pow(N, d, kMaxDenseDim);
    if (n > kMaxDenseDim) {
        throw InputError("dimension overflow: N^d exceeds " + std::to_string(kMaxDenseDim));
    }
    std::string format = doc.value("format", "dense");
    if (format == "dense") {
        if (doc.contains("csEntries")) {
            throw InputError("dense document must not carry csEntries");
        }
        if (!doc.contains("dense") || !doc["dense"].is_array() || doc["dense"].size() != n) {
            throw InputError("dense document needs N^d rows");
        }
        MatrixXcd m(n, n);
        for (size_t i = 0; i < n; i++) {
            const json &row = doc["dense"][i];
            if (!row.is_array() || row.size() != n) {
                throw InputError("dense row " + std::to_string(i) + " has the wrong length");
            }
            for (size_t j = 0; j < n; j++) {
                const json &e = row[j];
                if (!e.is_array() || e.size() != 2) {
                    throw InputError("dense entries must be [re, im] pairs");
                }
                m(i, j) = cplx(get_number(e[0], "dense"), get_number(e[1], "dense"));
            }
        }
        return DensityMatrix(m, d, N);
    }
    if (format == "cs-compressed") {
        if (doc.contains("dense")) {
            throw InputError("cs-compressed document must not carry dense rows");
        }
        if (!doc.contains("csEntries") || !doc["csEntries"].is_array()) {
            throw InputError("cs-compressed document needs csEntries");
        }
        SymTensor t(2 * d, N);
        for (const json &e : doc["csEntries"]) {
            if (!e.is_object() || !e.contains("index") || !e["index"].is_array() || !e.contains("value")) {
                throw InputError("csEntries items need index and value");
            }
            std::vector<int> idx;
            for (const json &v : e["index"]) {
                if (!v.is_number_integer()) {
                    throw InputError("csEntries index must hold integers");
                }
                idx.push_back(v.get<int>());
            }
            if (static_cast<int>(idx.size()) != 2 * d) {
                throw InputError("csEntries index must have length 2d");
            }
            t.set(idx, get_number(e["value"], "csEntries"));
        }
        return DensityMatrix::from_real(t.to_dense(), d, N);
    }
    throw InputError("unknown state format '" + format + "'");
}

DensityMatrix parse_state_text(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return parse_state(doc);
}

json state_to_json(const DensityMatrix &rho, StateFormat format) {
    if (!rho.uniform()) {
        throw InputError("state documents need equal local dimensions");
    }
    json doc;
    doc["parties"] = rho.parties();
    doc["dim"] = rho.local_dim();
    doc["format"] = format_name(format);
    if (format == StateFormat::Dense) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < rho.size(); i++) {
            json row = json::array();
            for (Eigen::Index j = 0; j < rho.size(); j++) {
                row.push_back({rho.matrix()(i, j).real(), rho.matrix()(i, j).imag()});
            }
            rows.push_back(std::move(row));
        }
        doc["dense"] = std::move(rows);
        return doc;
    }
    if (!is_cs(rho).ok) {
        throw InputError("cs-compressed output needs a CS state");
    }
    SymTensor t = SymTensor::from_dense(rho.real(), rho.parties(), rho.local_dim());
    json entries = json::array();
    for (const auto &[key, value] : t.entries()) {
        if (value != 0) {
            entries.push_back({{"index", key}, {"value", value}});
        }
    }
    doc["csEntries"] = std::move(entries);
    return doc;
}

json complex_vector_json(const VectorXcd &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); i++) {
        out.push_back({v[i].real(), v[i].imag()});
    }
    return out;
}

json real_vector_json(const VectorXd &v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json real_matrix_json(const MatrixXd &m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        out.push_back(real_vector_json(m.row(i).transpose()));
    }
    return out;
}

json certificate_to_json(const Certificate &cert) {
    json doc;
    doc["verdict"] = to_string(cert.verdict);
    doc["rule"] = cert.rule;
    if (cert.has_decomposition) {
        json terms = json::array();
        for (const auto &t : cert.decomposition) {
            terms.push_back({{"weight", t.weight}, {"power", t.vector.power}, {"vector", complex_vector_json(t.vector.local)}});
        }
        doc["terms"] = std::move(terms);
    } else {
        doc["terms"] = nullptr;
    }
    doc["evidence"] = cert.evidence;
    doc["transcript"] = cert.transcript;
    return doc;
}

json named_state_to_json(const NamedState &s) {
    json doc;
    doc["name"] = s.name;
    doc["description"] = s.description;
    doc["params"] = s.params;
    doc["state"] = state_to_json(s.state);
    return doc;
}

json gme_to_json(const GmeResult &r) {
    return {{"mu", r.mu},
            {"gme", r.gme},
            {"a", real_vector_json(r.a)},
            {"iterations", r.iterations},
            {"kktResidual", r.kkt_residual},
            {"converged", r.converged}};
}

json dicke_matrix_to_json(const DickeMatrix &m) {
    return {{"d", m.d},
            {"m", real_matrix_json(m.m)},
            {"moment", real_matrix_json(m.moment())},
            {"structure", m.structure()},
            {"diagonal", m.diagonal},
            {"hankel", m.hankel},
            {"toeplitz", m.toeplitz}};
}

json vandermonde_to_json(const std::vector<VandermondeTerm> &terms) {
    json out = json::array();
    for (const auto &t : terms) {
        json item = {{"weight", t.weight}};
        if (t.infinite) {
            item["node"] = "Infinity";
        } else {
            item["node"] = t.node;
        }
        out.push_back(std::move(item));
    }
    return out;
}

json scan_record_to_json(const ScanRecord &rec, int d) {
    return {{"index", rec.index},
            {"seed", rec.seed},
            {"d", d},
            {"kind", rec.kind},
            {"a", real_vector_json(rec.a)},
            {"minEigenvalue", rec.min_eigenvalue},
            {"verdict", to_string(rec.verdict)},
            {"rule", rec.rule},
            {"reconstructionError", rec.reconstruction_error},
            {"transcript", rec.transcript}};
}

json scan_summary_to_json(const ScanReport &report) {
    return {{"summary", true},
            {"samples", report.samples},
            {"d", report.d},
            {"seed", report.seed},
            {"convention", report.convention == ToeplitzConvention::Weighted ? "weighted" : "literal"},
            {"separable", report.separable},
            {"entangled", report.entangled},
            {"undetermined", report.undetermined}};
}

}  // namespace cssep
