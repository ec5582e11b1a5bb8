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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cssep/gme.hpp"
#include "cssep/io.hpp"
#include "cssep/named_states.hpp"
#include "cssep/reducibility.hpp"
#include "cssep/separability.hpp"
#include "cssep/structured.hpp"

namespace {

using namespace cssep;

enum Exit { kOk = 0, kEntangled = 1, kUndetermined = 2, kInputError = 3, kNumericError = 4 };

struct Args {
    std::string in = "-";
    std::string out = "-";
    double tol_rank = 1e-10;
    double tol_psd = 1e-10;
    uint64_t seed = 7;
    int parties = 3;
    int dim = 2;
    std::string name;
    int samples = 100;
    std::vector<int> traced;
    std::vector<double> sequence;
    bool literal = false;
    bool compressed = false;
};

std::string read_input(const std::string &path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) {
            throw InputError("cannot open " + path);
        }
        ss << f.rdbuf();
    }
    return ss.str();
}

// Accepts a bare state document or an object with a "state" member (as written by `example`).
DensityMatrix load_state(const Args &a) {
    std::string text = read_input(a.in);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("state") && !doc.contains("parties")) {
        return parse_state(doc["state"]);
    }
    return parse_state(doc);
}

class Output {
   public:
    explicit Output(const std::string &path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) {
                throw InputError("cannot write " + path);
            }
        }
    }
    std::ostream &stream() {
        return file_.is_open() ? file_ : std::cout;
    }
    void write(const json &doc) {
        stream() << doc.dump(2) << "\n";
    }
    void line(const json &doc) {
        stream() << doc.dump() << "\n";
    }

   private:
    std::ofstream file_;
};

EngineOptions engine(const Args &a) {
    EngineOptions o;
    o.tol.rank = a.tol_rank;
    o.tol.psd = a.tol_psd;
    o.seed = a.seed;
    return o;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Separable:
            return kOk;
        case Verdict::Entangled:
            return kEntangled;
        default:
            return kUndetermined;
    }
}

int cmd_check_cs(const Args &a) {
    DensityMatrix rho = load_state(a);
    CsReport r = is_cs(rho, 1e-9);
    json doc = {{"cs", r.ok}, {"maxViolation", r.max_violation}};
    if (r.ok) {
        doc["localRank"] = local_rank(rho, 0, a.tol_rank);
        doc["supported"] = is_supported(rho, a.tol_rank);
        doc["rank"] = range_kernel(rho, a.tol_rank).rank;
    }
    Output(a.out).write(doc);
    return kOk;
}

int cmd_ptrace(const Args &a) {
    DensityMatrix rho = load_state(a);
    Output(a.out).write(state_to_json(partial_trace(rho, a.traced)));
    return kOk;
}

int cmd_ppt(const Args &a) {
    DensityMatrix rho = load_state(a);
    std::vector<double> mins = ppt_min_eigenvalues(rho);
    Output(a.out).write({{"ppt", is_ppt(rho, a.tol_psd)}, {"minEigenvalues", mins}});
    return kOk;
}

int cmd_classify(const Args &a, bool require_terms) {
    DensityMatrix rho = load_state(a);
    Certificate cert = is_cs(rho).ok ? classify(rho, engine(a)) : classify_symmetric(rho, engine(a));
    json doc = certificate_to_json(cert);
    if (cert.has_decomposition) {
        doc["reconstructionError"] = reconstruction_error(rho, cert.decomposition);
    }
    Output(a.out).write(doc);
    if (require_terms && cert.verdict == Verdict::Separable && !cert.has_decomposition) {
        return kNumericError;
    }
    return verdict_exit(cert.verdict);
}

int cmd_gme(const Args &a) {
    DensityMatrix rho = load_state(a);
    GmeOptions o;
    o.seed = a.seed;
    GmeResult r = gme_power_iteration(rho, o);
    Output(a.out).write(gme_to_json(r));
    return r.converged ? kOk : kNumericError;
}

int cmd_hankel(const Args &a) {
    DensityMatrix rho = a.sequence.empty() ? load_state(a) : hankel_to_state(Eigen::Map<const VectorXd>(a.sequence.data(), a.sequence.size()));
    DickeMatrix m = state_to_dicke_matrix(rho, a.tol_rank);
    json doc = dicke_matrix_to_json(m);
    if (m.hankel) {
        doc["vandermonde"] = vandermonde_to_json(hankel_psd_decompose(m.moment(), a.tol_rank));
    }
    Output(a.out).write(doc);
    return kOk;
}

int cmd_toeplitz_scan(const Args &a) {
    ScanReport rep = toeplitz_scan(a.samples, a.parties, a.seed, a.literal ? ToeplitzConvention::Literal : ToeplitzConvention::Weighted);
    Output out(a.out);
    for (const auto &r : rep.records) {
        out.line(scan_record_to_json(r, rep.d));
    }
    out.line(scan_summary_to_json(rep));
    return kOk;
}

int cmd_example(const Args &a) {
    NamedState s = named_state(a.name);
    json doc = state_to_json(s.state, a.compressed ? StateFormat::CsCompressed : StateFormat::Dense);
    doc["name"] = s.name;
    doc["description"] = s.description;
    doc["params"] = s.params;
    Output(a.out).write(doc);
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"cssep: separability of multipartite states with combinatorial symmetry"};
    app.require_subcommand(1);
    Args a;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--in", a.in, "input JSON file, '-' for stdin");
        sub->add_option("--out", a.out, "output file, '-' for stdout");
        sub->add_option("--tol-rank", a.tol_rank, "relative rank tolerance");
        sub->add_option("--tol-psd", a.tol_psd, "relative PSD tolerance");
        sub->add_option("--seed", a.seed, "random seed");
    };
    std::map<std::string, CLI::App *> subs;
    for (const char *name : {"check-cs", "ptrace", "ppt", "classify", "decompose", "gme", "hankel", "toeplitz-scan", "example"}) {
        subs[name] = app.add_subcommand(name);
        common(subs[name]);
    }
    subs["check-cs"]->description("CS test, local rank and support");
    subs["ptrace"]->description("partial trace over --trace parties");
    subs["ptrace"]->add_option("--trace", a.traced, "parties to trace out")->required();
    subs["ppt"]->description("minimal eigenvalue of every partial transpose");
    subs["classify"]->description("separability verdict with certificate");
    subs["decompose"]->description("like classify, but a separable verdict without terms is a numeric failure");
    subs["gme"]->description("geometric measure for nonnegative symmetric states");
    subs["hankel"]->description("Dicke matrix structure and Vandermonde decomposition");
    subs["hankel"]->add_option("--sequence", a.sequence, "moment sequence a_0..a_2d instead of --in");
    subs["toeplitz-scan"]->description("random PSD Toeplitz states, JSON lines");
    subs["toeplitz-scan"]->add_option("--parties,--dim", a.parties, "number of qubits d");
    subs["toeplitz-scan"]->add_option("--samples", a.samples, "number of samples");
    subs["toeplitz-scan"]->add_flag("--literal", a.literal, "treat the Dicke matrix itself as the Toeplitz matrix");
    subs["example"]->description("named states");
    std::string names;
    for (const auto &n : named_state_names()) {
        names += (names.empty() ? "" : ", ") + n;
    }
    subs["example"]->add_option("--name", a.name, names)->required();
    subs["example"]->add_flag("--compressed", a.compressed, "cs-compressed output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*subs["check-cs"]) return cmd_check_cs(a);
        if (*subs["ptrace"]) return cmd_ptrace(a);
        if (*subs["ppt"]) return cmd_ppt(a);
        if (*subs["classify"]) return cmd_classify(a, false);
        if (*subs["decompose"]) return cmd_classify(a, true);
        if (*subs["gme"]) return cmd_gme(a);
        if (*subs["hankel"]) return cmd_hankel(a);
        if (*subs["toeplitz-scan"]) return cmd_toeplitz_scan(a);
        if (*subs["example"]) return cmd_example(a);
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const NumericError &e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumericError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericError;
    }
    return kInputError;
}
