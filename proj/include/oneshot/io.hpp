#pragma once

#include <string>
#include <variant>
#include <vector>

#include "oneshot/channel.hpp"
#include "oneshot/design.hpp"
#include "oneshot/hyptest.hpp"
#include "oneshot/workflow.hpp"

namespace oneshot::io {

// JSON text <-> domain objects. Schemas:
//   distribution:  {"alphabet": b, "length": n, "mass": [{"outcome": i|[i..], "p": x}, ...]}
//   density:       {"dim": d, "re": [[..]], "im": [[..]]}
//   channel:       {"kind": "loss"|"satadd"|"mix"|"matrix"|"kraus"|"compose", ...}
//   polytope:      {"dim": m, "ineq": [{"a": [..], "b": x}], "energy": {"a": [..], "budget": x}}
//   certificate:   {"epsilon", "beta", "alpha", "dual_value", "gap", "decision", ...}

std::string write_distribution(const ClassicalDistribution& p);
ClassicalDistribution read_distribution(const std::string& text);

std::string write_density(const DensityOperator& rho);
DensityOperator read_density(const std::string& text);

// Either side of the classical/quantum split, detected from the schema.
using Hypothesis = std::variant<ClassicalDistribution, DensityOperator>;
Hypothesis read_hypothesis(const std::string& text);
std::vector<Hypothesis> read_hypothesis_list(const std::string& text);

using LoadedChannel = std::variant<ClassicalChannel, QuantumChannel>;
LoadedChannel read_channel(const std::string& text);

struct PolytopeSpec {
    int dim = 0;
    std::vector<LinearInequality> inequalities;
    bool has_energy = false;
    std::vector<double> energy;
    double budget = 0.0;
};
PolytopeSpec read_polytope(const std::string& text);

std::string write_certificate(const TestCertificate& cert);
TestCertificate read_certificate(const std::string& text);

std::string write_decision(const DecisionFunction& d);
DecisionFunction read_decision(const std::string& text);

std::string write_design_result(const DesignResult& r);
std::string write_verdicts(const std::vector<ModelVerdict>& verdicts);

// {"outcome": i} or {"outcome": [symbols...]} (the latter needs the space).
long long read_outcome(const std::string& text, const SequenceSpace* space = nullptr);

// Fixed-precision table output: 12 significant digits, round-half-even.
std::string format_number(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
std::string write_csv(const Table& table);
Table read_csv(const std::string& text);

std::string slurp_file(const std::string& path);
// Atomic write: temp file in the target directory, then rename.
void spit_file_atomic(const std::string& path, const std::string& content);

}  // namespace oneshot::io
