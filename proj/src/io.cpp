#include "oneshot/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace oneshot::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("invalid JSON input");
    return j;
}

json mass_entries(const ClassicalDistribution& p) {
    json arr = json::array();
    for (int y = 0; y < p.size(); ++y) {
        if (p[y] == 0.0) continue;
        arr.push_back(json{{"outcome", y}, {"p", p[y]}});
    }
    return arr;
}

json matrix_to_json(const CMat& m) {
    json re = json::array();
    json im = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json rrow = json::array();
        json irow = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

CMat matrix_from_json(const json& j, int rows, int cols) {
    const auto& re = j.at("re");
    CMat m(rows, cols);
    const bool has_im = j.contains("im");
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const double rv = re.at(static_cast<size_t>(i)).at(static_cast<size_t>(k)).get<double>();
            const double iv = has_im ? j.at("im").at(static_cast<size_t>(i)).at(static_cast<size_t>(k)).get<double>() : 0.0;
            m(i, k) = cplx(rv, iv);
        }
    return m;
}

}  // namespace

std::string write_distribution(const ClassicalDistribution& p) {
    json j;
    if (p.space()) {
        j["alphabet"] = p.space()->base;
        j["length"] = p.space()->length;
    } else {
        j["alphabet"] = p.size();
        j["length"] = 1;
    }
    j["mass"] = mass_entries(p);
    if (p.is_sub_normalized()) j["sub_normalized"] = true;
    return j.dump(2) + "\n";
}

ClassicalDistribution read_distribution(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("mass")) throw validation_error("distribution JSON: missing mass");
    const int alphabet = j.at("alphabet").get<int>();
    const int length = j.value("length", 1);
    SequenceSpace space(alphabet, length);
    std::vector<double> mass(static_cast<size_t>(space.dimension()), 0.0);
    for (const auto& entry : j.at("mass")) {
        long long idx = 0;
        const auto& outcome = entry.at("outcome");
        if (outcome.is_array()) {
            std::vector<int> symbols;
            for (const auto& s : outcome) symbols.push_back(s.get<int>());
            idx = space.index_of(symbols);
        } else {
            idx = outcome.get<long long>();
        }
        if (idx < 0 || idx >= int64_t(mass.size()))
            throw validation_error("distribution JSON: outcome outside the space");
        mass[static_cast<size_t>(idx)] += entry.at("p").get<double>();
    }
    if (j.value("sub_normalized", false))
        return ClassicalDistribution::sub_normalized(space, std::move(mass));
    return ClassicalDistribution(space, std::move(mass));
}

std::string write_density(const DensityOperator& rho) {
    json j = matrix_to_json(rho.matrix());
    j["dim"] = rho.dim();
    if (rho.is_sub_normalized()) j["sub_normalized"] = true;
    return j.dump(2) + "\n";
}

DensityOperator read_density(const std::string& text) {
    const json j = parse(text);
    const int dim = j.at("dim").get<int>();
    CMat m = matrix_from_json(j, dim, dim);
    if (j.value("sub_normalized", false)) return DensityOperator::sub_normalized(std::move(m));
    return DensityOperator(std::move(m));
}

namespace {

Hypothesis hypothesis_from_json(const json& j) {
    if (j.contains("mass")) return read_distribution(j.dump());
    if (j.contains("re")) return read_density(j.dump());
    throw validation_error("hypothesis JSON: expected a distribution or a density operator");
}

}  // namespace

Hypothesis read_hypothesis(const std::string& text) { return hypothesis_from_json(parse(text)); }

std::vector<Hypothesis> read_hypothesis_list(const std::string& text) {
    const json j = parse(text);
    if (!j.is_array()) return {hypothesis_from_json(j)};
    std::vector<Hypothesis> out;
    for (const auto& item : j) out.push_back(hypothesis_from_json(item));
    if (out.empty()) throw validation_error("hypothesis list JSON: empty array");
    return out;
}

namespace {

LoadedChannel channel_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "loss") return loss_map(j.at("c").get<int>(), j.at("g").get<int>());
    if (kind == "satadd") return saturating_add_map(j.at("s").get<int>(), j.at("g").get<int>());
    if (kind == "mix")
        return uniform_mix_map(j.at("delta").get<double>(), j.at("dim").get<int>());
    if (kind == "matrix") {
        const int out_dim = j.at("out_dim").get<int>();
        const int in_dim = j.at("in_dim").get<int>();
        const auto& w = j.at("weights");
        std::vector<double> weights;
        weights.reserve(static_cast<size_t>(out_dim) * in_dim);
        for (int y = 0; y < out_dim; ++y)
            for (int x = 0; x < in_dim; ++x)
                weights.push_back(w.at(static_cast<size_t>(y)).at(static_cast<size_t>(x)).get<double>());
        return ClassicalChannel(out_dim, in_dim, std::move(weights));
    }
    if (kind == "kraus") {
        std::vector<CMat> ops;
        for (const auto& op : j.at("ops")) {
            const int rows = int(op.at("re").size());
            const int cols = int(op.at("re").at(0).size());
            ops.push_back(matrix_from_json(op, rows, cols));
        }
        return QuantumChannel(std::move(ops));
    }
    if (kind == "compose") {
        const auto& maps = j.at("maps");
        if (maps.empty()) throw validation_error("channel JSON: empty composition");
        // listed outermost first
        LoadedChannel acc = channel_from_json(maps.back());
        for (int i = int(maps.size()) - 2; i >= 0; --i) {
            LoadedChannel outer = channel_from_json(maps.at(static_cast<size_t>(i)));
            if (outer.index() != acc.index())
                throw validation_error("channel JSON: cannot compose classical with quantum");
            if (acc.index() == 0)
                acc = compose(std::get<ClassicalChannel>(outer), std::get<ClassicalChannel>(acc));
            else
                acc = compose(std::get<QuantumChannel>(outer), std::get<QuantumChannel>(acc));
        }
        return acc;
    }
    throw validation_error("channel JSON: unknown kind '" + kind + "'");
}

}  // namespace

LoadedChannel read_channel(const std::string& text) { return channel_from_json(parse(text)); }

PolytopeSpec read_polytope(const std::string& text) {
    const json j = parse(text);
    PolytopeSpec spec;
    spec.dim = j.at("dim").get<int>();
    if (j.contains("ineq"))
        for (const auto& q : j.at("ineq")) {
            LinearInequality li;
            for (const auto& v : q.at("a")) li.a.push_back(v.get<double>());
            li.b = q.at("b").get<double>();
            spec.inequalities.push_back(std::move(li));
        }
    if (j.contains("energy")) {
        spec.has_energy = true;
        for (const auto& v : j.at("energy").at("a")) spec.energy.push_back(v.get<double>());
        spec.budget = j.at("energy").at("budget").get<double>();
    }
    return spec;
}

std::string write_decision(const DecisionFunction& d) {
    json j;
    if (d.is_classical()) {
        j["kind"] = "classical";
        j["weights"] = d.weights();
    } else {
        j["kind"] = "quantum";
        j["dim"] = d.dim();
        j.update(matrix_to_json(d.matrix()));
    }
    return j.dump(2) + "\n";
}

DecisionFunction read_decision(const std::string& text) {
    const json j = parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "classical")
        return DecisionFunction::classical(j.at("weights").get<std::vector<double>>());
    if (kind == "quantum") {
        const int dim = j.at("dim").get<int>();
        return DecisionFunction::quantum(matrix_from_json(j, dim, dim));
    }
    throw validation_error("decision JSON: unknown kind");
}

std::string write_certificate(const TestCertificate& cert) {
    json j;
    j["epsilon"] = cert.epsilon;
    j["beta"] = cert.beta;
    j["alpha"] = cert.alpha;
    j["dual_value"] = cert.dual_value;
    j["gap"] = cert.gap;
    j["iterations"] = cert.iterations;
    j["decision"] = json::parse(write_decision(cert.decision));
    json dual;
    dual["z"] = cert.dual.z;
    dual["v"] = cert.dual.v;
    if (cert.dual.z_is_diagonal())
        dual["Z_diag"] = std::get<std::vector<double>>(cert.dual.zpart);
    else
        dual["Z"] = matrix_to_json(std::get<CMat>(cert.dual.zpart));
    j["dual"] = std::move(dual);
    return j.dump(2) + "\n";
}

TestCertificate read_certificate(const std::string& text) {
    const json j = parse(text);
    TestCertificate cert;
    cert.epsilon = j.at("epsilon").get<double>();
    cert.beta = j.at("beta").get<double>();
    cert.alpha = j.at("alpha").get<double>();
    cert.dual_value = j.at("dual_value").get<double>();
    cert.gap = j.at("gap").get<double>();
    cert.iterations = j.value("iterations", 0);
    cert.decision = read_decision(j.at("decision").dump());
    const auto& dual = j.at("dual");
    cert.dual.z = dual.at("z").get<std::vector<double>>();
    cert.dual.v = dual.at("v").get<std::vector<double>>();
    if (dual.contains("Z_diag"))
        cert.dual.zpart = dual.at("Z_diag").get<std::vector<double>>();
    else {
        const auto& zj = dual.at("Z");
        const int dim = int(zj.at("re").size());
        cert.dual.zpart = matrix_from_json(zj, dim, dim);
    }
    return cert;
}

std::string write_design_result(const DesignResult& r) {
    json j;
    j["device"] = json::parse(write_distribution(r.best_device));
    if (std::isfinite(r.objective_bits))
        j["objective_bits"] = r.objective_bits;
    else
        j["objective_bits"] = "inf";
    switch (r.method) {
        case DesignMethod::vertex_enumeration: j["method"] = "vertex-enumeration"; break;
        case DesignMethod::multi_start_gradient: j["method"] = "multi-start-gradient"; break;
        case DesignMethod::alternating: j["method"] = "alternating"; break;
    }
    j["iterations"] = r.iterations;
    return j.dump(2) + "\n";
}

std::string write_verdicts(const std::vector<ModelVerdict>& verdicts) {
    json arr = json::array();
    for (const auto& v : verdicts) {
        json j;
        j["model"] = v.model_index;
        j["not_evidence"] = v.in_kernel;
        j["acceptance_weight"] = v.acceptance_weight;
        j["beta"] = v.beta;
        j["accepted_null"] = v.accepted;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

long long read_outcome(const std::string& text, const SequenceSpace* space) {
    const json j = parse(text);
    const auto& outcome = j.at("outcome");
    if (outcome.is_array()) {
        if (!space) throw validation_error("outcome JSON: sequence form needs a sequence space");
        std::vector<int> symbols;
        for (const auto& s : outcome) symbols.push_back(s.get<int>());
        return space->index_of(symbols);
    }
    return outcome.get<long long>();
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string write_csv(const Table& table) {
    std::ostringstream out;
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_number(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

Table read_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw validation_error("CSV: empty input");
    std::istringstream head(line);
    std::string cell;
    while (std::getline(head, cell, ',')) t.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<double> values;
        while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
        if (values.size() != t.columns.size())
            throw validation_error("CSV: ragged row");
        t.rows.push_back(std::move(values));
    }
    return t;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open file for writing: " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace oneshot::io
