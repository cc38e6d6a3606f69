#include "cswire/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cswire {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json cplx_to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const ordered_json& j) {
    if (!j.is_array() || j.size() != 2)
        throw parse_error("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json mat2_to_json(const Mat2& m) {
    ordered_json arr = ordered_json::array();
    for (const auto& z : m.e) arr.push_back(cplx_to_json(z));
    return arr;
}

Mat2 mat2_from_json(const ordered_json& j) {
    if (!j.is_array() || j.size() != 4)
        throw parse_error("expected 4 row-major [re, im] entries for a 2x2 matrix");
    return {cplx_from_json(j[0]), cplx_from_json(j[1]), cplx_from_json(j[2]), cplx_from_json(j[3])};
}

ordered_json vec2_to_json(const Vec2& v) {
    return ordered_json::array({cplx_to_json(v.a), cplx_to_json(v.b)});
}

Vec2 vec2_from_json(const ordered_json& j) {
    if (!j.is_array() || j.size() != 2) throw parse_error("expected 2 [re, im] entries");
    return {cplx_from_json(j[0]), cplx_from_json(j[1])};
}

ordered_json parse_text(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what());  // message carries the byte position
    }
}

}  // namespace

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string chain_to_json(const MpsChain& chain) {
    ordered_json j;
    j["d"] = chain.kraus.dim();
    j["n"] = chain.n;
    ordered_json kraus = ordered_json::array();
    for (const auto& a : chain.kraus.ops) kraus.push_back(mat2_to_json(a));
    j["kraus"] = kraus;
    j["left"] = vec2_to_json(chain.left);
    j["right"] = vec2_to_json(chain.right);
    if (!chain.kraus.label.empty()) j["label"] = chain.kraus.label;
    return j.dump();
}

MpsChain chain_from_json(const std::string& text) {
    ordered_json j = parse_text(text);
    try {
        int d = j.at("d").get<int>();
        int n = j.at("n").get<int>();
        const auto& kraus = j.at("kraus");
        if (!kraus.is_array() || static_cast<int>(kraus.size()) != d)
            throw parse_error("kraus must list exactly d matrices");
        std::vector<Mat2> ops;
        for (const auto& item : kraus) ops.push_back(mat2_from_json(item));
        std::string label = j.contains("label") ? j["label"].get<std::string>() : "";
        KrausSet k = KrausSet::make(std::move(ops), label);
        return make_chain(k, vec2_from_json(j.at("left")), vec2_from_json(j.at("right")), n);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(e.what());
    }
}

MpsChain load_mps_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return chain_from_json(ss.str());
}

std::string program_to_json(const Program& program) {
    ordered_json arr = ordered_json::array();
    for (const auto& step : program) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : step.basis.rows) {
            ordered_json r = ordered_json::array();
            for (const auto& z : row) r.push_back(cplx_to_json(z));
            rows.push_back(r);
        }
        arr.push_back(ordered_json{{"site", step.site}, {"basis", rows}});
    }
    return arr.dump();
}

Program program_from_json(const std::string& text) {
    ordered_json j = parse_text(text);
    if (!j.is_array()) throw parse_error("program must be a JSON array");
    Program program;
    try {
        for (const auto& item : j) {
            ProgramStep step;
            step.site = item.at("site").get<int>();
            const auto& rows = item.at("basis");
            std::vector<std::vector<cplx>> basis_rows;
            for (const auto& row : rows) {
                std::vector<cplx> r;
                for (const auto& z : row) r.push_back(cplx_from_json(z));
                basis_rows.push_back(std::move(r));
            }
            step.basis = MeasurementBasis::from_rows(std::move(basis_rows));
            program.push_back(std::move(step));
        }
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(e.what());
    }
    return program;
}

Program load_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return program_from_json(ss.str());
}

std::string trace_to_jsonl(const Trace& trace, int shot) {
    std::string out;
    for (const auto& rec : trace.records) {
        ordered_json j;
        j["shot"] = shot;
        j["site"] = rec.site;
        j["outcome"] = rec.outcome;
        j["probability"] = rec.probability;
        j["effective_op"] = mat2_to_json(rec.effective_op);
        j["unitary_branch"] = rec.unitary_branch;
        if (rec.branch_weight) j["branch_weight"] = *rec.branch_weight;
        out += j.dump();
        out += '\n';
    }
    ordered_json tail;
    tail["shot"] = shot;
    tail["final"] = true;
    tail["cs_state"] = mat2_to_json(trace.final_cs);
    out += tail.dump();
    out += '\n';
    return out;
}

std::string classification_to_json(const ClassificationResult& r) {
    ordered_json j;
    j["verdict"] = verdict_name(r.verdict);
    if (r.finite_l) j["finite_l"] = *r.finite_l;
    if (r.decay_rate) j["decay_rate"] = *r.decay_rate;
    if (r.u3) j["u3"] = *r.u3;
    if (!r.phases.empty()) j["phases"] = r.phases;
    if (r.basis_rotation) j["basis_rotation"] = mat2_to_json(*r.basis_rotation);
    ordered_json ev;
    ev["block_norm"] = r.evidence.block_norm;
    ev["lambda_bar"] = r.evidence.lambda_bar;
    ev["r_plus"] = r.evidence.r_plus;
    ev["r_minus"] = r.evidence.r_minus;
    ev["betas"] = r.evidence.betas;
    ev["u3_raw"] = r.evidence.u3_raw;
    ev["iterates_checked"] = r.evidence.iterates_checked;
    ev["iterate_norm"] = r.evidence.iterate_norm;
    ev["alignment_residual"] = r.evidence.alignment_residual;
    ev["reconstruction_residual"] = r.evidence.reconstruction_residual;
    ev["marginal"] = r.evidence.marginal;
    j["evidence"] = ev;
    return j.dump();
}

std::string download_trace_to_json(const DownloadTrace& t) {
    ordered_json j;
    j["attempts"] = t.attempts;
    j["projection_site"] = t.projection_site;
    j["readout_site"] = t.readout_site;
    j["final_outcome"] = t.final_outcome;
    j["downloaded"] = ordered_json::array({cplx_to_json(t.downloaded[0]), cplx_to_json(t.downloaded[1])});
    j["corrected_cs"] = vec2_to_json(t.corrected_cs);
    j["reference"] = vec2_to_json(t.reference);
    j["c_u"] = t.c_u;
    j["fidelity"] = t.fidelity;
    j["j_residual"] = t.j_residual;
    auto records = [](const std::vector<MeasurementRecord>& recs) {
        ordered_json arr = ordered_json::array();
        for (const auto& rec : recs) {
            ordered_json rj;
            rj["site"] = rec.site;
            rj["outcome"] = rec.outcome;
            rj["probability"] = rec.probability;
            rj["unitary_branch"] = rec.unitary_branch;
            if (rec.branch_weight) rj["branch_weight"] = *rec.branch_weight;
            arr.push_back(rj);
        }
        return arr;
    };
    j["pre_steps"] = records(t.pre_steps);
    j["rotation_steps"] = records(t.rotation_steps);
    return j.dump();
}

}  // namespace cswire
