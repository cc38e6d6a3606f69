#include "cswire/presets.hpp"

#include <cmath>
#include <sstream>

namespace cswire {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
}  // namespace

KrausSet cluster_kraus() {
    return KrausSet::make({kInvSqrt2 * hadamard(), kInvSqrt2 * (hadamard() * pauli(3))}, "cluster");
}

KrausSet ghz_kraus() {
    return KrausSet::make({kInvSqrt2 * Mat2::identity(), kInvSqrt2 * pauli(3)}, "ghz");
}

KrausSet aklt_kraus() {
    return KrausSet::make(
        {kInvSqrt3 * pauli(1), kInvSqrt3 * (pauli(1) * pauli(3)), kInvSqrt3 * pauli(3)}, "aklt");
}

KrausSet aklt_alt_kraus() {
    return KrausSet::make(
        {kInvSqrt3 * (pauli(1) * pauli(3)), kInvSqrt3 * pauli(1), kInvSqrt3 * pauli(3)},
        "aklt_alt");
}

KrausSet depolarizing4_kraus(const Mat2& u, const Mat2& v) {
    if (!u.is_unitary(1e-9) || !v.is_unitary(1e-9))
        throw validation_error("depolarizing4 requires unitary U and V");
    std::vector<Mat2> ops;
    for (int i = 0; i < 4; ++i) ops.push_back(0.5 * (u * pauli(i) * v));
    return KrausSet::make(std::move(ops), "depolarizing4");
}

KrausSet canonical_class_kraus(const CanonicalClassParams& p) {
    if (p.c_m <= 0) throw validation_error("canonical_class: c_m must be positive");
    double total = p.c_m;
    for (const auto& x : p.extra) {
        if (x.weight <= 0) throw validation_error("canonical_class: weights must be positive");
        if (x.pauli < 0 || x.pauli > 3)
            throw validation_error("canonical_class: B_j must be one of I,X,Y,Z");
        total += x.weight;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw validation_error("canonical_class: c_m + sum c_j must equal 1");
    std::vector<Mat2> ops;
    double amp = std::sqrt(p.c_m / 2.0);
    ops.push_back(amp * exp_iy(p.theta0));
    ops.push_back(amp * (exp_iy(p.theta0) * pauli(3)));
    for (const auto& x : p.extra)
        ops.push_back(std::sqrt(x.weight) * (exp_iy(x.theta) * pauli(x.pauli)));
    return KrausSet::make(std::move(ops), "canonical_class");
}

Vec2 named_state(const std::string& name) {
    if (name == "0") return {1, 0};
    if (name == "1") return {0, 1};
    if (name == "+") return {kInvSqrt2, kInvSqrt2};
    if (name == "-") return {kInvSqrt2, -kInvSqrt2};
    if (name == "y+") return {kInvSqrt2, cplx(0, kInvSqrt2)};
    if (name == "y-") return {kInvSqrt2, cplx(0, -kInvSqrt2)};
    throw validation_error("unknown state name '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"cluster", "ghz", "aklt", "aklt_alt", "depolarizing4", "canonical_class"};
}

MpsChain preset_chain(const PresetSpec& spec) {
    KrausSet k;
    if (spec.name == "cluster")
        k = cluster_kraus();
    else if (spec.name == "ghz")
        k = ghz_kraus();
    else if (spec.name == "aklt")
        k = aklt_kraus();
    else if (spec.name == "aklt_alt")
        k = aklt_alt_kraus();
    else if (spec.name == "depolarizing4")
        k = depolarizing4_kraus(spec.u, spec.v);
    else if (spec.name == "canonical_class")
        k = canonical_class_kraus(spec.canonical);
    else
        throw validation_error("unknown preset '" + spec.name + "'");
    return make_chain(k, spec.left, spec.right, spec.n);
}

MpsChain preset_chain(const std::string& name, int n) {
    PresetSpec spec;
    spec.name = name;
    spec.n = n;
    if (name == "canonical_class") {
        // A representative d=3 member: the alternate AKLT labeling.
        spec.canonical.c_m = 2.0 / 3.0;
        spec.canonical.theta0 = -kPi / 2.0;
        spec.canonical.extra = {{0.0, 3, 1.0 / 3.0}};
        spec.right = named_state("y+");
    }
    return preset_chain(spec);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw parse_error("trailing characters in number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw parse_error("expected a number, got '" + s + "'");
    } catch (const std::out_of_range&) {
        throw parse_error("number out of range: '" + s + "'");
    }
}

Vec2 parse_state(const std::string& s) {
    if (s.find(',') == std::string::npos) return named_state(s);
    auto parts = split(s, ',');
    if (parts.size() != 4) throw parse_error("state needs 4 comma-separated reals (re,im,re,im)");
    Vec2 v{cplx(parse_double(parts[0]), parse_double(parts[1])),
           cplx(parse_double(parts[2]), parse_double(parts[3]))};
    return v.normalized();
}

Mat2 named_gate(const std::string& s) {
    if (s == "I") return Mat2::identity();
    if (s == "H") return hadamard();
    if (s == "X") return pauli(1);
    if (s == "Y") return pauli(2);
    if (s == "Z") return pauli(3);
    if (s == "S") return {1, 0, 0, cplx(0, 1)};
    throw parse_error("unknown gate name '" + s + "' (expected I,H,X,Y,Z,S)");
}

int pauli_label(const std::string& s) {
    if (s == "I") return 0;
    if (s == "X") return 1;
    if (s == "Y") return 2;
    if (s == "Z") return 3;
    throw parse_error("unknown Pauli label '" + s + "'");
}

}  // namespace

PresetSpec parse_preset_spec(const std::string& text) {
    std::string body = text;
    if (body.rfind("preset:", 0) == 0) body = body.substr(7);
    PresetSpec spec;
    auto qmark = body.find('?');
    spec.name = body.substr(0, qmark);
    std::map<std::string, std::string> kv;
    if (qmark != std::string::npos) {
        for (const auto& pair : split(body.substr(qmark + 1), '&')) {
            auto eq = pair.find('=');
            if (eq == std::string::npos) throw parse_error("malformed query parameter '" + pair + "'");
            kv[pair.substr(0, eq)] = pair.substr(eq + 1);
        }
    }
    if (spec.name == "canonical_class") {
        // Defaults reproduce preset_chain("canonical_class", n).
        spec.canonical.c_m = 2.0 / 3.0;
        spec.canonical.theta0 = -kPi / 2.0;
        spec.canonical.extra = {{0.0, 3, 1.0 / 3.0}};
        spec.right = named_state("y+");
    }
    for (const auto& [key, value] : kv) {
        if (key == "n") {
            spec.n = static_cast<int>(parse_double(value));
            if (spec.n < 1) throw parse_error("n must be >= 1");
        } else if (key == "left")
            spec.left = parse_state(value);
        else if (key == "right")
            spec.right = parse_state(value);
        else if (key == "u")
            spec.u = named_gate(value);
        else if (key == "v")
            spec.v = named_gate(value);
        else if (key == "cm")
            spec.canonical.c_m = parse_double(value);
        else if (key == "theta0")
            spec.canonical.theta0 = parse_double(value);
        else if (key == "thetas" || key == "paulis" || key == "weights") {
            auto parts = split(value, ',');
            if (spec.canonical.extra.size() < parts.size()) spec.canonical.extra.resize(parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (key == "thetas")
                    spec.canonical.extra[i].theta = parse_double(parts[i]);
                else if (key == "paulis")
                    spec.canonical.extra[i].pauli = pauli_label(parts[i]);
                else
                    spec.canonical.extra[i].weight = parse_double(parts[i]);
            }
        } else {
            throw parse_error("unknown preset parameter '" + key + "'");
        }
    }
    return spec;
}

}  // namespace cswire
