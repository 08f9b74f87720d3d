#include "ghecke/module_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ghecke {

using nlohmann::json;

namespace {

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_of_json(const json& rows, int dim) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw input_error("matrix block has wrong row count");
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw input_error("matrix block has wrong column count");
        for (int j = 0; j < dim; ++j) {
            if (!row[j].is_string()) throw input_error("matrix entries must be rational strings");
            m(i, j) = rat_parse(row[j].get<std::string>());
        }
    }
    return m;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("malformed JSON");
    return j;
}

}  // namespace

std::string datum_to_json(const RootDatum& rd) {
    json j;
    j["family"] = std::string(1, rd.family);
    j["rank"] = rd.rank;
    json ks = json::array();
    for (const Rat& x : rd.k) ks.push_back(rat_str(x));
    j["k"] = std::move(ks);
    return j.dump();
}

std::string module_to_json(const HModule& x) {
    json j;
    j["datum"] = parse(datum_to_json(*x.datum));
    j["dim"] = x.dim;
    json t = json::object();
    for (size_t a = 0; a < x.support.size(); ++a)
        t["s" + std::to_string(x.support[a] + 1)] = mat_to_json(x.t[a]);
    j["t"] = std::move(t);
    json v = json::object();
    for (int i = 0; i < x.datum->rank; ++i) v["a" + std::to_string(i + 1)] = mat_to_json(x.v[i]);
    j["v"] = std::move(v);
    j["label"] = x.label;
    return j.dump(2);
}

void write_module_file(const HModule& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << module_to_json(x) << "\n";
}

DatumSpec datum_spec_of_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("datum")) throw input_error("missing datum block");
    const json& d = j["datum"];
    if (!d.contains("family") || !d.contains("rank") || !d.contains("k"))
        throw input_error("datum block needs family, rank, k");
    std::string fam = d["family"].get<std::string>();
    if (fam.size() != 1) throw input_error("family must be a single letter");
    DatumSpec spec;
    spec.family = fam[0];
    spec.rank = d["rank"].get<int>();
    for (const auto& e : d["k"]) spec.k.push_back(rat_parse(e.get<std::string>()));
    return spec;
}

HModule module_of_json(const std::string& text, const RootDatum& rd) {
    json j = parse(text);
    DatumSpec spec = datum_spec_of_json(text);
    if (spec.family != rd.family || spec.rank != rd.rank || spec.k != rd.k)
        throw input_error("module datum does not match the requested datum");
    if (!j.contains("dim") || !j.contains("t") || !j.contains("v"))
        throw input_error("module file needs dim, t, v");
    HModule x;
    x.datum = &rd;
    x.dim = j["dim"].get<int>();
    if (x.dim <= 0) throw input_error("dim must be positive");
    for (const auto& [key, val] : j["t"].items()) {
        if (key.size() < 2 || key[0] != 's') throw input_error("bad t key: " + key);
        int idx = std::stoi(key.substr(1)) - 1;
        if (idx < 0 || idx >= rd.rank) throw input_error("t index out of range: " + key);
        x.support.push_back(idx);
        (void)val;
    }
    std::sort(x.support.begin(), x.support.end());
    for (int s : x.support) x.t.push_back(mat_of_json(j["t"]["s" + std::to_string(s + 1)], x.dim));
    for (int i = 0; i < rd.rank; ++i) {
        std::string key = "a" + std::to_string(i + 1);
        if (!j["v"].contains(key)) throw input_error("missing v key: " + key);
        x.v.push_back(mat_of_json(j["v"][key], x.dim));
    }
    if (j.contains("label")) x.label = j["label"].get<std::string>();
    return x;
}

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}
}  // namespace

DatumSpec read_datum_spec(const std::string& path) {
    return datum_spec_of_json(slurp(path));
}

HModule read_module_file(const std::string& path, const RootDatum& rd) {
    return module_of_json(slurp(path), rd);
}

bool same_datum(const DatumSpec& a, const DatumSpec& b) {
    return a.family == b.family && a.rank == b.rank && a.k == b.k;
}

}  // namespace ghecke
