#include "tcpkit/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tcpkit/errors.hpp"

namespace tcpkit {

namespace {

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace

Json load_json(const std::string& path) { return parse_file(path); }
void store_json(const std::string& path, const Json& j) { write_file(path, j); }

Json tensor_to_json(const Tensor& t) {
    Json j;
    j["order"] = t.order();
    j["dim"] = t.dim();
    Json entries = Json::array();
    std::vector<int> idx(t.order());
    for (std::int64_t f = 0; f < t.size(); ++f) {
        if (t[f] == 0.0) continue;
        std::int64_t rem = f;
        for (int k = t.order() - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(rem % t.dim()) + 1;
            rem /= t.dim();
        }
        Json rec;
        rec["idx"] = idx;
        rec["val"] = t[f];
        entries.push_back(std::move(rec));
    }
    j["entries"] = std::move(entries);
    return j;
}

Tensor tensor_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("dim") || !j.contains("entries"))
        throw Error("tensor: expected object with order, dim, entries");
    const int order = j.at("order").get<int>();
    const int dim = j.at("dim").get<int>();
    if (order < 2) throw Error("tensor: order must be >= 2");
    if (dim < 1) throw Error("tensor: dim must be >= 1");

    std::vector<Coord> coords;
    const Json& entries = j.at("entries");
    if (!entries.is_array()) throw Error("tensor: entries must be an array");
    for (std::size_t r = 0; r < entries.size(); ++r) {
        const Json& rec = entries[r];
        std::ostringstream where;
        where << "entries[" << r << "]";
        if (!rec.is_object() || !rec.contains("idx") || !rec.contains("val"))
            throw Error(where.str() + ": expected {idx, val}");
        Coord c;
        c.idx = rec.at("idx").get<std::vector<int>>();
        c.val = rec.at("val").get<double>();
        if (!std::isfinite(c.val)) throw Error(where.str() + ": non-finite val");
        coords.push_back(std::move(c));
    }
    try {
        return build_tensor(order, dim, coords);
    } catch (const Error& e) {
        throw Error(std::string("tensor: ") + e.what());
    }
}

void store_tensor(const std::string& path, const Tensor& t) { write_file(path, tensor_to_json(t)); }

Tensor load_tensor(const std::string& path) {
    try {
        return tensor_from_json(parse_file(path));
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

Json vec_to_json(const Vec& v) {
    Json j;
    j["dim"] = v.size();
    j["values"] = v;
    return j;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("values"))
        throw Error("vector: expected object with dim, values");
    Vec v = j.at("values").get<Vec>();
    if (static_cast<std::size_t>(j.at("dim").get<int>()) != v.size())
        throw Error("vector: dim does not match values length");
    if (!all_finite(v)) throw Error("vector: non-finite value");
    return v;
}

void store_vec(const std::string& path, const Vec& v) { write_file(path, vec_to_json(v)); }

Vec load_vec(const std::string& path) {
    try {
        return vec_from_json(parse_file(path));
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

Json instance_to_json(const TcpInstance& inst) {
    Json j;
    j["tensor"] = tensor_to_json(inst.a);
    j["q"] = inst.q;
    return j;
}

TcpInstance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("tensor") || !j.contains("q"))
        throw Error("instance: expected object with tensor, q");
    Tensor t = tensor_from_json(j.at("tensor"));
    Vec q = j.at("q").get<Vec>();
    if (!all_finite(q)) throw Error("instance: q has non-finite values");
    return TcpInstance(std::move(t), std::move(q));
}

void store_instance(const std::string& path, const TcpInstance& inst) {
    write_file(path, instance_to_json(inst));
}

TcpInstance load_instance(const std::string& path) {
    try {
        return instance_from_json(parse_file(path));
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

Json verdict_to_json(const std::string& property, const Verdict& v) {
    Json j;
    j["property"] = property;
    j["status"] = to_string(v.status);
    if (v.witness) j["witness"] = *v.witness;
    if (v.witness_set) j["witness_set"] = *v.witness_set;
    if (v.certificate) j["min_value"] = v.certificate->min_value;
    if (!v.note.empty()) j["note"] = v.note;
    j["evals"] = v.evals;
    return j;
}

Json solution_to_json(const TcpSolution& s) {
    Json j;
    j["x"] = s.x;
    j["support"] = s.support;
    j["residuals"] = {{"nonneg_x", s.residuals.nonneg_x},
                      {"nonneg_w", s.residuals.nonneg_w},
                      {"compl", s.residuals.compl_}};
    return j;
}

Json solve_report_to_json(const SolveReport& r) {
    Json j;
    Json sols = Json::array();
    for (const TcpSolution& s : r.solutions) sols.push_back(solution_to_json(s));
    j["solutions"] = std::move(sols);
    j["complete"] = r.complete;
    j["continuum_suspected"] = r.continuum_suspected;
    j["budget_exhausted"] = r.budget_exhausted;
    j["stats"] = {{"iterations", r.stats.iterations}, {"starts", r.stats.starts}};
    j["evals"] = r.evals;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

} // namespace tcpkit
