#pragma once

#include <string>

#include "json.hpp"

#include "tcpkit/classify.hpp"
#include "tcpkit/tcp.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

using Json = nlohmann::ordered_json;

// Sparse COO tensor file: {"order": m, "dim": n, "entries": [{"idx":
// [i1..im], "val": v}, ...]}, 1-based indices, unlisted entries zero,
// duplicate idx is a load error. Store emits nonzeros in flat order; store
// then load is bitwise lossless (shortest round-trip float formatting).
Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);
void store_tensor(const std::string& path, const Tensor& t);
Tensor load_tensor(const std::string& path);

// Vector file: {"dim": n, "values": [..]}
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);
void store_vec(const std::string& path, const Vec& v);
Vec load_vec(const std::string& path);

// Instance file: {"tensor": <tensor>, "q": [..]}
Json instance_to_json(const TcpInstance& inst);
TcpInstance instance_from_json(const Json& j);
void store_instance(const std::string& path, const TcpInstance& inst);
TcpInstance load_instance(const std::string& path);

// Report records
Json verdict_to_json(const std::string& property, const Verdict& v);
Json solution_to_json(const TcpSolution& s);
Json solve_report_to_json(const SolveReport& r);

Json load_json(const std::string& path);
void store_json(const std::string& path, const Json& j);

} // namespace tcpkit
