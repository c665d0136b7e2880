#include "distlap/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace distlap {

std::string sha256_hex(std::string_view data) {
    const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += digits[md[i] >> 4];
        out += digits[md[i] & 15];
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

nlohmann::json edge_json(const Edge& e) { return nlohmann::json::array({e.u, e.v}); }

}  // namespace

void write_csv_summary(std::ostream& out, const SearchReport& rep) {
    out << "instance,tree,status,eigenvalue,cluster_size,outcome\n";
    for (const auto& r : rep.instances) {
        out << r.index << ',' << r.tree_id << ',' << to_string(r.status) << ',' << fmt(r.eigenvalue) << ',' << r.cluster_size
            << ',' << (r.status == Status::Holds ? to_string(r.outcome) : "-") << '\n';
    }
}

nlohmann::json to_json(const CaseClassification& c) {
    nlohmann::json j;
    j["outcome"] = to_string(c.outcome);
    j["reason"] = to_string(c.reason);
    j["characteristic_edge"] = c.characteristic_edge ? edge_json(*c.characteristic_edge) : nlohmann::json();
    j["characteristic_vertex"] = c.characteristic_vertex ? nlohmann::json(*c.characteristic_vertex) : nlohmann::json();
    j["sign_change_edges"] = c.sign_change_edges;
    j["zero_boundary_vertices"] = c.zero_boundary_vertices;
    j["witness"] = c.witness ? nlohmann::json::array({c.witness->first, c.witness->second}) : nlohmann::json();
    j["zero_threshold"] = c.zero_threshold_used;
    j["strictly_monotone"] = c.strictly_monotone;
    return j;
}

nlohmann::json to_json(const SearchReport& rep) {
    const SearchConfig& cfg = rep.config;
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["config"] = {
        {"kind", to_string(cfg.kind)},
        {"family", to_string(cfg.family)},
        {"trees", to_string(cfg.trees)},
        {"master_seed", cfg.master_seed},
        {"trials", cfg.trials},
        {"samples", cfg.samples},
        {"tolerances",
         {{"zero", cfg.tol.zero},
          {"cluster", cfg.tol.cluster},
          {"eig", cfg.tol.eig},
          {"refine", cfg.tol.refine},
          {"tightened_zero", cfg.tol.tightened_zero}}},
    };
    const std::uint64_t holds = rep.count(Status::Holds);
    j["totals"] = {
        {"instances", rep.total()},
        {"holds_strict", rep.holds_strict},
        {"holds_weak_only", holds - rep.holds_strict},
        {"surviving_candidates", rep.surviving_candidates()},
        {"candidates_relaxed_holds", rep.candidates_relaxed},
    };
    nlohmann::json counts = nlohmann::json::object();
    for (auto s : {Status::Holds, Status::ViolationCandidate, Status::InconclusiveMultiplicity, Status::InconclusiveNumeric}) {
        counts[to_string(s)] = rep.count(s);
    }
    j["status_counts"] = counts;
    j["inconclusive_multiplicity_fraction"] =
        rep.total() ? static_cast<double>(rep.count(Status::InconclusiveMultiplicity)) / static_cast<double>(rep.total()) : 0.0;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [size, count] : rep.cluster_histogram) hist[std::to_string(size)] = count;
    j["cluster_histogram"] = hist;

    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : rep.candidates) {
        nlohmann::json e;
        e["instance"] = c.instance.index;
        e["tree"] = c.instance.tree_id;
        e["status"] = to_string(c.instance.status);
        e["n"] = c.n;
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& ed : c.edges) edges.push_back(edge_json(ed));
        e["edges"] = edges;
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < c.n; ++i) {
            rows.push_back(std::vector<double>(c.matrix.begin() + i * c.n, c.matrix.begin() + (i + 1) * c.n));
        }
        e["matrix"] = rows;
        e["eigenvalue"] = c.instance.eigenvalue;
        e["vector"] = c.vector;
        e["refinement_residual"] = c.refinement_residual;
        e["classification"] = to_json(c.classification);
        e["revalidated"] = c.revalidated;
        e["relaxed_holds"] = c.instance.relaxed_holds;
        cands.push_back(e);
    }
    j["candidates"] = cands;

    std::ostringstream csv;
    write_csv_summary(csv, rep);
    j["instance_digest"] = sha256_hex(csv.str());
    j["digest"] = report_digest(j);
    j["run"] = {{"wall_seconds", rep.wall_seconds}, {"workers", cfg.workers}, {"simd", rep.simd}};
    return j;
}

std::string report_digest(const nlohmann::json& report) {
    nlohmann::json body = report;
    body.erase("run");
    body.erase("digest");
    return sha256_hex(body.dump());
}

}  // namespace distlap
