#pragma once

#include "mukai/cones.hpp"
#include "mukai/lattice.hpp"
#include "mukai/verlinde.hpp"
#include "mukai/walls.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mukai {

using Json = nlohmann::ordered_json;

/** Decimal string, the fixed encoding for values that can exceed 64 bits. */
inline std::string dec_string(const Int& x) { return x.str(); }

/** JSON number when the value fits a 64-bit signed integer, decimal string otherwise. */
inline Json int_json(const Int& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return static_cast<long long>(x);
    return x.str();
}

inline Int int_from_json(const Json& j, const std::string& where) {
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw std::domain_error(where + ": expected an integer");
}

inline Json coords_json(const NSClass& c) {
    Json a = Json::array();
    for (const Int& x : c.coords) a.push_back(int_json(x));
    return a;
}

inline NSClass coords_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::domain_error(where + ": expected a nonempty coordinate array");
    std::vector<Int> coords;
    for (const auto& x : j) coords.push_back(int_from_json(x, where));
    return NSClass(std::move(coords));
}

inline Json surface_to_json(const Surface& s) {
    Json gram = Json::array();
    for (const auto& row : s.gram) {
        Json r = Json::array();
        for (const Int& x : row) r.push_back(int_json(x));
        gram.push_back(std::move(r));
    }
    return Json{{"ns_rank", s.ns_rank},
                {"gram", std::move(gram)},
                {"H", coords_json(s.H)},
                {"n", int_json(s.n)},
                {"is_product", s.is_product}};
}

inline Surface surface_from_json(const Json& j) {
    if (!j.is_object()) throw std::domain_error("surface: expected a JSON object");
    for (const char* key : {"ns_rank", "gram", "H", "n", "is_product"})
        if (!j.contains(key)) throw std::domain_error(std::string("surface: missing field ") + key);
    if (!j["gram"].is_array()) throw std::domain_error("surface: gram must be an array of rows");
    std::vector<std::vector<Int>> gram;
    for (const auto& row : j["gram"]) {
        if (!row.is_array()) throw std::domain_error("surface: gram must be an array of rows");
        std::vector<Int> r;
        for (const auto& x : row) r.push_back(int_from_json(x, "surface: gram"));
        gram.push_back(std::move(r));
    }
    if (!j["is_product"].is_boolean())
        throw std::domain_error("surface: is_product must be a boolean");
    Surface s(std::move(gram), coords_from_json(j["H"], "surface: H"),
              j["is_product"].get<bool>());
    if (int_from_json(j["ns_rank"], "surface: ns_rank") != s.ns_rank)
        throw std::domain_error("surface: ns_rank does not match the gram matrix");
    if (int_from_json(j["n"], "surface: n") != s.n)
        throw std::domain_error("surface: n does not match H.H/2");
    return s;
}

inline Json vector_to_json(const MukaiVector& v) {
    return Json{{"r", int_json(v.r)}, {"c1", coords_json(v.c1)}, {"chi", int_json(v.chi)}};
}

inline MukaiVector vector_from_json(const Json& j) {
    if (!j.is_object()) throw std::domain_error("vector: expected a JSON object");
    for (const char* key : {"r", "c1", "chi"})
        if (!j.contains(key)) throw std::domain_error(std::string("vector: missing field ") + key);
    return {int_from_json(j["r"], "vector: r"), coords_from_json(j["c1"], "vector: c1"),
            int_from_json(j["chi"], "vector: chi")};
}

namespace detail {

inline Json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw std::domain_error(where + ": invalid JSON (" + std::string(e.what()) + ")");
    }
}

inline std::string slurp(const std::string& path, const std::string& where) {
    std::ifstream in(path);
    if (!in) throw std::domain_error(where + ": cannot read file " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline Int parse_int_token(const std::string& tok, const std::string& where) {
    if (!tok.empty()) {
        try {
            return Int(tok);
        } catch (const std::exception&) {
        }
    }
    throw std::domain_error(where + ": expected an integer, got '" + tok + "'");
}

/** Inline JSON if the text starts with '{', otherwise the content of a file. */
inline Json spec_to_json(const std::string& spec, const std::string& where) {
    const auto first = spec.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && spec[first] == '{') return parse_json_text(spec, where);
    return parse_json_text(slurp(spec, where), where);
}

}  // namespace detail

/**
 * Surface from the shorthand grammar rank1:n=<int>[,product] or product:n=<int>,
 * from inline JSON, or from a JSON file path.
 */
inline Surface parse_surface_spec(const std::string& spec) {
    if (spec.rfind("rank1:", 0) == 0 || spec.rfind("product:", 0) == 0) {
        const bool rank1 = spec.rfind("rank1:", 0) == 0;
        std::string body = spec.substr(spec.find(':') + 1);
        bool product_flag = !rank1;
        if (rank1 && body.size() >= 8 && body.compare(body.size() - 8, 8, ",product") == 0) {
            product_flag = true;
            body.resize(body.size() - 8);
        }
        if (body.rfind("n=", 0) != 0)
            throw std::domain_error(
                "surface: shorthand must be rank1:n=<int>[,product] or product:n=<int>");
        const Int n = detail::parse_int_token(body.substr(2), "surface: n");
        return rank1 ? Surface::rank_one(n, product_flag) : Surface::product(n);
    }
    return surface_from_json(detail::spec_to_json(spec, "surface"));
}

/** Mukai vector from inline JSON or a JSON file path. */
inline MukaiVector parse_vector_spec(const std::string& spec) {
    return vector_from_json(detail::spec_to_json(spec, "vector"));
}

/** Filtration data from a JSON array of {"v": MukaiVector, "ell": int} parts. */
inline HNPartition partition_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::domain_error("partition: expected a nonempty array of parts");
    HNPartition out;
    for (const auto& part : j) {
        if (!part.is_object() || !part.contains("v") || !part.contains("ell"))
            throw std::domain_error("partition: each part needs fields v and ell");
        out.parts.push_back(
            {vector_from_json(part["v"]), int_from_json(part["ell"], "partition: ell")});
    }
    return out;
}

/** Filtration data from inline JSON or a JSON file path. */
inline HNPartition parse_partition_spec(const std::string& spec) {
    const std::string where = "partition";
    const auto first = spec.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && spec[first] == '[')
        return partition_from_json(detail::parse_json_text(spec, where));
    return partition_from_json(detail::spec_to_json(spec, where));
}

inline Json wall_vector_to_json(const WallVector& u) {
    Json j;
    j["p"] = int_json(u.p);
    j["eta"] = coords_json(u.eta);
    j["q"] = int_json(u.q);
    j["pairing_with_v"] = int_json(u.pairing_with_v);
    j["slope_k"] = u.slope_k ? Json(rat_string(*u.slope_k)) : Json("all");
    return j;
}

inline Json verdict_to_json(const MovableVerdict& verdict) {
    Json j;
    j["movable"] = verdict.movable;
    j["positive"] = verdict.positive;
    j["coeff_w0"] = rat_string(verdict.coeff_w0);
    j["coeff_w1"] = rat_string(verdict.coeff_w1);
    if (verdict.exceptional)
        j["exceptional"] = Json{{"case", verdict.exceptional->case_label},
                                {"p", int_json(verdict.exceptional->p)},
                                {"e", int_json(verdict.exceptional->e)},
                                {"q", int_json(verdict.exceptional->q)}};
    j["checked_cases"] = verdict.checked_cases;
    return j;
}

}  // namespace mukai
