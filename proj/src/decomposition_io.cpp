// Copyright 2026 The qgd Authors
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

#include "qgd/decomposition_io.hpp"

#include "qgd/errors.hpp"

#include <fstream>
#include <sstream>

namespace qgd {

using nlohmann::json;

namespace {

UnitaryFactor factor_from_json(const json& node, int dim) {
    if (!node.is_object()) throw ParseError("factor must be an object");
    if (node.contains("pauli")) {
        if (dim != 2) throw ParseError("Pauli factors require dim = 2");
        return UnitaryFactor::pauli(node.at("pauli").get<std::string>());
    }
    if (node.contains("dense")) {
        const json& entries = node.at("dense");
        if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim) * dim) {
            throw ParseError("dense factor needs dim*dim [re, im] entries");
        }
        CMatrix m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                const json& e = entries.at(static_cast<std::size_t>(r) * dim + c);
                if (!e.is_array() || e.size() != 2) throw ParseError("dense entry must be [re, im]");
                m(r, c) = {e.at(0).get<double>(), e.at(1).get<double>()};
            }
        }
        return UnitaryFactor::from_matrix(std::move(m));
    }
    throw ParseError("factor needs a \"pauli\" or \"dense\" key");
}

std::optional<Point> point_from_json(const json& doc, const char* key, int dim) {
    if (!doc.contains(key)) return std::nullopt;
    const auto values = doc.at(key).get<std::vector<double>>();
    if (static_cast<int>(values.size()) != dim) throw ParseError(std::string(key) + " has the wrong length");
    return Point::normalized(Eigen::Map<const RVector>(values.data(), dim));
}

}  // namespace

TensorDecomposition decomposition_from_json(const json& doc) {
    try {
        const int dim = doc.at("dim").get<int>();
        const int p = doc.at("p").get<int>();
        const double prefactor = doc.value("prefactor", 1.0);
        if (dim < 1 || p < 1) throw ParseError("dim and p must be positive");
        std::vector<TensorDecomposition::Term> terms;
        for (const json& term_node : doc.at("terms")) {
            if (!term_node.is_array() || term_node.size() != static_cast<std::size_t>(p)) {
                throw ParseError("every term must list exactly p factors");
            }
            TensorDecomposition::Term term;
            for (const json& f : term_node) term.push_back(factor_from_json(f, dim));
            terms.push_back(std::move(term));
        }
        return TensorDecomposition(std::move(terms), prefactor);
    } catch (const json::exception& e) {
        throw ParseError(std::string("decomposition JSON: ") + e.what());
    } catch (const ContractViolation& e) {
        throw ParseError(std::string("decomposition JSON: ") + e.what());
    } catch (const DimensionError& e) {
        throw ParseError(std::string("decomposition JSON: ") + e.what());
    }
}

json decomposition_to_json(const TensorDecomposition& decomp) {
    json terms = json::array();
    for (const auto& term : decomp.terms()) {
        json row = json::array();
        for (const auto& f : term) {
            if (f.pauli_tag()) {
                row.push_back({{"pauli", *f.pauli_tag()}});
                continue;
            }
            json entries = json::array();
            for (int r = 0; r < f.dim(); ++r) {
                for (int c = 0; c < f.dim(); ++c) {
                    entries.push_back({f.matrix()(r, c).real(), f.matrix()(r, c).imag()});
                }
            }
            row.push_back({{"dense", entries}});
        }
        terms.push_back(row);
    }
    return {{"dim", decomp.dim()}, {"p", decomp.order()}, {"prefactor", decomp.prefactor()}, {"terms", terms}};
}

Problem parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("problem file must hold a JSON object");
    TensorDecomposition decomp = decomposition_from_json(doc);
    try {
        auto x0 = point_from_json(doc, "x0", decomp.dim());
        auto reference = point_from_json(doc, "reference", decomp.dim());
        return {std::move(decomp), std::move(x0), std::move(reference)};
    } catch (const json::exception& e) {
        throw ParseError(std::string("problem JSON: ") + e.what());
    } catch (const ContractViolation& e) {
        throw ParseError(std::string("problem JSON: ") + e.what());
    }
}

Problem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

json problem_to_json(const Problem& problem) {
    json doc = decomposition_to_json(problem.decomp);
    auto as_array = [](const Point& p) { return std::vector<double>(p.coords().begin(), p.coords().end()); };
    if (problem.x0) doc["x0"] = as_array(*problem.x0);
    if (problem.reference) doc["reference"] = as_array(*problem.reference);
    return doc;
}

}  // namespace qgd
