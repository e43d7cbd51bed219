// Copyright 2026 The aud Authors
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

#include "aud/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aud::io {

namespace {

using nlohmann::json;

json number_json(double v) {
    // Round-trips through the 12-digit text form so JSON and CSV agree.
    return std::isfinite(v) ? json(std::stod(format_number(v))) : json(nullptr);
}

json value_json(const Value &v) {
    if (const auto *d = std::get_if<double>(&v)) return number_json(*d);
    if (const auto *l = std::get_if<long>(&v)) return json(*l);
    if (const auto *b = std::get_if<bool>(&v)) return json(*b);
    if (const auto *s = std::get_if<std::string>(&v)) return json(*s);
    return json(nullptr);
}

std::string value_csv(const Value &v) {
    if (const auto *d = std::get_if<double>(&v)) return std::isfinite(*d) ? format_number(*d) : "";
    if (const auto *l = std::get_if<long>(&v)) return std::to_string(*l);
    if (const auto *b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    if (const auto *s = std::get_if<std::string>(&v)) return *s;
    return "";
}

json matrix_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (int c = 0; c < m.cols(); c++) {
            row.push_back(json::array({number_json(m(r, c).real()), number_json(m(r, c).imag())}));
        }
        rows.push_back(row);
    }
    return rows;
}

ComplexMatrix matrix_from(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError("matrix must be a non-empty array of rows");
    }
    const auto n = static_cast<int>(j.size());
    ComplexMatrix m(n, n);
    for (int r = 0; r < n; r++) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != n) {
            throw ValidationError("matrix must be square");
        }
        for (int c = 0; c < n; c++) {
            const auto &e = j[r][c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ValidationError("matrix entries must be [re, im] pairs");
            }
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

json parse(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add(std::vector<Value> row) {
    if (row.size() != columns_.size()) {
        throw ValidationError("row width does not match the header");
    }
    rows_.push_back(std::move(row));
}

void Table::sort() { std::stable_sort(rows_.begin(), rows_.end()); }

void Table::write_csv(std::ostream &out) const {
    for (size_t c = 0; c < columns_.size(); c++) {
        out << (c ? "," : "") << columns_[c];
    }
    out << '\n';
    for (const auto &row : rows_) {
        for (size_t c = 0; c < row.size(); c++) {
            out << (c ? "," : "") << value_csv(row[c]);
        }
        out << '\n';
    }
}

void Table::write_json(std::ostream &out) const {
    json arr = json::array();
    for (const auto &row : rows_) {
        json obj = json::object();
        for (size_t c = 0; c < row.size(); c++) {
            obj[columns_[c]] = value_json(row[c]);
        }
        arr.push_back(obj);
    }
    out << arr.dump(1) << '\n';
}

StateEnsemble ensemble_from_json(const std::string &text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("states") || !j.contains("priors") || !j["states"].is_array() ||
        !j["priors"].is_array()) {
        throw ValidationError("ensemble needs 'states' and 'priors' arrays");
    }
    std::vector<DensityMatrix> states;
    for (const auto &s : j["states"]) {
        states.emplace_back(matrix_from(s));
    }
    std::vector<double> priors;
    for (const auto &p : j["priors"]) {
        if (!p.is_number()) {
            throw ValidationError("priors must be numbers");
        }
        priors.push_back(p.get<double>());
    }
    return StateEnsemble(std::move(states), std::move(priors));
}

std::string ensemble_to_json(const StateEnsemble &ens) {
    json j;
    j["states"] = json::array();
    for (const auto &s : ens.states()) {
        j["states"].push_back(matrix_json(s.mat()));
    }
    j["priors"] = ens.priors();
    return j.dump(1);
}

Povm povm_from_json(const std::string &text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("povm") || !j["povm"].is_array()) {
        throw ValidationError("expected a 'povm' array");
    }
    std::vector<ComplexMatrix> elements;
    for (const auto &e : j["povm"]) {
        elements.push_back(matrix_from(e));
    }
    return Povm(std::move(elements));
}

std::string solution_to_json(const DiscriminationSolution &sol) {
    json j;
    j["p_fail"] = number_json(sol.p_fail);
    j["flavor"] = flavor_name(sol.flavor);
    j["solver_status"] = solver_status_name(sol.status);
    j["gap"] = number_json(sol.gap);
    j["iterations"] = sol.iterations;
    j["per_hypothesis_error"] = json::array();
    for (double e : sol.per_hypothesis_error) {
        j["per_hypothesis_error"].push_back(number_json(e));
    }
    j["povm"] = json::array();
    for (const auto &e : sol.povm.elements()) {
        j["povm"].push_back(matrix_json(e));
    }
    return j.dump(1);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace aud::io
