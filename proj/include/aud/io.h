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

#ifndef AUD_IO_H
#define AUD_IO_H

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "aud/qmath.h"
#include "aud/sdp.h"

namespace aud::io {

/// A cell of an output table. monostate means "not applicable".
using Value = std::variant<std::monostate, double, long, bool, std::string>;

/// Fixed-column table, written as CSV (header + rows) or as a JSON array of
/// objects with the same keys. Numbers use 12 significant digits.
class Table {
   public:
    explicit Table(std::vector<std::string> columns);

    void add(std::vector<Value> row);
    /// Sorts rows lexicographically, for order-independent output.
    void sort();

    const std::vector<std::string> &columns() const { return columns_; }
    const std::vector<std::vector<Value>> &rows() const { return rows_; }

    void write_csv(std::ostream &out) const;
    void write_json(std::ostream &out) const;

   private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Value>> rows_;
};

std::string format_number(double v);

/// {"states": [matrix, ...], "priors": [...]} with each matrix a list of rows
/// of [re, im] pairs. Validated on load.
StateEnsemble ensemble_from_json(const std::string &text);
std::string ensemble_to_json(const StateEnsemble &ens);

/// {"povm": [matrix, ...]} in the same matrix encoding.
Povm povm_from_json(const std::string &text);

/// p_fail, flavor, status, errors and the POVM as one JSON object.
std::string solution_to_json(const DiscriminationSolution &sol);

std::string read_file(const std::string &path);

}  // namespace aud::io

#endif
