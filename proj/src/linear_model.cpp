// Copyright 2026 The muqut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "muqut/linear_model.hpp"

#include <stdexcept>

#include "text_util.hpp"

namespace muqut::ilp {

VarId LinearModel::add_binary(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<VarId>(names_.size() - 1);
}

std::uint32_t LinearModel::add_family(std::string name) {
  families_.push_back(std::move(name));
  return static_cast<std::uint32_t>(families_.size() - 1);
}

void LinearModel::add_constraint(std::uint32_t family, std::vector<Term> terms, Sense sense,
                                 int rhs) {
  for (const Term& t : terms) {
    if (t.var >= names_.size()) throw std::out_of_range("constraint references unknown variable");
  }
  if (family >= families_.size()) throw std::out_of_range("unknown constraint family");
  constraints_.push_back(Constraint{family, std::move(terms), sense, rhs});
}

long long LinearModel::evaluate(std::span<const std::int8_t> values) const {
  long long sum = 0;
  for (const Term& t : objective_) sum += static_cast<long long>(t.coef) * values[t.var];
  return sum;
}

long long LinearModel::first_violation(std::span<const std::int8_t> values) const {
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const Constraint& c = constraints_[i];
    long long lhs = 0;
    for (const Term& t : c.terms) lhs += static_cast<long long>(t.coef) * values[t.var];
    const bool ok = c.sense == Sense::LessEqual      ? lhs <= c.rhs
                    : c.sense == Sense::GreaterEqual ? lhs >= c.rhs
                                                     : lhs == c.rhs;
    if (!ok) return static_cast<long long>(i);
  }
  return -1;
}

namespace {

void append_expression(std::string& out, const std::vector<Term>& terms, const LinearModel& m) {
  if (terms.empty()) {
    // LP readers reject empty rows; 0 times any variable keeps them parseable.
    out += " 0 " + m.name(0);
    return;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % 8 == 0) out += "\n   ";
    const int c = terms[i].coef;
    if (i == 0) {
      out += c < 0 ? " - " : " ";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += std::to_string(c < 0 ? -c : c) + ' ' + m.name(terms[i].var);
  }
}

}  // namespace

std::string LinearModel::to_lp(std::string_view comment) const {
  std::string out;
  for (std::string_view line : detail::lines(comment)) {
    if (!line.empty()) out += "\\ " + std::string(line) + '\n';
  }
  out += "Minimize\n obj:";
  append_expression(out, objective_, *this);
  out += "\nSubject To\n";
  std::vector<std::size_t> ordinal(families_.size(), 0);
  for (const Constraint& c : constraints_) {
    out += ' ' + families_[c.family] + '_' + std::to_string(ordinal[c.family]++) + ':';
    append_expression(out, c.terms, *this);
    out += c.sense == Sense::LessEqual ? " <= " : c.sense == Sense::GreaterEqual ? " >= " : " = ";
    out += std::to_string(c.rhs) + '\n';
  }
  out += "Binary\n";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    out += ' ' + names_[i];
    if (i % 10 == 9 || i + 1 == names_.size()) out += '\n';
  }
  out += "End\n";
  return out;
}

}  // namespace muqut::ilp
