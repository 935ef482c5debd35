// Copyright 2026 The hems-scheduler Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "hems/milp/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_set>

namespace hems::milp {

namespace {

std::string sanitize(const std::string& raw, const std::string& fallback) {
    std::string s;
    for (char c : raw) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
        s.push_back(ok ? c : '_');
    }
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.') s = fallback + s;
    return s;
}

std::string number(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

// LP format wants at most ~510 characters per line; break long rows.
void write_terms(std::ostream& out, const std::vector<Term>& terms,
                 const std::vector<std::string>& names) {
    std::size_t column = 0;
    bool first = true;
    for (const Term& t : terms) {
        std::string piece;
        if (t.coef < 0) {
            piece = " - ";
        } else if (!first) {
            piece = " + ";
        } else {
            piece = " ";
        }
        const double mag = std::abs(t.coef);
        if (mag != 1.0) piece += number(mag) + " ";
        piece += names[t.var.index()];
        if (column + piece.size() > 200) {
            out << "\n   ";
            column = 3;
        }
        out << piece;
        column += piece.size();
        first = false;
    }
    if (terms.empty()) out << " 0 " << (names.empty() ? std::string("x0") : names.front());
}

}  // namespace

void write_lp(std::ostream& out, const Model& model) {
    std::vector<std::string> names;
    std::unordered_set<std::string> used;
    for (std::size_t j = 0; j < model.num_variables(); ++j) {
        std::string n = sanitize(model.variables()[j].name, "x");
        if (n.empty() || !used.insert(n).second) {
            n = "x" + std::to_string(j) + "_" + n;
            used.insert(n);
        }
        names.push_back(n);
    }

    out << "\\ hems model: " << model.num_variables() << " variables, "
        << model.num_constraints() << " constraints, " << model.num_binaries() << " binaries\n";
    out << "Minimize\n obj:";
    write_terms(out, model.objective_terms(), names);
    out << "\nSubject To\n";
    std::unordered_set<std::string> row_names;
    for (std::size_t i = 0; i < model.num_constraints(); ++i) {
        const LinearConstraint& c = model.constraints()[i];
        std::string rn = sanitize(c.tag, "r");
        if (!row_names.insert(rn).second) {
            rn = "r" + std::to_string(i) + "_" + rn;
            row_names.insert(rn);
        }
        out << " " << rn << ":";
        write_terms(out, c.terms, names);
        switch (c.sense) {
            case Sense::kLessEqual: out << " <= "; break;
            case Sense::kEqual: out << " = "; break;
            case Sense::kGreaterEqual: out << " >= "; break;
        }
        out << number(c.rhs) << "\n";
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < model.num_variables(); ++j) {
        const Variable& v = model.variables()[j];
        if (v.kind == VarKind::kBinary && v.lower == 0.0 && v.upper == 1.0) continue;
        if (v.lower == v.upper) {
            out << " " << names[j] << " = " << number(v.lower) << "\n";
        } else if (std::isinf(v.lower) && std::isinf(v.upper)) {
            out << " " << names[j] << " free\n";
        } else {
            out << " " << (std::isinf(v.lower) ? std::string("-inf") : number(v.lower)) << " <= "
                << names[j] << " <= "
                << (std::isinf(v.upper) ? std::string("+inf") : number(v.upper)) << "\n";
        }
    }
    bool any_binary = false;
    for (std::size_t j = 0; j < model.num_variables(); ++j) {
        if (model.variables()[j].kind != VarKind::kBinary) continue;
        if (!any_binary) out << "Binaries\n";
        any_binary = true;
        out << " " << names[j] << "\n";
    }
    out << "End\n";
}

std::string to_lp_string(const Model& model) {
    std::ostringstream os;
    write_lp(os, model);
    return os.str();
}

}  // namespace hems::milp
