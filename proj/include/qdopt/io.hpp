/*
Copyright 2026 qdopt developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdopt/dataset.hpp"
#include "qdopt/errors.hpp"
#include "qdopt/factor_model.hpp"
#include "qdopt/problem.hpp"
#include "qdopt/rbm.hpp"

namespace qdopt {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cell));
            cell.clear();
        } else {
            cell += c;
        }
    }
    out.push_back(trim(cell));
    return out;
}

inline double parse_double(const std::string& tok, std::size_t line_no, const char* what) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + tok.size() || tok.empty())
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
    return v;
}

inline std::size_t parse_index(const std::string& tok, std::size_t line_no, const char* what) {
    if (tok.empty() || tok.size() > 18 ||
        tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + tok + "'");
    return static_cast<std::size_t>(std::stoull(tok));
}

inline std::string fmt_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw InputError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// Problem text format. First line `ising N` or `qubo N [min|max]`; body lines
// `i j value` with 0-based i <= j, one entry per unordered pair; `#` starts a
// comment. Unlisted pairs are zero.
// ---------------------------------------------------------------------------

// Either kind, behind one parse; exactly one of the optionals is set.
struct ParsedProblem {
    bool is_ising = false;
    IsingProblem ising;
    QuboProblem qubo;
};

inline ParsedProblem parse_problem_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    ParsedProblem out;
    std::size_t n = 0;
    std::set<std::pair<std::size_t, std::size_t>> seen;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        std::vector<std::string> tok = detail::split_ws(line);
        if (tok.empty()) continue;

        if (!have_header) {
            if (tok[0] == "ising") {
                if (tok.size() != 2) throw ParseError("line " + std::to_string(line_no) +
                                                      ": expected 'ising N'");
                n = detail::parse_index(tok[1], line_no, "size");
                if (n < 1) throw ParseError("line " + std::to_string(line_no) + ": n must be >= 1");
                out.is_ising = true;
                out.ising.n = n;
                out.ising.J = Matrix(n, n, 0.0);
            } else if (tok[0] == "qubo") {
                if (tok.size() != 2 && tok.size() != 3)
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": expected 'qubo N [min|max]'");
                n = detail::parse_index(tok[1], line_no, "size");
                if (n < 1) throw ParseError("line " + std::to_string(line_no) + ": n must be >= 1");
                out.is_ising = false;
                out.qubo.n = n;
                out.qubo.Q = Matrix(n, n, 0.0);
                out.qubo.direction = Direction::Minimize;
                if (tok.size() == 3) {
                    if (tok[2] == "min") out.qubo.direction = Direction::Minimize;
                    else if (tok[2] == "max") out.qubo.direction = Direction::Maximize;
                    else throw ParseError("line " + std::to_string(line_no) +
                                          ": direction must be 'min' or 'max'");
                }
            } else {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header 'ising N' or 'qubo N [min|max]'");
            }
            have_header = true;
            continue;
        }

        if (tok.size() != 3)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'i j value'");
        std::size_t i = detail::parse_index(tok[0], line_no, "index");
        std::size_t j = detail::parse_index(tok[1], line_no, "index");
        double v = detail::parse_double(tok[2], line_no, "value");
        if (i >= n || j >= n)
            throw ParseError("line " + std::to_string(line_no) + ": index out of range");
        if (i > j)
            throw ParseError("line " + std::to_string(line_no) + ": require i <= j");
        if (out.is_ising && i == j)
            throw ParseError("line " + std::to_string(line_no) +
                             ": ising entries must be off-diagonal");
        if (!std::isfinite(v))
            throw ParseError("line " + std::to_string(line_no) + ": value must be finite");
        if (!seen.insert({i, j}).second)
            throw ParseError("line " + std::to_string(line_no) + ": duplicate pair (" +
                             std::to_string(i) + ", " + std::to_string(j) + ")");
        if (out.is_ising) {
            out.ising.J(i, j) = out.ising.J(j, i) = v;
        } else {
            out.qubo.Q(i, j) = out.qubo.Q(j, i) = v;
        }
    }
    if (!have_header) throw ParseError("empty problem file: missing header line");
    if (out.is_ising) validate_ising(out.ising);
    else validate_qubo(out.qubo);
    return out;
}

inline ParsedProblem load_problem(const std::string& path) {
    return parse_problem_text(read_text_file(path));
}

// Text form of an Ising instance. The format carries no constant term, so a
// nonzero offset cannot round-trip and is refused.
inline std::string ising_to_text(const IsingProblem& p) {
    validate_ising(p);
    if (p.offset != 0.0)
        throw InputError("ising_to_text: nonzero offset does not fit the text format");
    std::string s = "ising " + std::to_string(p.n) + "\n";
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = i + 1; j < p.n; ++j)
            if (p.J(i, j) != 0.0)
                s += std::to_string(i) + " " + std::to_string(j) + " " +
                     detail::fmt_g17(p.J(i, j)) + "\n";
    return s;
}

inline std::string qubo_to_text(const QuboProblem& p) {
    validate_qubo(p);
    std::string s = "qubo " + std::to_string(p.n) +
                    (p.direction == Direction::Maximize ? " max\n" : " min\n");
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = i; j < p.n; ++j)
            if (p.Q(i, j) != 0.0)
                s += std::to_string(i) + " " + std::to_string(j) + " " +
                     detail::fmt_g17(p.Q(i, j)) + "\n";
    return s;
}

// ---------------------------------------------------------------------------
// Dataset CSV. Header `b0,...,b{n-1},target[,target2,...]`; bit cells must be
// exactly 0 or 1.
// ---------------------------------------------------------------------------

inline PropertyDataset parse_dataset_csv(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    PropertyDataset d;
    bool have_header = false;
    BinaryVector bits;
    std::vector<double> targets;

    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (detail::trim(raw).empty()) continue;
        std::vector<std::string> cells = detail::split_csv(raw);

        if (!have_header) {
            std::size_t n = 0;
            while (n < cells.size() && cells[n] == "b" + std::to_string(n)) ++n;
            if (n < 1) throw ParseError("line 1: header must start with 'b0'");
            if (n == cells.size())
                throw ParseError("line 1: header needs at least one target column");
            d.n = n;
            d.target_names.assign(cells.begin() + static_cast<std::ptrdiff_t>(n), cells.end());
            for (const std::string& name : d.target_names)
                if (name.empty()) throw ParseError("line 1: empty target column name");
            bits.resize(n);
            targets.resize(d.target_names.size());
            have_header = true;
            continue;
        }

        if (cells.size() != d.n + d.target_names.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(d.n + d.target_names.size()) + " cells, got " +
                             std::to_string(cells.size()));
        for (std::size_t i = 0; i < d.n; ++i) {
            if (cells[i] == "0") bits[i] = 0;
            else if (cells[i] == "1") bits[i] = 1;
            else throw ParseError("line " + std::to_string(line_no) + ": bit cell must be 0 or 1");
        }
        for (std::size_t t = 0; t < targets.size(); ++t)
            targets[t] = detail::parse_double(cells[d.n + t], line_no, "target");
        d.append(bits, targets);
    }
    if (!have_header) throw ParseError("empty dataset: missing CSV header");
    validate_dataset(d);
    return d;
}

inline PropertyDataset load_dataset(const std::string& path) {
    return parse_dataset_csv(read_text_file(path));
}

inline std::string dataset_to_csv(const PropertyDataset& d) {
    validate_dataset(d);
    std::string s;
    for (std::size_t i = 0; i < d.n; ++i) s += "b" + std::to_string(i) + ",";
    for (std::size_t t = 0; t < d.target_cols(); ++t) {
        s += d.target_names[t];
        s += (t + 1 < d.target_cols()) ? "," : "\n";
    }
    for (std::size_t r = 0; r < d.count(); ++r) {
        const std::uint8_t* row = d.row(r);
        for (std::size_t i = 0; i < d.n; ++i) s += row[i] ? "1," : "0,";
        for (std::size_t t = 0; t < d.target_cols(); ++t) {
            s += detail::fmt_g17(d.target(r, t));
            s += (t + 1 < d.target_cols()) ? "," : "\n";
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Model JSON.
// ---------------------------------------------------------------------------

namespace detail {

inline json require_object(const std::string& text, const char* what) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(what) + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
    return j;
}

inline std::vector<double> number_array(const json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(std::string(what) + ": missing array field '" + key + "'");
    std::vector<double> out;
    out.reserve(j[key].size());
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw ParseError(std::string(what) + ": non-numeric entry in '" +
                                             key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

inline std::size_t size_field(const json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw ParseError(std::string(what) + ": missing non-negative integer field '" + key +
                         "'");
    return j[key].get<std::size_t>();
}

inline Matrix matrix_from_flat(const std::vector<double>& flat, std::size_t rows,
                               std::size_t cols, const char* key, const char* what) {
    if (flat.size() != rows * cols)
        throw ParseError(std::string(what) + ": '" + key + "' must have " +
                         std::to_string(rows * cols) + " entries, got " +
                         std::to_string(flat.size()));
    Matrix m(rows, cols, 0.0);
    for (std::size_t i = 0; i < flat.size(); ++i) m.data()[i] = flat[i];
    return m;
}

}  // namespace detail

inline json fm_to_json(const FactorModel& m) {
    validate_factor_model(m);
    json j;
    j["n"] = m.n;
    j["K"] = m.K;
    j["V"] = m.V.data();
    j["target_transform"] = {{"scale", m.transform.scale}, {"shift", m.transform.shift}};
    return j;
}

inline FactorModel fm_from_json(const std::string& text) {
    json j = detail::require_object(text, "fm model");
    FactorModel m;
    m.n = detail::size_field(j, "n", "fm model");
    m.K = detail::size_field(j, "K", "fm model");
    if (m.n < 1 || m.K < 1) throw ParseError("fm model: n and K must be >= 1");
    m.V = detail::matrix_from_flat(detail::number_array(j, "V", "fm model"), m.n, m.K, "V",
                                   "fm model");
    if (!j.contains("target_transform") || !j["target_transform"].is_object())
        throw ParseError("fm model: missing object field 'target_transform'");
    const json& tf = j["target_transform"];
    if (!tf.contains("scale") || !tf["scale"].is_number() || !tf.contains("shift") ||
        !tf["shift"].is_number())
        throw ParseError("fm model: target_transform needs numeric 'scale' and 'shift'");
    m.transform.scale = tf["scale"].get<double>();
    m.transform.shift = tf["shift"].get<double>();
    try {
        validate_factor_model(m);
    } catch (const Error& e) {
        throw ParseError(std::string("fm model: ") + e.what());
    }
    if (!std::isfinite(m.transform.scale) || !std::isfinite(m.transform.shift) ||
        m.transform.scale == 0.0)
        throw ParseError("fm model: target_transform must be finite with nonzero scale");
    return m;
}

inline json rbm_to_json(const RbmModel& m) {
    validate_rbm(m);
    json j;
    j["n_v"] = m.n_v;
    j["n_h"] = m.n_h;
    j["W"] = m.W.data();
    j["b_v"] = m.b_v;
    j["b_h"] = m.b_h;
    return j;
}

inline RbmModel rbm_from_json(const std::string& text) {
    json j = detail::require_object(text, "rbm model");
    RbmModel m;
    m.n_v = detail::size_field(j, "n_v", "rbm model");
    m.n_h = detail::size_field(j, "n_h", "rbm model");
    if (m.n_v < 1 || m.n_h < 1) throw ParseError("rbm model: n_v and n_h must be >= 1");
    m.W = detail::matrix_from_flat(detail::number_array(j, "W", "rbm model"), m.n_v, m.n_h,
                                   "W", "rbm model");
    m.b_v = detail::number_array(j, "b_v", "rbm model");
    m.b_h = detail::number_array(j, "b_h", "rbm model");
    try {
        validate_rbm(m);
    } catch (const Error& e) {
        throw ParseError(std::string("rbm model: ") + e.what());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Solution JSON.
// ---------------------------------------------------------------------------

inline json solution_to_json(const Solution& sol) {
    json j;
    j["energy"] = sol.energy;
    j["config"] = sol.config;
    j["seed"] = sol.seed;
    j["restart_index"] = sol.restart_index;
    j["best_step"] = sol.best_step;
    return j;
}

}  // namespace qdopt
