#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dec/errors.hpp"
#include "dec/form.hpp"
#include "dec/grid_complex.hpp"
#include "dec/operators.hpp"

namespace dec::io {

using json = nlohmann::json;

/// Malformed or inconsistent input document.
class parse_error : public error {
public:
    using error::error;
};

inline const char* component_name(int degree, int comp) {
    if (degree == 0) return "phi";
    if (degree == 2) return "psi";
    return comp == 0 ? "u" : "v";
}

inline json shape_to_json(const GridShape& g) {
    return {{"n", g.n}, {"m", g.m}, {"topology", to_string(g.topology)}};
}

inline GridShape shape_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        const int m = j.at("m").get<int>();
        const std::string topo = j.value("topology", std::string("torus"));
        Topology t;
        if (topo == "torus") t = Topology::Torus;
        else if (topo == "plane_window") t = Topology::PlaneWindow;
        else throw parse_error("unknown topology '" + topo + "'");
        return GridShape(n, m, t);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad shape: ") + e.what());
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        throw parse_error(e.what());
    }
}

/// Form document. Component arrays are nested rows: outer index s, inner k,
/// covering the ghost ring on a plane window.
inline json to_json(const Form& w) {
    const GridShape& g = w.shape();
    json comps = json::object();
    for (int c = 0; c < w.component_count(); ++c) {
        json rows = json::array();
        for (int si = 0; si < g.extent_s(); ++si) {
            json row = json::array();
            for (int ki = 0; ki < g.extent_k(); ++ki) row.push_back(w.data(c)[si * g.extent_k() + ki]);
            rows.push_back(std::move(row));
        }
        comps[component_name(w.degree(), c)] = std::move(rows);
    }
    return {{"shape", shape_to_json(g)}, {"degree", w.degree()}, {"components", std::move(comps)}};
}

inline Form form_from_json(const json& j) {
    try {
        const GridShape g = shape_from_json(j.at("shape"));
        const int degree = j.at("degree").get<int>();
        if (degree < 0 || degree > 2) throw parse_error("degree must be 0, 1 or 2");
        Form w(g, degree);
        const auto& comps = j.at("components");
        for (int c = 0; c < w.component_count(); ++c) {
            const char* name = component_name(degree, c);
            const auto& rows = comps.at(name);
            if (!rows.is_array() || static_cast<int>(rows.size()) != g.extent_s())
                throw parse_error(std::string("component '") + name + "' has the wrong number of rows");
            for (int si = 0; si < g.extent_s(); ++si) {
                const auto& row = rows[si];
                if (!row.is_array() || static_cast<int>(row.size()) != g.extent_k())
                    throw parse_error(std::string("component '") + name + "' row has the wrong length");
                for (int ki = 0; ki < g.extent_k(); ++ki) w.data(c)[si * g.extent_k() + ki] = row[ki].get<double>();
            }
        }
        return w;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad form document: ") + e.what());
    }
}

inline json to_json(const InhomogeneousForm& w) {
    return {{"shape", shape_to_json(w.shape())}, {"parts", {to_json(w.part(0)), to_json(w.part(1)), to_json(w.part(2))}}};
}

inline InhomogeneousForm inhomogeneous_from_json(const json& j) {
    try {
        const auto& parts = j.at("parts");
        if (!parts.is_array() || parts.size() != 3) throw parse_error("'parts' must hold three forms");
        auto w0 = form_from_json(parts[0]);
        auto w1 = form_from_json(parts[1]);
        auto w2 = form_from_json(parts[2]);
        return {std::move(w0), std::move(w1), std::move(w2)};
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad inhomogeneous form document: ") + e.what());
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        throw parse_error(e.what());
    }
}

/// Serialized operator matrix.
struct MatrixDocument {
    std::string op;
    int n = 0;
    int m = 0;
    std::string ordering;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    IntMatrix entries;

    friend bool operator==(const MatrixDocument&, const MatrixDocument&) = default;
};

inline MatrixDocument to_document(const OperatorMatrix& a, const GridShape& shape) {
    MatrixDocument doc{a.op, shape.n, shape.m, to_string(a.cols.kind), {}, {}, a.entries};
    for (const auto& c : a.rows.labels) doc.row_labels.push_back(label(c));
    for (const auto& c : a.cols.labels) doc.col_labels.push_back(label(c));
    return doc;
}

inline json to_json(const MatrixDocument& doc) {
    json entries = json::array();
    for (std::size_t i = 0; i < doc.entries.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < doc.entries.cols(); ++j) row.push_back(doc.entries(i, j));
        entries.push_back(std::move(row));
    }
    return {{"op", doc.op},
            {"shape", {{"n", doc.n}, {"m", doc.m}}},
            {"ordering", doc.ordering},
            {"row_labels", doc.row_labels},
            {"col_labels", doc.col_labels},
            {"entries", std::move(entries)}};
}

inline IntMatrix int_matrix_from_json(const json& rows) {
    if (!rows.is_array()) throw parse_error("matrix entries must be an array of rows");
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    IntMatrix out(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c) throw parse_error("matrix rows have unequal lengths");
        for (std::size_t j = 0; j < c; ++j) out(i, j) = rows[i][j].get<std::int64_t>();
    }
    return out;
}

inline MatrixDocument matrix_from_json(const json& j) {
    try {
        MatrixDocument doc;
        doc.op = j.at("op").get<std::string>();
        doc.n = j.at("shape").at("n").get<int>();
        doc.m = j.at("shape").at("m").get<int>();
        doc.ordering = j.at("ordering").get<std::string>();
        doc.row_labels = j.at("row_labels").get<std::vector<std::string>>();
        doc.col_labels = j.at("col_labels").get<std::vector<std::string>>();
        doc.entries = int_matrix_from_json(j.at("entries"));
        if (doc.row_labels.size() != doc.entries.rows() ||
            (doc.entries.rows() > 0 && doc.col_labels.size() != doc.entries.cols()))
            throw parse_error("label counts do not match entry dimensions");
        return doc;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad matrix document: ") + e.what());
    }
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    if (quoted) throw parse_error("unterminated quote in CSV");
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace detail

/// CSV export: a header row of column labels, then one row per output cell
/// starting with its label. Labels are quoted since they contain commas.
inline std::string to_csv(const MatrixDocument& doc) {
    std::ostringstream out;
    out << detail::csv_quote(doc.op);
    for (const auto& l : doc.col_labels) out << ',' << detail::csv_quote(l);
    out << '\n';
    for (std::size_t i = 0; i < doc.entries.rows(); ++i) {
        out << detail::csv_quote(doc.row_labels[i]);
        for (std::size_t j = 0; j < doc.entries.cols(); ++j) out << ',' << doc.entries(i, j);
        out << '\n';
    }
    return out.str();
}

/// Reads labels and entries back from to_csv output. Shape and ordering are not
/// part of the CSV and stay empty.
inline MatrixDocument matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty CSV");
    auto header = detail::csv_split(line);
    MatrixDocument doc;
    doc.op = header.front();
    doc.col_labels.assign(header.begin() + 1, header.end());
    std::vector<std::vector<std::int64_t>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = detail::csv_split(line);
        if (fields.size() != doc.col_labels.size() + 1) throw parse_error("CSV row has the wrong number of fields");
        doc.row_labels.push_back(fields.front());
        std::vector<std::int64_t> row;
        for (std::size_t j = 1; j < fields.size(); ++j) {
            try {
                std::size_t used = 0;
                row.push_back(std::stoll(fields[j], &used));
                if (used != fields[j].size()) throw parse_error("non-integer CSV entry '" + fields[j] + "'");
            } catch (const std::logic_error&) {
                throw parse_error("non-integer CSV entry '" + fields[j] + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    doc.entries = IntMatrix(rows.size(), doc.col_labels.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) doc.entries(i, j) = rows[i][j];
    return doc;
}

}  // namespace dec::io
