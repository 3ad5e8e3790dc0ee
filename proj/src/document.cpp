#include "qmt/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qmt/error.hpp"

namespace qmt {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::Parse, what);
}

double number(const json& j, const char* key, std::size_t i, std::size_t k) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    parse_error("matrix[" + std::to_string(i) + "][" + std::to_string(k) + "] needs numeric \"" +
                key + "\"");
  }
  return it->get<double>();
}

std::string format_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

std::string quote(const std::string& s) { return json(s).dump(); }

}  // namespace

SystemDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) parse_error("document must be a JSON object");

  SystemDocument doc;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) parse_error("\"name\" must be a string");
    doc.name = it->get<std::string>();
  }

  const auto atoms = j.find("atoms");
  if (atoms == j.end() || !atoms->is_array()) parse_error("\"atoms\" must be an array");
  for (const auto& a : *atoms) {
    if (!a.is_string()) parse_error("atom labels must be strings");
    doc.atoms.push_back(a.get<std::string>());
  }
  const std::size_t n = doc.atoms.size();
  if (n == 0) parse_error("\"atoms\" is empty");

  const auto rows = j.find("matrix");
  if (rows == j.end() || !rows->is_array()) parse_error("\"matrix\" must be an array of rows");
  if (rows->size() != n) {
    parse_error("matrix has " + std::to_string(rows->size()) + " rows for " +
                std::to_string(n) + " atoms");
  }
  doc.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = (*rows)[i];
    if (!row.is_array() || row.size() != n) {
      parse_error("matrix row " + std::to_string(i) + " must have " + std::to_string(n) +
                  " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto& z = row[k];
      if (!z.is_object()) parse_error("matrix entries must be {\"re\", \"im\"} objects");
      doc.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(number(z, "re", i, k), number(z, "im", i, k));
    }
  }

  if (auto it = j.find("metadata"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) parse_error("\"metadata\" must be an object");
    for (const auto& [key, value] : it->items()) {
      doc.metadata.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return doc;
}

QuantumSystem to_system(const SystemDocument& doc, Tolerance tol) {
  QuantumSystem s(doc.atoms, doc.matrix, tol);
  s.set_name(doc.name);
  s.set_metadata(doc.metadata);
  return s;
}

SystemDocument to_document(const QuantumSystem& s) {
  return {s.name(), s.labels(), s.matrix(), s.metadata()};
}

std::string write_document(const SystemDocument& doc) {
  std::ostringstream out;
  out << "{\n  \"name\": " << quote(doc.name) << ",\n  \"atoms\": [";
  for (std::size_t i = 0; i < doc.atoms.size(); ++i) {
    out << (i ? ", " : "") << quote(doc.atoms[i]);
  }
  out << "],\n  \"matrix\": [\n";
  for (Eigen::Index i = 0; i < doc.matrix.rows(); ++i) {
    out << "    [";
    for (Eigen::Index k = 0; k < doc.matrix.cols(); ++k) {
      const Complex z = doc.matrix(i, k);
      out << (k ? ", " : "") << "{\"re\": " << format_double(z.real())
          << ", \"im\": " << format_double(z.imag()) << "}";
    }
    out << "]" << (i + 1 < doc.matrix.rows() ? "," : "") << "\n";
  }
  out << "  ],\n  \"metadata\": {";
  for (std::size_t i = 0; i < doc.metadata.size(); ++i) {
    out << (i ? ", " : "") << quote(doc.metadata[i].first) << ": "
        << quote(doc.metadata[i].second);
  }
  out << "}\n}\n";
  return out.str();
}

std::string write_document(const QuantumSystem& s) { return write_document(to_document(s)); }

SystemDocument read_document_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void write_document_file(const std::string& path, const QuantumSystem& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) parse_error("cannot write " + path);
  out << write_document(s);
  if (!out) parse_error("write failed for " + path);
}

}  // namespace qmt
