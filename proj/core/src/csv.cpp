#include <ncut/datasets.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ncut {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
      cell.pop_back();
    std::size_t start = cell.find_first_not_of(' ');
    cells.push_back(start == std::string::npos ? "" : cell.substr(start));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, const std::string& path) {
  if (cell.empty())
    throw std::runtime_error(path + ": empty cell");
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size())
    throw std::runtime_error(path + ": non-numeric cell '" + cell + "'");
  return v;
}

}  // namespace

void emit_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  int d = static_cast<int>(data.x.cols());
  for (int j = 0; j < d; ++j) {
    if (j) out << ',';
    if (j < static_cast<int>(data.columns.size()) && !data.columns[j].empty())
      out << data.columns[j];
    else
      out << 'f' << j;
  }
  bool labeled = !data.labels.empty();
  if (labeled) {
    if (static_cast<int>(data.labels.size()) != data.x.rows())
      throw std::invalid_argument("label length mismatch");
    out << (d ? "," : "") << "label";
  }
  out << '\n';
  for (int i = 0; i < data.x.rows(); ++i) {
    for (int j = 0; j < d; ++j) {
      if (j) out << ',';
      out << format_value(data.x(i, j));
    }
    if (labeled) out << (d ? "," : "") << data.labels[i];
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Dataset load_csv(const std::string& path, bool has_header,
                 const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  if (!label_column.empty() && !has_header)
    throw std::runtime_error("label column requires a header");

  std::string line;
  std::vector<std::string> header;
  int label_idx = -1;
  if (has_header) {
    if (!std::getline(in, line))
      throw std::runtime_error(path + ": empty file");
    header = split_line(line);
    if (!label_column.empty()) {
      for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == label_column) label_idx = static_cast<int>(j);
      if (label_idx < 0)
        throw std::runtime_error(path + ": missing label column '" +
                                 label_column + "'");
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::size_t width = header.empty() ? 0 : header.size();
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_line(line);
    if (width == 0) width = cells.size();
    if (cells.size() != width)
      throw std::runtime_error(path + ": ragged row");
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v = parse_cell(cells[j], path);
      if (static_cast<int>(j) == label_idx)
        labels.push_back(static_cast<int>(std::llround(v)));
      else
        row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");

  Dataset out;
  int d = static_cast<int>(rows.front().size());
  out.x.resize(static_cast<int>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < d; ++j) out.x(static_cast<int>(i), j) = rows[i][j];
  out.labels = std::move(labels);
  for (std::size_t j = 0; j < header.size(); ++j)
    if (static_cast<int>(j) != label_idx) out.columns.push_back(header[j]);
  return out;
}

}  // namespace ncut
