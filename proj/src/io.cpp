#include "mlomax/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mlomax {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? std::string() : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

} // namespace

Eigen::Index CsvTable::column(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == name) return static_cast<Eigen::Index>(j);
    }
    throw std::out_of_range("CSV has no column '" + name + "'");
}

CsvTable parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CsvTable table;
    std::vector<std::vector<double>> rows;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto fields = split_fields(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(table.header.size()) + " fields, found " +
                                        std::to_string(fields.size()));
        }
        std::vector<double> row;
        for (const auto& f : fields) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
                throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": not a number '" + f + "'");
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw std::invalid_argument("CSV: missing header row");
    table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(table.header.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return table;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text_file(path)); }

std::string format_csv(const std::vector<std::string>& header, const Matrix& values) {
    if (static_cast<Eigen::Index>(header.size()) != values.cols()) {
        throw std::invalid_argument("format_csv: header and column count differ");
    }
    std::ostringstream out;
    out.precision(17);
    for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
    out << '\n';
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) out << (j ? "," : "") << values(i, j);
        out << '\n';
    }
    return out.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header, const Matrix& values) {
    write_text_file(path, format_csv(header, values));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string summary_to_json(const std::vector<CoordinateSummary>& summary) {
    nlohmann::json j;
    j["parameters"] = nlohmann::json::array();
    for (const auto& s : summary) {
        j["parameters"].push_back({{"name", s.name},
                                   {"mean", s.mean},
                                   {"median", s.median},
                                   {"variance", s.variance},
                                   {"lower", s.lower},
                                   {"upper", s.upper},
                                   {"ess", s.ess}});
    }
    return j.dump(2) + "\n";
}

std::vector<CoordinateSummary> summary_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<CoordinateSummary> out;
    for (const auto& p : j.at("parameters")) {
        CoordinateSummary s;
        s.name = p.at("name").get<std::string>();
        s.mean = p.at("mean").get<double>();
        s.median = p.at("median").get<double>();
        s.variance = p.at("variance").get<double>();
        s.lower = p.at("lower").get<double>();
        s.upper = p.at("upper").get<double>();
        s.ess = p.at("ess").get<double>();
        out.push_back(s);
    }
    return out;
}

} // namespace mlomax
