#include "eady/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "eady/numerics.hpp"

namespace eady::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw ParameterError("csv row has " + std::to_string(row.size()) + " cells, header has " +
                             std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

nlohmann::json base_metadata(const EadyParams& params) {
    return {{"artifact", kArtifactName}, {"version", kArtifactVersion}, {"params", to_json(params)}};
}

nlohmann::json base_metadata(const WaveMode& mode) {
    nlohmann::json j = base_metadata(mode.params);
    const WaveVector& wv = mode.wavevector;
    j["mode"] = {{"k", wv.k},           {"l", wv.l},           {"m", wv.m},
                 {"nu", wv.nu},         {"omega_re", mode.omega.re},
                 {"omega_im", mode.omega.im}};
    j["eta"] = mode.eta;
    return j;
}

namespace {

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_double(*d);
    if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") != std::string::npos)
        throw ParameterError("csv cell contains a separator: " + s);
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string to_csv(const nlohmann::json& metadata, const Table& table) {
    std::string out = "# " + metadata.dump() + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json_text(const nlohmann::json& metadata, const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const Cell& c : row) {
            if (const double* d = std::get_if<double>(&c)) {
                if (std::isfinite(*d)) r.push_back(*d);
                else r.push_back(nullptr);
            } else if (const long long* i = std::get_if<long long>(&c)) {
                r.push_back(*i);
            } else {
                r.push_back(std::get<std::string>(c));
            }
        }
        rows.push_back(std::move(r));
    }
    const nlohmann::json doc = {{"metadata", metadata}, {"columns", table.columns}, {"rows", rows}};
    return doc.dump(1) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::size_t CsvDocument::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw ParameterError("csv: no column \"" + name + "\"");
}

CsvDocument read_csv(std::istream& in) {
    CsvDocument doc;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw ParameterError("csv: first line must be '# {metadata json}'");
    try {
        doc.metadata = nlohmann::json::parse(line.substr(2));
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("csv: bad metadata: ") + e.what());
    }
    if (!std::getline(in, line)) throw ParameterError("csv: missing header row");
    doc.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row = split(line);
        if (row.size() != doc.columns.size())
            throw ParameterError("csv: ragged row: " + line);
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

}  // namespace eady::io
