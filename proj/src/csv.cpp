#include "mlei/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mlei/errors.hpp"

namespace mlei {

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

constexpr const char* row_header = "variant,replicate,episode,selected_prior,reward,best_so_far,distance";

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string tok;
    std::stringstream ss(line);
    while (std::getline(ss, tok, sep))
        out.push_back(tok);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

double parse_double(const std::string& tok, int line)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw usage_error("CSV parse error at line " + std::to_string(line) + ": bad number '" + tok + "'");
    }
}

int parse_int(const std::string& tok, int line)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw usage_error("CSV parse error at line " + std::to_string(line) + ": bad integer '" + tok + "'");
    }
}

template <typename WriteFn>
void write_via_temp(const std::string& path, WriteFn&& write)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f)
            throw runtime_error("cannot open '" + tmp + "' for writing");
        write(f);
        if (!f.good())
            throw runtime_error("write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw runtime_error("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

} // namespace

void write_rows(std::ostream& out, const std::vector<result_row>& rows)
{
    out << row_header << "\n";
    for (const result_row& r : rows)
        out << r.variant << ',' << r.replicate << ',' << r.episode << ',' << r.selected_prior << ','
            << fmt(r.reward) << ',' << fmt(r.best_so_far) << ',' << fmt(r.distance) << "\n";
}

std::vector<result_row> read_rows(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw usage_error("CSV parse error at line 1: empty input");
    if (line != row_header)
        throw usage_error("CSV parse error at line 1: unexpected header '" + line + "'");
    std::vector<result_row> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 7)
            throw usage_error("CSV parse error at line " + std::to_string(lineno) + ": expected 7 fields, got " +
                              std::to_string(f.size()));
        result_row r;
        r.variant = f[0];
        r.replicate = parse_int(f[1], lineno);
        r.episode = parse_int(f[2], lineno);
        r.selected_prior = f[3];
        r.reward = parse_double(f[4], lineno);
        r.best_so_far = parse_double(f[5], lineno);
        r.distance = parse_double(f[6], lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_rows_file(const std::string& path, const std::vector<result_row>& rows)
{
    write_via_temp(path, [&](std::ostream& out) { write_rows(out, rows); });
}

std::vector<result_row> read_rows_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw runtime_error("cannot open '" + path + "' for reading");
    return read_rows(f);
}

void write_summary(std::ostream& out, const std::vector<summary_row>& rows)
{
    out << "variant,episode,count,median,q1,q3,min,max\n";
    for (const summary_row& r : rows)
        out << r.variant << ',' << r.episode << ',' << r.count << ',' << fmt(r.median) << ',' << fmt(r.q1)
            << ',' << fmt(r.q3) << ',' << fmt(r.min) << ',' << fmt(r.max) << "\n";
}

void write_summary_file(const std::string& path, const std::vector<summary_row>& rows)
{
    write_via_temp(path, [&](std::ostream& out) { write_summary(out, rows); });
}

} // namespace mlei
