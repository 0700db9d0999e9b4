#include "kgscat/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kgscat {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << csv_escape(table.header[j]);
    out << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
        out << "\r\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

// RFC 4180 record splitter; returns false at end of input
bool next_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string cur;
    bool quoted = false, any = false;
    char c;
    while (in.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') cur += static_cast<char>(in.get());
                else quoted = false;
            } else {
                cur += c;
            }
            continue;
        }
        if (c == '"') quoted = true;
        else if (c == ',') fields.push_back(std::move(cur)), cur.clear();
        else if (c == '\r') continue;
        else if (c == '\n') break;
        else cur += c;
    }
    if (quoted) throw std::runtime_error("csv: unterminated quoted field");
    if (any) fields.push_back(std::move(cur));
    return any;
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw std::runtime_error("csv: bad number '" + s + "'");
    return v;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvTable t;
    std::vector<std::string> f;
    if (!next_record(in, t.header)) throw std::runtime_error(path + ": empty csv");
    while (next_record(in, f)) {
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != t.header.size()) throw std::runtime_error(path + ": ragged row");
        std::vector<double> row;
        for (const auto& s : f) row.push_back(parse_double(s));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable scattering_table(const ScatteringData& s) {
    CsvTable t;
    t.header = {"xi", "re_T", "im_T", "re_R_minus", "im_R_minus", "re_R_plus", "im_R_plus", "unitarity_defect"};
    for (std::size_t k = 0; k < s.fgrid.n; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        const double t2 = std::norm(s.T[kk]);
        const double def =
            std::max(std::abs(t2 + std::norm(s.R_plus[kk]) - 1.0), std::abs(t2 + std::norm(s.R_minus[kk]) - 1.0));
        t.rows.push_back({s.fgrid.xi(k), s.T[kk].real(), s.T[kk].imag(), s.R_minus[kk].real(), s.R_minus[kk].imag(),
                          s.R_plus[kk].real(), s.R_plus[kk].imag(), def});
    }
    return t;
}

CsvTable phi_table(const ScatteringData& s) {
    CsvTable t;
    t.header = {"x", "phi"};
    for (std::size_t i = 0; i < s.phi.size(); ++i) t.rows.push_back({s.grid.x(i), s.phi[i]});
    return t;
}

CsvTable series_table(const DecaySeries& s) {
    CsvTable t;
    t.header = {"t", "value", "model"};
    for (std::size_t i = 0; i < s.times.size(); ++i) t.rows.push_back({s.times[i], s.values[i], s.predict(s.times[i])});
    return t;
}

void write_svg_loglog(const std::string& path, const std::string& title, const std::vector<PlotLine>& lines) {
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& l : lines)
        for (std::size_t i = 0; i < l.x.size(); ++i) {
            if (!(l.x[i] > 0) || !(l.y[i] > 0)) continue;
            x0 = std::min(x0, std::log10(l.x[i])), x1 = std::max(x1, std::log10(l.x[i]));
            y0 = std::min(y0, std::log10(l.y[i])), y1 = std::max(y1, std::log10(l.y[i]));
        }
    if (!(x1 > x0)) x1 = x0 + 1;
    if (!(y1 > y0)) y1 = y0 + 1;
    auto px = [&](double v) { return ml + (std::log10(v) - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double v) { return H - mb - (std::log10(v) - y0) / (y1 - y0) * (H - mt - mb); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\"" << H - mt - mb
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int d = static_cast<int>(std::ceil(x0)); d <= static_cast<int>(std::floor(x1)); ++d)
        out << "<text x=\"" << px(std::pow(10.0, d)) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">1e" << d << "</text>\n";
    for (int d = static_cast<int>(std::ceil(y0)); d <= static_cast<int>(std::floor(y1)); ++d)
        out << "<text x=\"" << ml - 6 << "\" y=\"" << py(std::pow(10.0, d)) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">1e" << d << "</text>\n";
    for (std::size_t j = 0; j < lines.size(); ++j) {
        const auto& l = lines[j];
        out << "<polyline fill=\"none\" stroke=\"" << colors[j % 6] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < l.x.size(); ++i)
            if (l.x[i] > 0 && l.y[i] > 0) out << px(l.x[i]) << "," << py(l.y[i]) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 + 14 * j << "\" font-size=\"11\" fill=\"" << colors[j % 6]
            << "\">" << l.label << "</text>\n";
    }
    out << "</svg>\n";
}

namespace {

constexpr char kProfileMagic[8] = {'K', 'G', 'S', 'P', 'R', 'O', 'F', 'L'};

void put_u64(std::ostream& o, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    o.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("profile container truncated");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

void put_f64(std::ostream& o, double v) { put_u64(o, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void save_profiles(const std::string& path, const FrequencyGrid& fgrid, const std::vector<double>& times,
                   const std::vector<Eigen::VectorXcd>& profiles) {
    if (times.size() != profiles.size()) throw std::invalid_argument("save_profiles: size mismatch");
    std::ofstream o(path, std::ios::binary);
    if (!o) throw std::runtime_error("cannot open " + path + " for writing");
    o.write(kProfileMagic, 8);
    put_u64(o, 1);
    put_u64(o, times.size());
    put_u64(o, fgrid.n);
    put_f64(o, fgrid.Xi);
    for (double t : times) put_f64(o, t);
    for (const auto& p : profiles) {
        if (p.size() != static_cast<Eigen::Index>(fgrid.n)) throw std::invalid_argument("save_profiles: profile length");
        for (Eigen::Index k = 0; k < p.size(); ++k) put_f64(o, p[k].real()), put_f64(o, p[k].imag());
    }
    if (!o) throw std::runtime_error("write failed: " + path);
}

void load_profiles(const std::string& path, FrequencyGrid& fgrid, std::vector<double>& times,
                   std::vector<Eigen::VectorXcd>& profiles) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kProfileMagic, 8) != 0) throw std::runtime_error(path + ": not a profile container");
    if (get_u64(in) != 1) throw std::runtime_error(path + ": unsupported version");
    const std::size_t count = get_u64(in), n = get_u64(in);
    const double Xi = get_f64(in);
    fgrid = FrequencyGrid(Xi, n);
    times.resize(count);
    for (double& t : times) t = get_f64(in);
    profiles.assign(count, Eigen::VectorXcd(static_cast<Eigen::Index>(n)));
    for (auto& p : profiles)
        for (Eigen::Index k = 0; k < p.size(); ++k) {
            const double re = get_f64(in);
            p[k] = {re, get_f64(in)};
        }
}

}  // namespace kgscat
