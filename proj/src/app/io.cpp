#include "pcpdc/app/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>
#include <vector>

namespace pcpdc::io {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

// Non-empty lines with trailing '\r' stripped.
std::vector<std::string_view> lines_of(std::string_view text)
{
    std::vector<std::string_view> out;
    for (std::string_view line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (!line.empty())
            out.push_back(line);
    }
    return out;
}

std::size_t parse_index(std::string_view text)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError("not an index: '" + std::string(text) + "'");
    return v;
}

void expect_header(std::string_view actual, std::string_view expected)
{
    if (actual != expected)
        throw FormatError("unexpected CSV header '" + std::string(actual) + "', expected '" +
                          std::string(expected) + "'");
}

struct Triplets {
    std::size_t n = 0;
    std::vector<double> r;
    std::vector<std::vector<double>> values; // one row per line: trailing value columns
    std::vector<std::pair<std::size_t, std::size_t>> ij;
};

// Shared reader for i,j,r_i,r_j,<values...> layouts.
Triplets read_pairs(std::string_view text, std::string_view header, std::size_t value_columns)
{
    const auto lines = lines_of(text);
    if (lines.empty())
        throw FormatError("empty kernel file");
    expect_header(lines.front(), header);

    Triplets t;
    std::map<std::size_t, double> coords;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto cols = split(lines[k], ',');
        if (cols.size() != 4 + value_columns)
            throw FormatError("line " + std::to_string(k + 1) + ": expected " +
                              std::to_string(4 + value_columns) + " columns");
        const std::size_t i = parse_index(cols[0]);
        const std::size_t j = parse_index(cols[1]);
        const double ri = parse_double(cols[2]);
        const double rj = parse_double(cols[3]);
        for (auto [key, val] : {std::pair{i, ri}, std::pair{j, rj}}) {
            auto [it, inserted] = coords.emplace(key, val);
            if (!inserted && it->second != val)
                throw FormatError("line " + std::to_string(k + 1) + ": inconsistent coordinate for index " +
                                  std::to_string(key));
        }
        std::vector<double> vals;
        for (std::size_t c = 0; c < value_columns; ++c)
            vals.push_back(parse_double(cols[4 + c]));
        t.ij.emplace_back(i, j);
        t.values.push_back(std::move(vals));
    }

    t.n = coords.size();
    if (t.ij.size() != t.n * t.n)
        throw FormatError("kernel file has " + std::to_string(t.ij.size()) + " entries for " +
                          std::to_string(t.n) + " coordinates");
    for (std::size_t i = 0; i < t.n; ++i) {
        auto it = coords.find(i);
        if (it == coords.end())
            throw FormatError("kernel indices are not contiguous from 0");
        t.r.push_back(it->second);
    }
    return t;
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{})
        throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError("not a number: '" + std::string(text) + "'");
    return v;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string grid_csv(const SampledGrid& grid)
{
    std::string out = "point,weight\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out += format_double(grid.point(i)) + ',' + format_double(grid.weight(i)) + '\n';
    return out;
}

SampledGrid parse_grid_csv(std::string_view text)
{
    const auto lines = lines_of(text);
    if (lines.empty())
        throw FormatError("empty grid file");
    expect_header(lines.front(), "point,weight");
    std::vector<double> points, weights;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto cols = split(lines[k], ',');
        if (cols.size() != 2)
            throw FormatError("grid line " + std::to_string(k + 1) + ": expected 2 columns");
        points.push_back(parse_double(cols[0]));
        weights.push_back(parse_double(cols[1]));
    }
    return SampledGrid(std::move(points), std::move(weights));
}

std::string kernel_csv(const CsdKernel& kernel)
{
    std::string out = "i,j,r_i,r_j,re_w,im_w\n";
    const auto& pts = kernel.grid().points();
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        for (std::size_t j = 0; j < kernel.size(); ++j) {
            const Complex v = kernel(i, j);
            out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(pts[i]) + ',' +
                   format_double(pts[j]) + ',' + format_double(v.real()) + ',' + format_double(v.imag()) + '\n';
        }
    }
    return out;
}

CsdKernel parse_kernel_csv(std::string_view text, const std::optional<SampledGrid>& grid)
{
    Triplets t = read_pairs(text, "i,j,r_i,r_j,re_w,im_w", 2);
    ComplexMatrix w(idx(t.n), idx(t.n));
    for (std::size_t k = 0; k < t.ij.size(); ++k)
        w(idx(t.ij[k].first), idx(t.ij[k].second)) = Complex(t.values[k][0], t.values[k][1]);

    if (grid) {
        if (grid->points() != t.r)
            throw FormatError("kernel coordinates do not match the supplied grid");
        return CsdKernel(std::move(w), *grid);
    }
    return CsdKernel(std::move(w), make_trapezoid_grid(std::move(t.r)));
}

std::string tpa_csv(const TpaKernel& kernel)
{
    std::string out = "i,j,r_i,r_j,gamma2\n";
    const auto& pts = kernel.grid().points();
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = 0; j < kernel.size(); ++j)
            out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(pts[i]) + ',' +
                   format_double(pts[j]) + ',' + format_double(kernel.matrix()(idx(i), idx(j))) + '\n';
    return out;
}

RealMatrix parse_tpa_csv(std::string_view text)
{
    Triplets t = read_pairs(text, "i,j,r_i,r_j,gamma2", 1);
    RealMatrix m(idx(t.n), idx(t.n));
    for (std::size_t k = 0; k < t.ij.size(); ++k)
        m(idx(t.ij[k].first), idx(t.ij[k].second)) = t.values[k][0];
    return m;
}

std::string modes_csv(const ModalDecomposition& decomp, std::size_t n_modes)
{
    std::string out = "n,eigenvalue,r,re_phi,im_phi\n";
    const std::size_t count = std::min(n_modes, decomp.count());
    for (std::size_t m = 0; m < count; ++m) {
        const std::string head = std::to_string(m) + ',' + format_double(decomp.eigenvalues[m]) + ',';
        for (std::size_t i = 0; i < decomp.grid.size(); ++i) {
            const Complex v = decomp.modes(idx(i), idx(m));
            out += head + format_double(decomp.grid.point(i)) + ',' + format_double(v.real()) + ',' +
                   format_double(v.imag()) + '\n';
        }
    }
    return out;
}

std::string figure1_csv(const Figure1Table& table)
{
    std::string out = "kappa,sinc";
    for (double l : table.lambdas)
        out += ",val_lambda_" + format_double(l);
    out += '\n';
    for (std::size_t k = 0; k < table.kappa.size(); ++k) {
        out += format_double(table.kappa[k]) + ',' + format_double(table.sinc[k]);
        for (const auto& curve : table.curves)
            out += ',' + format_double(curve[k]);
        out += '\n';
    }
    return out;
}

std::string figure2_csv(const std::vector<Figure2Row>& rows)
{
    std::string out = "m_e,sqrt_m,sqrt_1_minus_m2,regime\n";
    for (const auto& r : rows)
        out += format_double(r.m_e) + ',' + format_double(r.sqrt_m) + ',' + format_double(r.sqrt_1_minus_m2) +
               ',' + to_string(r.regime) + '\n';
    return out;
}

nlohmann::ordered_json eigen_summary_json(const ModalDecomposition& decomp, const CsdKernel& kernel)
{
    const std::vector<double> reported = decomp.reported_eigenvalues();
    nlohmann::ordered_json j;
    j["eigenvalues"] = reported;
    j["mu_eff"] = effective_degree_of_coherence(reported);
    j["trace"] = kernel.quadrature_trace();
    j["frobenius_sq"] = kernel.quadrature_frobenius_sq();
    return j;
}

nlohmann::ordered_json schmidt_json(const SchmidtData& data, const std::optional<TpaProvenance>& provenance)
{
    nlohmann::ordered_json j;
    j["singular_values"] = data.singular_values;
    j["schmidt_number"] = data.schmidt_number;
    if (provenance) {
        j["m_e"] = provenance->m_e;
        j["source_id"] = provenance->source_id;
    } else {
        j["m_e"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json report_json(const EntanglementReport& report, const std::optional<EntanglementFit>& fit)
{
    nlohmann::ordered_json j;
    j["m_e"] = report.m_e;
    j["cs_min_slack"] = report.cs_min_slack;
    j["cs_violated"] = report.cs_violated;
    j["regime"] = to_string(report.regime);
    j["bounds"] = {{"golden", report.bounds.golden}, {"sub_poisson", report.bounds.sub_poisson}};
    if (fit)
        j["fit"] = {{"m_e", fit->m_e}, {"residual", fit->residual}};
    return j;
}

nlohmann::ordered_json genuineness_json(const GenuinenessReport& report)
{
    nlohmann::ordered_json j;
    j["hermitian_defect"] = report.hermitian_defect;
    j["min_eigenvalue_ratio"] = report.min_eigenvalue_ratio;
    j["frobenius_norm"] = report.frobenius_norm;
    j["passes"] = report.passes;
    return j;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + '\n'; }

} // namespace pcpdc::io
