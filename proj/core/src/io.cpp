#include "qdw/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qdw {

namespace {

using nlohmann::json;

json parse_json(std::istream& in, const char* what) {
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw ParseError(std::string(what) + ": malformed JSON");
    return j;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    return out;
}

json density_to_json(const DensityMatrix& rho) {
    json rows = json::array();
    const CMat& m = rho.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return json{{"d_a", rho.d_a()}, {"d_b", rho.d_b()}, {"matrix", rows}};
}

DensityMatrix density_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d_a") || !j.contains("d_b") ||
        !j.contains("matrix"))
        throw ParseError("state file: missing d_a, d_b, or matrix");
    const auto d_a = j.at("d_a").get<Eigen::Index>();
    const auto d_b = j.at("d_b").get<Eigen::Index>();
    const auto& rows = j.at("matrix");
    if (d_a < 1 || d_b < 1 || !rows.is_array())
        throw ParseError("state file: bad dimensions or matrix");

    const Eigen::Index dim = d_a * d_b;
    if (static_cast<Eigen::Index>(rows.size()) != dim)
        throw ParseError("state file: matrix row count != d_a*d_b");
    CMat m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
            throw ParseError("state file: matrix column count != d_a*d_b");
        for (Eigen::Index k = 0; k < dim; ++k) {
            const auto& entry = row.at(static_cast<std::size_t>(k));
            if (!entry.is_array() || entry.size() != 2)
                throw ParseError("state file: entries must be [re, im]");
            m(i, k) = complexd(entry.at(0).get<double>(),
                               entry.at(1).get<double>());
        }
    }

    auto failures = density_invariant_failures(d_a, d_b, m);
    if (!failures.empty()) {
        std::string msg = "state file: invariant violated:";
        for (const auto& f : failures) msg += " " + f;
        throw ParseError(msg);
    }
    return DensityMatrix(d_a, d_b, std::move(m));
}

} // namespace

DensityMatrix read_density(std::istream& in) {
    return density_from_json(parse_json(in, "state file"));
}

DensityMatrix parse_density(const std::string& text) {
    std::istringstream in(text);
    return read_density(in);
}

DensityMatrix load_density(const std::string& path) {
    auto in = open_input(path);
    return read_density(in);
}

void write_density(std::ostream& out, const DensityMatrix& rho) {
    out << density_to_json(rho).dump() << '\n';
}

void save_density(const std::string& path, const DensityMatrix& rho) {
    auto out = open_output(path);
    write_density(out, rho);
}

MeasurementSet read_measurements(std::istream& in, Side side) {
    json j = parse_json(in, "measurement file");
    if (!j.is_object() || !j.contains("d") || !j.contains("settings"))
        throw ParseError("measurement file: missing d or settings");
    const auto d = j.at("d").get<Eigen::Index>();
    const auto& settings = j.at("settings");
    if (d < 2 || !settings.is_array() || settings.empty())
        throw ParseError("measurement file: bad d or empty settings");

    MeasurementSet set;
    set.side = side;
    for (const auto& s : settings) {
        if (!s.is_object() || !s.contains("a") || !s.contains("bloch"))
            throw ParseError("measurement file: setting needs a and bloch");
        DichotomicObservable o;
        o.d = d;
        o.a = s.at("a").get<double>();
        const auto& bloch = s.at("bloch");
        if (!bloch.is_array() ||
            static_cast<Eigen::Index>(bloch.size()) != d * d - 1)
            throw ParseError("measurement file: bloch length must be d*d-1");
        o.bloch.resize(d * d - 1);
        for (Eigen::Index i = 0; i < o.bloch.size(); ++i)
            o.bloch(i) = bloch.at(static_cast<std::size_t>(i)).get<double>();
        if (!o.bloch.allFinite() || !std::isfinite(o.a))
            throw ParseError("measurement file: non-finite values");
        set.observables.push_back(std::move(o));
    }
    return set;
}

MeasurementSet parse_measurements(const std::string& text, Side side) {
    std::istringstream in(text);
    return read_measurements(in, side);
}

MeasurementSet load_measurements(const std::string& path, Side side) {
    auto in = open_input(path);
    return read_measurements(in, side);
}

void write_measurements(std::ostream& out, const MeasurementSet& set) {
    json settings = json::array();
    for (const auto& o : set.observables) {
        json bloch = json::array();
        for (Eigen::Index i = 0; i < o.bloch.size(); ++i)
            bloch.push_back(o.bloch(i));
        settings.push_back({{"a", o.a}, {"bloch", std::move(bloch)}});
    }
    const Eigen::Index d =
        set.observables.empty() ? 2 : set.observables.front().d;
    out << json{{"d", d}, {"settings", std::move(settings)}}.dump() << '\n';
}

void save_measurements(const std::string& path, const MeasurementSet& set) {
    auto out = open_output(path);
    write_measurements(out, set);
}

TallyTable read_tally(std::istream& in) {
    json j = parse_json(in, "tally file");
    if (!j.is_object() || !j.contains("settings") || !j.contains("counts"))
        throw ParseError("tally file: missing settings or counts");
    const auto& settings = j.at("settings");
    if (!settings.is_array() || settings.size() != 2)
        throw ParseError("tally file: settings must be [n_a, n_b]");
    const auto n_a = settings.at(0).get<Eigen::Index>();
    const auto n_b = settings.at(1).get<Eigen::Index>();
    if (n_a < 1 || n_b < 1)
        throw ParseError("tally file: setting counts must be positive");

    TallyTable t = TallyTable::zeros(n_a, n_b);
    const auto& counts = j.at("counts");
    if (!counts.is_object() ||
        counts.size() != static_cast<std::size_t>(n_a * n_b))
        throw ParseError("tally file: need one entry per setting pair");
    for (Eigen::Index x = 0; x < n_a; ++x)
        for (Eigen::Index y = 0; y < n_b; ++y) {
            const std::string key =
                std::to_string(x) + "," + std::to_string(y);
            if (!counts.contains(key))
                throw ParseError("tally file: missing counts for " + key);
            const auto& cell = counts.at(key);
            if (!cell.is_array() || cell.size() != 2 ||
                !cell.at(0).is_array() || cell.at(0).size() != 2 ||
                !cell.at(1).is_array() || cell.at(1).size() != 2)
                throw ParseError("tally file: counts must be 2x2 arrays");
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const auto n = cell.at(static_cast<std::size_t>(a))
                                       .at(static_cast<std::size_t>(b))
                                       .get<std::int64_t>();
                    if (n < 0)
                        throw ParseError("tally file: negative count");
                    t.at(x, y, a, b) = n;
                }
        }
    return t;
}

TallyTable parse_tally(const std::string& text) {
    std::istringstream in(text);
    return read_tally(in);
}

TallyTable load_tally(const std::string& path) {
    auto in = open_input(path);
    return read_tally(in);
}

void write_tally(std::ostream& out, const TallyTable& t) {
    json counts = json::object();
    for (Eigen::Index x = 0; x < t.n_a; ++x)
        for (Eigen::Index y = 0; y < t.n_b; ++y)
            counts[std::to_string(x) + "," + std::to_string(y)] = {
                {t.at(x, y, 0, 0), t.at(x, y, 0, 1)},
                {t.at(x, y, 1, 0), t.at(x, y, 1, 1)}};
    out << json{{"settings", {t.n_a, t.n_b}}, {"counts", std::move(counts)}}
               .dump()
        << '\n';
}

void save_tally(const std::string& path, const TallyTable& t) {
    auto out = open_output(path);
    write_tally(out, t);
}

std::string report_to_json(const WitnessReport& report) {
    json q = json::array();
    for (Eigen::Index x = 0; x < report.q.rows(); ++x) {
        json row = json::array();
        for (Eigen::Index y = 0; y < report.q.cols(); ++y)
            row.push_back(report.q(x, y));
        q.push_back(std::move(row));
    }
    json j{{"q", std::move(q)},
           {"w", report.w},
           {"d_a", report.d_a},
           {"d_b", report.d_b},
           {"path", report.path == WitnessPath::Analytic ? "analytic"
                                                         : "estimated"}};
    return j.dump();
}

WitnessReport parse_report(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw ParseError("report: malformed JSON");
    WitnessReport report;
    const auto& q = j.at("q");
    const auto n = static_cast<Eigen::Index>(q.size());
    report.q.resize(n, n);
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y)
            report.q(x, y) = q.at(static_cast<std::size_t>(x))
                                 .at(static_cast<std::size_t>(y))
                                 .get<double>();
    report.w = j.at("w").get<double>();
    report.d_a = j.at("d_a").get<Eigen::Index>();
    report.d_b = j.at("d_b").get<Eigen::Index>();
    report.path = j.at("path").get<std::string>() == "estimated"
                      ? WitnessPath::Estimated
                      : WitnessPath::Analytic;
    return report;
}

} // namespace qdw
