#include "optosync/io.hpp"
#include "optosync/version.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>

namespace optosync {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,re_a1,im_a1,re_a2,im_a2,re_b1,im_b1,re_b2,im_b2";
    const bool with_cov = traj.has_covariance();
    if (with_cov) {
        for (int i = 1; i <= 8; ++i)
            for (int j = i; j <= 8; ++j)
                out += ",c" + std::to_string(i) + std::to_string(j);
    }
    out += "\n";
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const MeanState& s = traj.means[k];
        out += format_double(traj.times[k]);
        for (const Complex& z : {s.A1, s.A2, s.B1, s.B2}) {
            out += "," + format_double(z.real());
            out += "," + format_double(z.imag());
        }
        if (with_cov) {
            const Mat8& c = traj.covs[k].c;
            for (int i = 0; i < 8; ++i)
                for (int j = i; j < 8; ++j) out += "," + format_double(c(i, j));
        }
        out += "\n";
    }
    return out;
}

std::string measures_csv(const MeasureSeries& m) {
    std::string out = "t,theta,sc_prime,sp_prime,mean_q_minus,mean_p_minus\n";
    for (size_t k = 0; k < m.times.size(); ++k) {
        out += format_double(m.times[k]);
        out += "," + format_double(m.theta[k]);
        out += "," + format_double(m.sc_prime[k]);
        out += "," + format_double(m.sp_prime[k]);
        out += "," + format_double(m.mean_q_minus[k]);
        out += "," + format_double(m.mean_p_minus[k]);
        out += "\n";
    }
    return out;
}

std::string phase_csv(const PhaseSeries& p) {
    std::string out = "t,theta,phi1,phi2\n";
    for (size_t k = 0; k < p.times.size(); ++k) {
        out += format_double(p.times[k]);
        out += "," + format_double(p.theta[k]);
        out += "," + format_double(p.phi1[k]);
        out += "," + format_double(p.phi2[k]);
        out += "\n";
    }
    return out;
}

std::string sweep_csv(const SweepField& field) {
    std::string out = "mu,lambda,value,status\n";
    for (int i = 0; i < field.grid.mu_steps; ++i)
        for (int j = 0; j < field.grid.lambda_steps; ++j) {
            out += format_double(field.grid.mu_at(i));
            out += "," + format_double(field.grid.lambda_at(j));
            out += "," + format_double(field.value_at(i, j));
            out += "," + to_string(field.status_at(i, j));
            out += "\n";
        }
    return out;
}

json sweep_metadata(const SweepField& field, const RunConfig& cfg) {
    int n_ok = 0, n_divergent = 0, n_marginal = 0;
    json divergent_cells = json::array();
    for (int i = 0; i < field.grid.mu_steps; ++i)
        for (int j = 0; j < field.grid.lambda_steps; ++j) {
            switch (field.status_at(i, j)) {
                case CellStatus::ok: ++n_ok; break;
                case CellStatus::marginal: ++n_marginal; break;
                case CellStatus::divergent:
                    ++n_divergent;
                    divergent_cells.push_back(
                        {{"i", i}, {"j", j}, {"mu", field.grid.mu_at(i)},
                         {"lambda", field.grid.lambda_at(j)}});
                    break;
            }
        }
    json j;
    j["tool_version"] = kVersion;
    j["kind"] = field.kind;
    j["grid"] = {{"mu_min", field.grid.mu_min},         {"mu_max", field.grid.mu_max},
                 {"mu_steps", field.grid.mu_steps},     {"lambda_min", field.grid.lambda_min},
                 {"lambda_max", field.grid.lambda_max}, {"lambda_steps", field.grid.lambda_steps}};
    j["cells"] = {{"ok", n_ok}, {"marginal", n_marginal}, {"divergent", n_divergent}};
    j["divergent_cells"] = divergent_cells;
    j["config"] = cfg.to_json();
    return j;
}

json lyapunov_result_json(const LyapunovResult& r) {
    return json{{"exponent", r.exponent},
                {"stderr", r.std_error},
                {"segments", r.segments},
                {"classification", to_string(r.classification)},
                {"collapsed", r.collapsed}};
}

json logic_table_json(const LogicTable& t) {
    json corners = json::array();
    const std::array<std::pair<double, double>, 4> coords{
        std::pair{0.0, 0.0}, {0.0, t.lambda_on}, {t.mu_on, 0.0}, {t.mu_on, t.lambda_on}};
    for (int k = 0; k < 4; ++k) {
        json c = lyapunov_result_json(t.corners[static_cast<size_t>(k)]);
        c["mu"] = coords[static_cast<size_t>(k)].first;
        c["lambda"] = coords[static_cast<size_t>(k)].second;
        corners.push_back(std::move(c));
    }
    json j;
    j["mu_on"] = t.mu_on;
    j["lambda_on"] = t.lambda_on;
    j["corners"] = corners;
    j["gate"] = t.gate;
    if (!t.indeterminate_corners.empty()) j["indeterminate_corners"] = t.indeterminate_corners;
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void write_meta_sidecar(const std::filesystem::path& csv_path, const RunConfig& cfg) {
    json meta;
    meta["tool_version"] = kVersion;
    meta["config"] = cfg.to_json();
    std::filesystem::path p = csv_path;
    p.replace_extension(".meta.json");
    write_json_file(p, meta);
}

} // namespace optosync
