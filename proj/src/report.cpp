#include "ecv/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace ecv {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& file) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    return out;
}

void write_meta(std::ofstream& out, const run_metadata& meta) {
    for (const auto& [k, v] : meta.entries) out << "# " << k << ": " << v << "\n";
}

json meta_json(const run_metadata& meta) {
    json m = json::object();
    for (const auto& [k, v] : meta.entries) m[k] = v;
    return m;
}

// json forbids inf/nan; mirror them as strings
json num(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

void dump(const std::filesystem::path& file, const json& j) {
    auto out = open_out(file);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

const char* group_label(int pendants) {
    switch (pendants) {
        case 0: return "P0";
        case 1: return "P1";
        default: return "P2";
    }
}

}  // namespace

void run_metadata::add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}
void run_metadata::add(std::string key, double value) {
    entries.emplace_back(std::move(key), format_double(value));
}
void run_metadata::add(std::string key, std::uint64_t value) {
    entries.emplace_back(std::move(key), std::to_string(value));
}
void run_metadata::add(std::string key, std::int64_t value) {
    entries.emplace_back(std::move(key), std::to_string(value));
}

std::uint64_t config_hash(const std::string& canonical) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : canonical) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shorter representation when it round-trips
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%.15g", v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    return back == v ? shorter : buf;
}

void write_curves_csv(const std::filesystem::path& file, const run_metadata& meta,
                      const std::vector<free_energy_curve>& curves) {
    auto out = open_out(file);
    write_meta(out, meta);
    out << "T,m,F,S\n";
    for (const auto& c : curves)
        for (const auto& pt : c.points)
            out << format_double(c.temperature) << ',' << format_double(pt.m) << ','
                << format_double(pt.free_energy) << ',' << format_double(pt.entropy)
                << "\n";
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

void write_curves_json(const std::filesystem::path& file, const run_metadata& meta,
                       const std::vector<free_energy_curve>& curves) {
    json rows = json::array();
    for (const auto& c : curves)
        for (const auto& pt : c.points)
            rows.push_back({{"T", num(c.temperature)},
                            {"m", num(pt.m)},
                            {"F", num(pt.free_energy)},
                            {"S", num(pt.entropy)}});
    dump(file, json{{"meta", meta_json(meta)}, {"rows", rows}});
}

void write_diagram_csv(const std::filesystem::path& file, const run_metadata& meta,
                       const phase_diagram& diagram) {
    auto out = open_out(file);
    write_meta(out, meta);
    out << "T,ratio,minima,m_stable,F_stable,m_metastable,F_metastable,barrier\n";
    for (const auto& pt : diagram.points) {
        const bool two = pt.minima.size() >= 2;
        out << format_double(pt.temperature) << ',' << format_double(pt.ratio) << ','
            << pt.minima.size() << ',' << format_double(pt.minima.front().m) << ','
            << format_double(pt.minima.front().free_energy) << ','
            << (two ? format_double(pt.minima[1].m) : "nan") << ','
            << (two ? format_double(pt.minima[1].free_energy) : "nan") << ','
            << format_double(pt.barrier) << "\n";
    }
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

void write_critical_json(const std::filesystem::path& file, const run_metadata& meta,
                         const phase_diagram& diagram) {
    dump(file, json{{"meta", meta_json(meta)},
                    {"n", diagram.n},
                    {"phi_concurrent", num(diagram.phi_concurrent)},
                    {"critical_temperature", num(diagram.critical_temperature)},
                    {"coexistence_ratio", num(diagram.coexistence_ratio)},
                    {"flip_interval",
                     {num(diagram.flip_interval.first), num(diagram.flip_interval.second)}}});
}

void write_orderparam_csv(const std::filesystem::path& file, const run_metadata& meta,
                          const std::vector<experiment_point>& points) {
    auto out = open_out(file);
    write_meta(out, meta);
    out << "T,ratio,mean_m,ci_lo,ci_hi,reps\n";
    for (const auto& pt : points)
        out << format_double(pt.temperature) << ',' << format_double(pt.ratio) << ','
            << format_double(pt.mean_m) << ',' << format_double(pt.ci_lo) << ','
            << format_double(pt.ci_hi) << ',' << pt.reps << "\n";
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

void write_orderparam_json(const std::filesystem::path& file, const run_metadata& meta,
                           const std::vector<experiment_point>& points) {
    json rows = json::array();
    for (const auto& pt : points)
        rows.push_back({{"T", num(pt.temperature)},
                        {"ratio", num(pt.ratio)},
                        {"mean_m", num(pt.mean_m)},
                        {"ci_lo", num(pt.ci_lo)},
                        {"ci_hi", num(pt.ci_hi)},
                        {"reps", pt.reps}});
    dump(file, json{{"meta", meta_json(meta)}, {"rows", rows}});
}

namespace {

template <typename Fn>
void each_event_row(const event_tally& tally, Fn&& fn) {
    for (const auto& bin : tally.bins) {
        for (int c = 0; c < 6; ++c)
            fn(bin, "class", dyad_class_name(static_cast<dyad_class>(c)),
               bin.by_class[static_cast<std::size_t>(c)]);
        for (int g = 0; g < 3; ++g)
            fn(bin, "group", group_label(g), bin.by_group[static_cast<std::size_t>(g)]);
    }
}

}  // namespace

void write_events_csv(const std::filesystem::path& file, const run_metadata& meta,
                      const event_tally& tally) {
    auto out = open_out(file);
    write_meta(out, meta);
    out << "bin_lo,bin_hi,kind,label,count,exposure,rate,rate_lo,rate_hi\n";
    each_event_row(tally, [&](const event_bin& bin, const char* kind, const char* label,
                              const class_rate& r) {
        out << format_double(bin.m_lo) << ',' << format_double(bin.m_hi) << ',' << kind
            << ',' << label << ',' << r.count << ',' << bin.exposure << ','
            << format_double(r.rate) << ',' << format_double(r.lo) << ','
            << format_double(r.hi) << "\n";
    });
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

void write_events_json(const std::filesystem::path& file, const run_metadata& meta,
                       const event_tally& tally) {
    json rows = json::array();
    each_event_row(tally, [&](const event_bin& bin, const char* kind, const char* label,
                              const class_rate& r) {
        rows.push_back({{"bin_lo", num(bin.m_lo)},
                        {"bin_hi", num(bin.m_hi)},
                        {"kind", kind},
                        {"label", label},
                        {"count", r.count},
                        {"exposure", bin.exposure},
                        {"rate", num(r.rate)},
                        {"rate_lo", num(r.lo)},
                        {"rate_hi", num(r.hi)}});
    });
    dump(file, json{{"meta", meta_json(meta)},
                    {"bin_width", num(tally.bin_width)},
                    {"n", tally.n},
                    {"rows", rows}});
}

void write_trajectories_log(const std::filesystem::path& file, const run_metadata& meta,
                            const std::vector<trajectory_summary>& trajectories) {
    auto out = open_out(file);
    write_meta(out, meta);
    for (const auto& t : trajectories) {
        out << "T " << t.candidate_index << ' ' << t.seed << ' '
            << (t.completed ? 1 : 0) << ' ' << t.total_steps << ' '
            << t.accepted_toggles << "\n";
        for (const auto& e : t.events)
            out << "E " << e.step << ' ' << e.i << ' ' << e.j << ' '
                << (e.formed ? 'F' : 'D') << ' ' << dyad_class_name(e.cls) << ' '
                << format_double(e.m_before) << "\n";
    }
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

}  // namespace ecv
