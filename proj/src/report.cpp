#include "xlsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "xlsim/errors.hpp"

namespace xlsim {

namespace {

std::string percent2(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    return buf;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

long long kbps(double bits_per_second) { return std::llround(bits_per_second / 1000.0); }

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write " + p.string());
    return out;
}

}  // namespace

void emit_reports(const std::vector<RunReport>& reports, const std::filesystem::path& out_dir) {
    if (reports.empty()) throw InvariantViolation("emit_reports requires at least one report");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoFailure("cannot create output directory " + out_dir.string());

    auto sessions = open_out(out_dir / "sessions.csv");
    sessions << "run_id,session_id,decision,sla_rate,mean_psnr,mos\n";
    for (const auto& rep : reports) {
        // Quality rows are keyed by session id; rejected sessions have none.
        std::vector<const SessionQuality*> by_id(rep.decisions.size(), nullptr);
        for (const auto& q : rep.metrics.per_session) {
            by_id.at(q.session_id) = &q;
        }
        for (const auto& d : rep.decisions) {
            sessions << rep.run_id << ',' << d.request.session_id << ','
                     << (d.decision == Decision::Admit ? "admitted" : "rejected") << ','
                     << kbps(d.request.sla_rate) << ',';
            if (const auto* q = by_id.at(d.request.session_id)) {
                sessions << fixed2(q->mean_psnr) << ',' << q->mos << '\n';
            } else {
                sessions << ",\n";
            }
        }
    }
    if (!sessions.flush()) throw IoFailure("write failure on sessions.csv");

    auto summary = open_out(out_dir / "summary.csv");
    summary << "run_id,mode,capacity,admitted,drop_ratio,utilization\n";
    for (const auto& rep : reports) {
        summary << rep.run_id << ',' << mode_name(rep.mode) << ','
                << kbps(static_cast<double>(rep.capacity)) << ',' << rep.metrics.admitted << ','
                << percent2(rep.metrics.drop_ratio) << ',' << percent2(rep.metrics.utilization)
                << '\n';
    }
    if (!summary.flush()) throw IoFailure("write failure on summary.csv");

    for (const auto& rep : reports) {
        auto dat = open_out(out_dir / ("mos_by_session_" + rep.run_id + ".dat"));
        dat << "# session_id mos\n";
        for (const auto& q : rep.metrics.per_session) {
            dat << q.session_id << ' ' << q.mos << '\n';
        }
        if (!dat.flush()) throw IoFailure("write failure on mos_by_session data");
    }

    auto echo = open_out(out_dir / "effective.conf");
    echo << serialize_config(reports.front().config);
    if (!echo.flush()) throw IoFailure("write failure on effective.conf");
}

}  // namespace xlsim
