#include "nosm/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nosm {

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
}

const char* kNum = "%.12g";

void put(std::string& line, double v, bool last = false) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), kNum, v);
    line += buf;
    if (!last) line += ',';
}

}  // namespace

void write_trace_csv(const std::string& path, const Trace& trace) {
    std::ofstream f = open_or_throw(path);
    f << "t,e1,e2,sigma,u,d,mode\n";
    std::string line;
    for (const TraceRow& r : trace.rows) {
        line.clear();
        put(line, r.t);
        put(line, r.e1);
        put(line, r.e2);
        put(line, r.sigma);
        put(line, r.u);
        put(line, r.d);
        line += std::to_string(r.mode);
        line += '\n';
        f << line;
    }
}

void write_events_csv(const std::string& path, const std::vector<SimEvent>& events) {
    std::ofstream f = open_or_throw(path);
    f << "kind,t\n";
    for (const SimEvent& e : events) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), kNum, e.t);
        f << to_string(e.kind) << ',' << buf << '\n';
    }
}

void write_uav_trace_csv(const std::string& path, const UavRunResult& run) {
    std::ofstream f = open_or_throw(path);
    f << "t,x,y,z";
    for (int c = 0; c < kNumChannels; ++c) {
        const char* n = to_string(static_cast<Channel>(c));
        f << ',' << n << "_e1," << n << "_e2," << n << "_sigma," << n << "_u," << n << "_d,"
          << n << "_mode";
    }
    f << '\n';
    std::string line;
    for (const UavTraceRow& r : run.rows) {
        line.clear();
        put(line, r.t);
        put(line, r.position[0]);
        put(line, r.position[1]);
        put(line, r.position[2]);
        for (int c = 0; c < kNumChannels; ++c) {
            const UavChannelSample& s = r.ch[c];
            put(line, s.e1);
            put(line, s.e2);
            put(line, s.sigma);
            put(line, s.u);
            put(line, s.d);
            line += std::to_string(s.mode);
            if (c + 1 < kNumChannels) line += ',';
        }
        line += '\n';
        f << line;
    }
}

std::string metrics_summary(const MetricsReport& m) {
    std::ostringstream os;
    os << "overshoot: ";
    if (m.overshoot.overshoot)
        os << "YES (first crossing t = " << m.overshoot.firstCrossing
           << ", magnitude = " << m.overshoot.magnitude << ")";
    else
        os << "none";
    os << "\nsettling time (surface hit): ";
    if (m.settlingTimeMeasured > 0.0)
        os << m.settlingTimeMeasured << " s";
    else
        os << "n/a";
    os << "\nsse1 (tail sup |e1|): " << m.sse1;
    os << "\nsse2 (tail sup |e2|): " << m.sse2;
    os << "\nchattering index (TV(u)/s): " << m.chatteringIndex << "\n";
    return os.str();
}

}  // namespace nosm
