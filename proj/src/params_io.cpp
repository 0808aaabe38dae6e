#include "extdep/params_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace extdep::io {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::map<std::string, double> read_kv(std::istream& in) {
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected name = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            std::size_t used = 0;
            const double v = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            if (kv.count(key))
                throw ParseError("line " + std::to_string(lineno) + ": duplicate key " + key);
            kv[key] = v;
        } catch (const std::invalid_argument&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad number '" + val + "'");
        }
    }
    return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("missing key: " + key);
    const double v = it->second;
    kv.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, double>& kv) {
    if (!kv.empty()) throw ParseError("unknown key: " + kv.begin()->first);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    return f;
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

hw::HwParams read_hw_params(std::istream& in) {
    auto kv = read_kv(in);
    const double alpha = take(kv, "alpha"), theta = take(kv, "theta");
    const double u_thr = take(kv, "u_thr"), k = take(kv, "k");
    const double lambda = take(kv, "lambda");
    const double mu0 = take(kv, "mu0"), mu1 = take(kv, "mu1"), mu2 = take(kv, "mu2");
    const double s0 = take(kv, "sigma0"), s1 = take(kv, "sigma1"), s2 = take(kv, "sigma2");
    reject_leftovers(kv);
    return hw::HwParams(alpha, theta, u_thr, k, lambda, mu0, mu1, mu2, s0, s1, s2);
}

hw::HwParams read_hw_params_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_hw_params(f);
}

ht::HtParams read_ht_params(std::istream& in) {
    auto kv = read_kv(in);
    ht::HtParams p;
    p.alpha = take(kv, "alpha");
    p.beta = take(kv, "beta");
    p.gamma = take(kv, "gamma");
    p.delta = take(kv, "delta");
    if (kv.count("u_thr")) p.u_thr = take(kv, "u_thr");
    reject_leftovers(kv);
    return ht::validate(p);
}

ht::HtParams read_ht_params_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_ht_params(f);
}

void write_sample_csv(std::ostream& out, const invlog::Sample& s) {
    out << "# xi=" << format_g17(s.xi) << ", seed=" << s.seed << ", n=" << s.n()
        << "\n";
    out << "x,y\n";
    for (const auto& [x, y] : s.pairs)
        out << format_g17(x) << "," << format_g17(y) << "\n";
}

void write_sample_csv_file(const std::string& path, const invlog::Sample& s) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write " + path);
    write_sample_csv(f, s);
}

invlog::Sample read_sample_csv(std::istream& in) {
    invlog::Sample s;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string tok;
            while (std::getline(meta, tok, ',')) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = trim(tok.substr(0, eq));
                const std::string val = trim(tok.substr(eq + 1));
                if (key == "xi") s.xi = std::stod(val);
                if (key == "seed") s.seed = std::stoull(val);
            }
            continue;
        }
        if (!header_seen) {
            if (line != "x,y") throw ParseError("sample CSV: expected 'x,y' header");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("sample CSV: malformed row '" + line + "'");
        s.pairs.emplace_back(std::stod(line.substr(0, comma)),
                             std::stod(line.substr(comma + 1)));
    }
    if (!header_seen) throw ParseError("sample CSV: missing header");
    return s;
}

invlog::Sample read_sample_csv_file(const std::string& path) {
    auto f = open_or_throw(path);
    return read_sample_csv(f);
}

}  // namespace extdep::io
