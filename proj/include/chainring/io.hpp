// io.hpp — text formats: the matrix file format (ring header line, "n m"
// dimension line, then n rows of element tokens) and the key=value channel
// configuration file consumed by the simulation harness.

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "channels.hpp"
#include "matrix.hpp"
#include "ring.hpp"

namespace chainring {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

inline void write_matrix(std::ostream& os, const Mat& A) {
    os << A.ring()->name() << "\n" << A.rows() << " " << A.cols() << "\n";
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            if (j) os << " ";
            os << A.ring()->elem_to_string(A.rep(i, j));
        }
        os << "\n";
    }
}

inline std::string matrix_to_string(const Mat& A) {
    std::ostringstream os;
    write_matrix(os, A);
    return os.str();
}

inline Mat read_matrix(std::istream& is) {
    int line_no = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(is, out)) {
            ++line_no;
            size_t pos = out.find_first_not_of(" \t\r");
            if (pos == std::string::npos || out[pos] == '#') continue;
            return true;
        }
        return false;
    };

    std::string line;
    if (!next_line(line)) throw ParseError(line_no, "missing ring header");
    RingPtr ring;
    try {
        std::istringstream hs(line);
        std::string token;
        hs >> token;
        ring = Ring::parse(token);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }

    if (!next_line(line)) throw ParseError(line_no, "missing dimension line");
    int n = -1, m = -1;
    {
        std::istringstream ds(line);
        if (!(ds >> n >> m) || n < 0 || m < 0) throw ParseError(line_no, "bad dimensions");
    }

    Mat A(ring, n, m);
    for (int i = 0; i < n; ++i) {
        if (!next_line(line)) throw ParseError(line_no, "missing matrix row");
        std::istringstream rs(line);
        for (int j = 0; j < m; ++j) {
            std::string token;
            if (!(rs >> token)) throw ParseError(line_no, "row too short");
            try {
                A.set_rep(i, j, ring->elem_from_string(token));
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
        }
        std::string extra;
        if (rs >> extra) throw ParseError(line_no, "row too long");
    }
    return A;
}

inline Shape parse_shape(const std::string& text) {
    std::vector<int> parts;
    std::istringstream is(text);
    std::string token;
    while (std::getline(is, token, ','))
        parts.push_back(std::stoi(token));
    return Shape(std::move(parts));
}

// Channel/codec configuration: key=value lines, '#' comments.
// Keys: ring, mu, n, N, channel (mmc|amc|mamc), noise (fixed:T | var:p0,p1,...),
// v, seed.
struct SimConfig {
    RingPtr ring;
    Shape mu{0};
    int n = 0;
    int N = -1;  // defaults to n
    std::string channel;  // inferred from noise and N when empty
    NoiseModel noise = FixedRank{0};
    int v = -1;  // defaults to the noise rank bound t
    uint64_t seed = 0;

    int trap() const { return v >= 0 ? v : noise_max_rank(noise); }

    ChannelConfig channel_config() const {
        return ChannelConfig({ring, mu}, n, N, noise);
    }
};

inline SimConfig read_sim_config(std::istream& is) {
    SimConfig cfg;
    bool have_ring = false, have_mu = false, have_n = false;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected key=value");
        std::string key = line.substr(pos, eq - pos);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        while (!value.empty() && (value.back() == ' ' || value.back() == '\t' || value.back() == '\r'))
            value.pop_back();
        size_t vstart = value.find_first_not_of(" \t");
        value = vstart == std::string::npos ? "" : value.substr(vstart);

        try {
            if (key == "ring") {
                cfg.ring = Ring::parse(value);
                have_ring = true;
            } else if (key == "mu") {
                cfg.mu = parse_shape(value);
                have_mu = true;
            } else if (key == "n") {
                cfg.n = std::stoi(value);
                have_n = true;
            } else if (key == "N") {
                cfg.N = std::stoi(value);
            } else if (key == "channel") {
                if (value != "mmc" && value != "amc" && value != "mamc")
                    throw std::invalid_argument("channel must be mmc, amc or mamc");
                cfg.channel = value;
            } else if (key == "noise") {
                if (value.rfind("fixed:", 0) == 0) {
                    cfg.noise = FixedRank{std::stoi(value.substr(6))};
                } else if (value.rfind("var:", 0) == 0) {
                    std::vector<double> p;
                    std::istringstream ps(value.substr(4));
                    std::string tok;
                    while (std::getline(ps, tok, ',')) p.push_back(std::stod(tok));
                    cfg.noise = VariableRank{std::move(p)};
                } else {
                    throw std::invalid_argument("noise must be fixed:T or var:p0,p1,...");
                }
            } else if (key == "v") {
                cfg.v = std::stoi(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!have_ring) throw ParseError(line_no, "missing ring=");
    if (!have_mu) throw ParseError(line_no, "missing mu=");
    if (!have_n) throw ParseError(line_no, "missing n=");
    if (cfg.N < 0) cfg.N = cfg.n;
    if (cfg.channel.empty()) {
        int t = noise_max_rank(cfg.noise);
        cfg.channel = t == 0 ? "mmc" : (cfg.N == cfg.n ? "amc" : "mamc");
    }
    if (cfg.mu.s() != static_cast<int>(cfg.ring->s()))
        throw ParseError(line_no, "mu length does not match the ring's chain length");
    return cfg;
}

}  // namespace chainring
