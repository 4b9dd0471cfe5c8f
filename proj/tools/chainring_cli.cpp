// chainring — command line front end: matrix computations, counting tables,
// capacity sweeps, codec encode/decode, Monte Carlo simulation and the
// composite-ambient decomposition demo.
//
// Exit codes: 0 success, 1 decode-failure-dominated run (simulate with
// empirical failure rate above 1/2, or a decode verb that reports Failure),
// 2 usage or parse errors.

#include <CLI11.hpp>

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <chainring/chainring.hpp>

using namespace chainring;

namespace {

int g_exit_code = 0;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double rat_to_double(const bigrat& r) {
    return boost::multiprecision::numerator(r).convert_to<double>() /
           boost::multiprecision::denominator(r).convert_to<double>();
}

Mat read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return read_matrix(in);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    return out;
}

// Symbols as a q-ary digit string, one alphanumeric digit per symbol.
Symbols parse_symbols(const std::string& text, uint64_t q) {
    Symbols s;
    s.reserve(text.size());
    for (char c : text) {
        uint32_t d;
        if (c >= '0' && c <= '9') d = static_cast<uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'z') d = static_cast<uint32_t>(c - 'a' + 10);
        else throw std::invalid_argument(std::string("bad symbol digit '") + c + "'");
        if (d >= q) throw std::invalid_argument("symbol digit out of range for q");
        s.push_back(d);
    }
    return s;
}

std::string symbols_to_string(const Symbols& s) {
    std::string out;
    out.reserve(s.size());
    for (uint32_t d : s) out += d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10);
    return out;
}

struct CodecSet {
    std::optional<MmcCode> mmc;
    std::optional<AmcCode> amc;
    std::optional<MamcCode> mamc;

    long symbol_count() const {
        if (mmc) return mmc->symbol_count();
        if (amc) return amc->symbol_count();
        return mamc->symbol_count();
    }
    Mat encode(const Symbols& s) const {
        if (mmc) return mmc->encode(s);
        if (amc) return amc->encode(s);
        return mamc->encode(s);
    }
    DecodeOutcome decode(const Mat& y) const {
        if (mmc) return mmc->decode(y);
        if (amc) return amc->decode(y);
        return mamc->decode(y);
    }
};

CodecSet make_codec(const std::string& scheme, const RingPtr& ring, int n, int N, const Shape& mu,
                    int t, int v, bool variable_rank) {
    CodecSet c;
    if (scheme == "mmc") c.mmc.emplace(ring, n, mu);
    else if (scheme == "amc") c.amc.emplace(ring, n, mu, t, v, variable_rank);
    else if (scheme == "mamc") c.mamc.emplace(ring, n, N, mu, t, v, variable_rank);
    else throw std::invalid_argument("scheme must be mmc, amc or mamc");
    return c;
}

void run_rcf(const std::string& in_path, const std::string& ring_name,
             const std::string& out_path) {
    Mat A = read_matrix_file(in_path);
    if (!ring_name.empty() && !Ring::parse(ring_name)->same(*A.ring()))
        throw std::invalid_argument("--ring disagrees with the matrix header");
    RcfResult r = rcf(A);
    std::ofstream file;
    std::ostream& os = out_path.empty() ? std::cout : (file = open_out(out_path));
    write_matrix(os, r.rcf);
    write_matrix(os, r.transform);
}

void run_snf(const std::string& in_path, const std::string& out_path) {
    Mat A = read_matrix_file(in_path);
    SmithResult sm = smith(A);
    std::ofstream file;
    std::ostream& os = out_path.empty() ? std::cout : (file = open_out(out_path));
    for (size_t i = 0; i < sm.d.size(); ++i)
        os << (i ? " " : "") << A.ring()->elem_to_string(sm.d[i]);
    os << "\n";
    write_matrix(os, sm.u);
    write_matrix(os, sm.v);
}

void run_shape(const std::string& in_path) {
    Mat A = read_matrix_file(in_path);
    std::cout << shape_of(A).str() << "\n";
}

void run_count(const std::string& ring_name, int n, const std::string& mu_text,
               const std::string& kappa_text, const std::string& out_path, uint64_t seed) {
    RingPtr ring = Ring::parse(ring_name);
    Shape mu = parse_shape(mu_text);
    if (mu.s() != static_cast<int>(ring->s()))
        throw std::invalid_argument("mu length does not match the ring's chain length");
    CountContext ctx{static_cast<int64_t>(ring->q()), static_cast<int>(ring->s())};

    std::vector<Shape> kappas;
    if (kappa_text.empty()) kappas = subshapes(mu, n);
    else kappas.push_back(parse_shape(kappa_text));

    std::ofstream file;
    std::ostream& os = out_path.empty() ? std::cout : (file = open_out(out_path));
    os << "# chainring count ring=" << ring->name() << " n=" << n << " mu=" << mu.str()
       << " seed=" << seed << "\n";
    os << "q,s,n,mu,kappa,matrices,rcfs\n";
    for (const Shape& kappa : kappas) {
        os << ctx.q << "," << ctx.s << "," << n << ",\"" << mu.str() << "\",\"" << kappa.str()
           << "\"," << matrix_shape_count(ctx, n, mu, kappa) << ","
           << submodule_count(ctx, mu, kappa) << "\n";
    }
}

void run_capacity(const std::string& channel, const std::string& ring_name, int n, int N,
                  const std::string& mu_text, const std::string& tau_text, int t, int v,
                  const std::string& out_path, uint64_t seed) {
    RingPtr ring = Ring::parse(ring_name);
    Shape mu = parse_shape(mu_text);
    CountContext ctx{static_cast<int64_t>(ring->q()), static_cast<int>(ring->s())};
    if (N < 0) N = n;
    const int m = mu.last();
    const bigrat nbar(n, m), Nbar(N, m);
    std::vector<bigrat> mubar;
    for (int i = 1; i <= mu.s(); ++i) mubar.emplace_back(mu.at(i), m);

    std::optional<Shape> tau;
    if (!tau_text.empty()) tau = parse_shape(tau_text);
    else if (t >= 0) tau = Shape::constant(t, mu.s());

    std::string exact, lower, upper, asym, rate;
    if (channel == "mmc") {
        QLog c = c_mmc(ctx, n, mu);
        Bounds b = c_mmc_bounds(ctx, n, mu);
        exact = fmt(c.value);
        lower = fmt(b.lower);
        upper = fmt(b.upper);
        asym = fmt(rat_to_double(c_mmc_asymptotic(nbar, mubar)));
        rate = fmt(static_cast<double>(mmc_codec_rate(n, mu)));
    } else if (channel == "amc") {
        if (!tau) throw std::invalid_argument("amc capacity needs --tau or --t");
        QLog c = c_amc(ctx, n, mu, *tau);
        Bounds b = c_amc_bounds(ctx, n, mu, *tau);
        std::vector<bigrat> taubar;
        for (int i = 1; i <= mu.s(); ++i) taubar.emplace_back(tau->at(i), m);
        exact = fmt(c.value);
        lower = fmt(b.lower);
        upper = fmt(b.upper);
        asym = fmt(rat_to_double(c_amc_asymptotic(nbar, mubar, taubar)));
        int vv = v >= 0 ? v : tau->last();
        rate = fmt(static_cast<double>(amc_codec_rate(n, mu, vv)));
    } else if (channel == "mamc") {
        if (!tau) throw std::invalid_argument("mamc capacity needs --tau or --t");
        QLog ub = c_mamc_upper(ctx, n, N, mu, *tau);
        AsymptoticBound ab =
            c_mamc_asymptotic_upper(nbar, Nbar, mubar, bigrat(tau->last(), m));
        int vv = v >= 0 ? v : tau->last();
        MamcCode code(ring, n, N, mu, tau->last(), vv);
        exact = "";
        lower = fmt(static_cast<double>(code.symbol_count()));
        upper = fmt(ub.value);
        asym = fmt(rat_to_double(ab.value));
        rate = lower;
    } else {
        throw std::invalid_argument("channel must be mmc, amc or mamc");
    }

    std::ofstream file;
    std::ostream& os = out_path.empty() ? std::cout : (file = open_out(out_path));
    os << "# chainring capacity channel=" << channel << " ring=" << ring->name() << " n=" << n
       << " N=" << N << " mu=" << mu.str() << (tau ? " tau=" + tau->str() : "")
       << " seed=" << seed << "\n";
    os << "channel,q,s,n,N,mu,tau,exact,lower,upper,asymptotic,codec_rate\n";
    os << channel << "," << ctx.q << "," << ctx.s << "," << n << "," << N << ",\"" << mu.str()
       << "\",\"" << (tau ? tau->str() : "") << "\"," << exact << "," << lower << "," << upper
       << "," << asym << "," << rate << "\n";
}

void run_encode(const std::string& scheme, const std::string& ring_name, int n, int N,
                const std::string& mu_text, int t, int v, const std::string& symbol_text,
                const std::string& out_path) {
    RingPtr ring = Ring::parse(ring_name);
    Shape mu = parse_shape(mu_text);
    if (N < 0) N = n;
    if (v < 0) v = t;
    CodecSet codec = make_codec(scheme, ring, n, N, mu, t, v, false);
    Symbols s = parse_symbols(symbol_text, ring->q());
    if (static_cast<long>(s.size()) != codec.symbol_count())
        throw std::invalid_argument("expected " + std::to_string(codec.symbol_count()) +
                                    " symbols, got " + std::to_string(s.size()));
    Mat X = codec.encode(s);
    std::ofstream file;
    std::ostream& os = out_path.empty() ? std::cout : (file = open_out(out_path));
    write_matrix(os, X);
}

void run_decode(const std::string& scheme, const std::string& ring_name, int n, int N,
                const std::string& mu_text, int t, int v, const std::string& in_path) {
    RingPtr ring = Ring::parse(ring_name);
    Shape mu = parse_shape(mu_text);
    if (N < 0) N = n;
    if (v < 0) v = t;
    CodecSet codec = make_codec(scheme, ring, n, N, mu, t, v, false);
    Mat Y = read_matrix_file(in_path);
    DecodeOutcome out = codec.decode(Y);
    if (out.ok()) {
        std::cout << "SUCCESS " << symbols_to_string(out.symbols) << "\n";
    } else {
        std::cout << "FAILURE " << out.reason << "\n";
        g_exit_code = 1;
    }
}

struct TrialResult {
    bool trap_ok = false;
    bool success = false;
    bool correct = false;
};

void run_simulate(const std::string& config_path, uint64_t trials, std::optional<uint64_t> seed,
                  const std::string& out_path, unsigned threads) {
    std::ifstream cf(config_path);
    if (!cf) throw std::invalid_argument("cannot open '" + config_path + "'");
    SimConfig cfg = read_sim_config(cf);
    if (seed) cfg.seed = *seed;

    const bool variable = std::holds_alternative<VariableRank>(cfg.noise);
    const int t = noise_max_rank(cfg.noise);
    const int v = cfg.trap();
    CodecSet codec = make_codec(cfg.channel, cfg.ring, cfg.n, cfg.N, cfg.mu, t, v, variable);
    ChannelConfig chan = cfg.channel_config();

    std::vector<TrialResult> results(trials);
    const Rng root(cfg.seed, 0);
    auto worker = [&](uint64_t lo, uint64_t hi) {
        for (uint64_t trial = lo; trial < hi; ++trial) {
            Rng tr = root.substream(trial);
            Symbols sent(static_cast<size_t>(codec.symbol_count()));
            for (auto& d : sent) d = tr.uniform_below(static_cast<uint32_t>(cfg.ring->q()));
            Mat X = codec.encode(sent);
            Mat Y = cfg.channel == "mmc"   ? mmc_transmit(chan, X, tr).y
                    : cfg.channel == "amc" ? amc_transmit(chan, X, tr).y
                                           : mamc_transmit(chan, X, tr).y;
            DecodeOutcome out = codec.decode(Y);
            TrialResult& r = results[trial];
            r.success = out.ok();
            r.trap_ok = out.ok() || out.reason != "trap-shape-mismatch";
            r.correct = out.ok() && out.symbols == sent;
        }
    };
    if (threads == 0) threads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    uint64_t chunk = (trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        uint64_t lo = w * chunk, hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();

    uint64_t failures = 0, wrong = 0;
    for (const TrialResult& r : results) {
        failures += r.success ? 0 : 1;
        wrong += (r.success && !r.correct) ? 1 : 0;
    }
    double pf = trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0;
    double bound =
        2.0 * t / std::pow(static_cast<double>(cfg.ring->q()), 1.0 + v - t);
    WilsonInterval wi = trials ? wilson_interval(failures, trials, kZ99OneSided)
                               : WilsonInterval{0.0, 1.0};

    std::ofstream file;
    std::ostream& os = out_path.empty() ? std::cout : (file = open_out(out_path));
    os << "# chainring simulate channel=" << cfg.channel << " ring=" << cfg.ring->name()
       << " mu=" << cfg.mu.str() << " n=" << cfg.n << " N=" << cfg.N << " t=" << t << " v=" << v
       << " trials=" << trials << " seed=" << cfg.seed << "\n";
    os << "trial,trap_shape_ok,decode_outcome,symbols_correct\n";
    for (uint64_t i = 0; i < trials; ++i)
        os << i << "," << (results[i].trap_ok ? 1 : 0) << ","
           << (results[i].success ? "success" : "failure") << ","
           << (results[i].correct ? 1 : 0) << "\n";
    os << "# summary failures=" << failures << " undetected_errors=" << wrong
       << " p_f=" << fmt(pf) << " bound=" << fmt(bound) << " wilson99=[" << fmt(wi.lower) << ","
       << fmt(wi.upper) << "]\n";

    if (pf > 0.5) g_exit_code = 1;
}

void run_decompose(const std::string& moduli_text, uint64_t tuples, uint64_t seed) {
    std::vector<int64_t> d;
    std::istringstream is(moduli_text);
    std::string token;
    while (std::getline(is, token, ',')) d.push_back(std::stoll(token));
    CompositeAmbient omega(d);
    auto comps = decompose(omega);
    std::cout << "omega modulus=" << omega.modulus() << " m=" << omega.m() << "\n";
    for (size_t l = 0; l < comps.size(); ++l)
        std::cout << "component " << l + 1 << ": p=" << comps[l].prime << " ring="
                  << comps[l].ring->name() << " mu=" << comps[l].mu.str() << "\n";

    Rng rng(seed, 0);
    for (uint64_t i = 0; i < tuples; ++i) {
        CompositeMat X = uniform_omega_matrix(rng, omega, 1);
        std::vector<Mat> parts;
        for (const auto& comp : comps) parts.push_back(project(X, comp));
        if (!(recombine(omega, comps, parts) == X))
            throw std::runtime_error("round-trip mismatch");  // never expected
    }
    std::cout << "roundtrip ok (" << tuples << " tuples, seed " << seed << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact linear algebra, counting, capacity and codecs for matrix channels "
                 "over finite chain rings"};
    app.require_subcommand(1);

    std::string in_path, out_path, ring_name, mu_text, kappa_text, tau_text;
    std::string scheme, channel, symbol_text, config_path, moduli_text;
    int n = 1, N = -1, t = -1, v = -1;
    uint64_t trials = 1000, seed = 0, tuples = 10000;
    unsigned threads = 0;
    bool seed_given = false;

    auto* c_rcf = app.add_subcommand("rcf", "row canonical form of a matrix file");
    c_rcf->add_option("--in", in_path, "matrix file")->required();
    c_rcf->add_option("--ring", ring_name, "expected ring (checked against the header)");
    c_rcf->add_option("--out", out_path, "output file (default stdout)");
    c_rcf->callback([&] { run_rcf(in_path, ring_name, out_path); });

    auto* c_snf = app.add_subcommand("snf", "Smith normal form: diagonal, then U and V");
    c_snf->add_option("--in", in_path, "matrix file")->required();
    c_snf->add_option("--out", out_path, "output file (default stdout)");
    c_snf->callback([&] { run_snf(in_path, out_path); });

    auto* c_shape = app.add_subcommand("shape", "shape of a matrix file");
    c_shape->add_option("--in", in_path, "matrix file")->required();
    c_shape->callback([&] { run_shape(in_path); });

    auto* c_count = app.add_subcommand("count", "matrix and RCF counts by shape (CSV)");
    c_count->add_option("--ring", ring_name, "ring, e.g. Z4 or F2x3")->required();
    c_count->add_option("--n", n, "rows")->required();
    c_count->add_option("--mu", mu_text, "ambient shape, e.g. 2,3")->required();
    c_count->add_option("--kappa", kappa_text, "single shape (default: all subshapes)");
    c_count->add_option("--out", out_path, "output file (default stdout)");
    c_count->callback([&] { run_count(ring_name, n, mu_text, kappa_text, out_path, seed); });

    auto* c_cap = app.add_subcommand("capacity", "capacity report row (CSV)");
    c_cap->add_option("--channel", channel, "mmc|amc|mamc")->required();
    c_cap->add_option("--ring", ring_name, "ring")->required();
    c_cap->add_option("--n", n, "input rows")->required();
    c_cap->add_option("--N", N, "output rows (default n)");
    c_cap->add_option("--mu", mu_text, "ambient shape")->required();
    c_cap->add_option("--tau", tau_text, "noise shape");
    c_cap->add_option("--t", t, "constant noise rank (alternative to --tau)");
    c_cap->add_option("--v", v, "codec trap size (default t)");
    c_cap->add_option("--out", out_path, "output file (default stdout)");
    c_cap->callback([&] {
        run_capacity(channel, ring_name, n, N, mu_text, tau_text, t, v, out_path, seed);
    });

    auto* c_enc = app.add_subcommand("encode", "encode symbols into a codeword matrix");
    c_enc->add_option("--scheme", scheme, "mmc|amc|mamc")->required();
    c_enc->add_option("--ring", ring_name, "ring")->required();
    c_enc->add_option("--n", n, "input rows")->required();
    c_enc->add_option("--N", N, "output rows (mamc)");
    c_enc->add_option("--mu", mu_text, "ambient shape")->required();
    c_enc->add_option("--t", t, "noise rank")->default_val(0);
    c_enc->add_option("--v", v, "trap size (default t)");
    c_enc->add_option("--symbols", symbol_text, "q-ary digit string")->required();
    c_enc->add_option("--out", out_path, "output file (default stdout)");
    c_enc->callback([&] {
        run_encode(scheme, ring_name, n, N, mu_text, std::max(t, 0), v, symbol_text, out_path);
    });

    auto* c_dec = app.add_subcommand("decode", "decode a received matrix file");
    c_dec->add_option("--scheme", scheme, "mmc|amc|mamc")->required();
    c_dec->add_option("--ring", ring_name, "ring")->required();
    c_dec->add_option("--n", n, "input rows")->required();
    c_dec->add_option("--N", N, "output rows (mamc)");
    c_dec->add_option("--mu", mu_text, "ambient shape")->required();
    c_dec->add_option("--t", t, "noise rank")->default_val(0);
    c_dec->add_option("--v", v, "trap size (default t)");
    c_dec->add_option("--in", in_path, "received matrix file")->required();
    c_dec->callback([&] {
        run_decode(scheme, ring_name, n, N, mu_text, std::max(t, 0), v, in_path);
    });

    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo codec run over a channel config");
    c_sim->add_option("--config", config_path, "key=value config file")->required();
    c_sim->add_option("--trials", trials, "number of trials")->default_val(1000);
    auto* seed_opt = c_sim->add_option("--seed", seed, "seed override");
    c_sim->add_option("--threads", threads, "worker threads (default: automatic)");
    c_sim->add_option("--out", out_path, "output CSV (default stdout)");
    c_sim->callback([&] {
        seed_given = seed_opt->count() > 0;
        run_simulate(config_path, trials,
                     seed_given ? std::optional<uint64_t>(seed) : std::nullopt, out_path,
                     threads);
    });

    auto* c_dcp = app.add_subcommand("decompose", "composite ambient decomposition + self-test");
    c_dcp->add_option("--moduli", moduli_text, "divisibility chain, e.g. 12,6,6,2")->required();
    c_dcp->add_option("--tuples", tuples, "round-trip sample count")->default_val(10000);
    c_dcp->add_option("--seed", seed, "seed")->default_val(0);
    c_dcp->callback([&] { run_decompose(moduli_text, tuples, seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_exit_code;
}
