#include "fim/counting.hpp"
#include "fim/growth.hpp"
#include "fim/munn.hpp"
#include "fim/oracle.hpp"
#include "fim/words.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

unsigned long long env_work_budget() {
    const char* s = std::getenv("FIM_WORK_BUDGET");
    if (!s || !*s) return fim::default_word_budget;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0' || v == 0) {
        std::cerr << "warning: ignoring invalid FIM_WORK_BUDGET\n";
        return fim::default_word_budget;
    }
    return v;
}

int run_spheres(long rank, long max_k, const std::string& format) {
    fim::SphereTable table = fim::sphere_table(rank, max_k);
    if (format == "json")
        std::cout << table.to_json() << "\n";
    else
        std::cout << table.to_csv();
    return 0;
}

std::vector<fim::Letter> random_raw_word(std::mt19937_64& rng, int rank, int max_len) {
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_int_distribution<int> letter_dist(0, 2 * rank - 1);
    int len = len_dist(rng);
    std::vector<fim::Letter> word;
    word.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        int c = letter_dist(rng);
        word.emplace_back(c / 2 + 1, c % 2 == 0 ? +1 : -1);
    }
    return word;
}

int run_verify(int rank, long max_k, unsigned long long budget, long samples,
               unsigned long long seed) {
    fim::BfsCensus census = fim::BfsCensus::run(rank, max_k, budget);
    bool mismatch = false;
    for (long K = 0; K <= census.completed_k; ++K) {
        fim::BigCount oracle_sphere = census.sphere(K);
        fim::BigCount formula_sphere = fim::sphere_size(rank, K);
        bool ok = oracle_sphere == formula_sphere;
        mismatch |= !ok;
        std::cout << "K=" << K << " sphere: oracle=" << oracle_sphere.get_str()
                  << " formula=" << formula_sphere.get_str() << (ok ? " ok" : " MISMATCH") << "\n";
        const auto& level = census.levels[static_cast<std::size_t>(K)];
        for (long t = (K % 2 == 0) ? 0 : 1; t <= K; t += 2) {
            long k = (K - t) / 2;
            auto it = level.find({t, k});
            fim::BigCount oracle_count = it == level.end() ? fim::BigCount(0) : it->second;
            fim::BigCount formula_count = fim::count_munn_trees(rank, t, k);
            bool cell_ok = oracle_count == formula_count;
            mismatch |= !cell_ok;
            std::cout << "K=" << K << " t=" << t << " k=" << k
                      << ": oracle=" << oracle_count.get_str()
                      << " formula=" << formula_count.get_str() << (cell_ok ? " ok" : " MISMATCH")
                      << "\n";
        }
    }

    long algebra_failures = 0;
    if (samples > 0) {
        std::mt19937_64 rng(seed);
        for (long i = 0; i < samples; ++i) {
            auto wu = random_raw_word(rng, rank, 8);
            auto wv = random_raw_word(rng, rank, 8);
            auto ww = random_raw_word(rng, rank, 8);
            fim::MunnTree u = fim::MunnTree::eval(wu, rank);
            fim::MunnTree v = fim::MunnTree::eval(wv, rank);
            fim::MunnTree w = fim::MunnTree::eval(ww, rank);
            bool ok = (u * v) * w == u * (v * w);
            ok = ok && u * u.inverse() * u == u;
            auto concatenated = wu;
            concatenated.insert(concatenated.end(), wv.begin(), wv.end());
            ok = ok && fim::MunnTree::eval(concatenated, rank) == u * v;
            fim::MunnTree e = u * u.inverse();
            fim::MunnTree f = v * v.inverse();
            ok = ok && e * f == f * e;
            ok = ok && fim::MunnTree::eval(w.geodesic_word(), rank) == w;
            ok = ok && static_cast<long>(w.geodesic_word().size()) == w.length();
            if (!ok) ++algebra_failures;
        }
        std::cout << "algebra: " << (samples - algebra_failures) << "/" << samples
                  << " samples passed (seed " << seed << ")\n";
    }

    if (mismatch || algebra_failures > 0) {
        std::cout << "verify: MISMATCH\n";
        return 4;
    }
    if (census.exhausted) {
        std::cout << "verify: partial, work budget exhausted after K=" << census.completed_k
                  << " (" << census.words_examined << " of " << budget << " words)\n";
        return 3;
    }
    std::cout << "verify: PASS (rank " << rank << ", K <= " << census.completed_k << ")\n";
    return 0;
}

struct GrowthCells {
    std::string rate;
    std::string asym;
    std::string idem;
    std::string err;
    std::string lo;
    std::string hi;
    std::string poly;
};

GrowthCells growth_cells(int rank, int digits) {
    // guard digits keep the last printed digit correctly rounded; the reported
    // error bound covers the print rounding as well
    int work = digits > 9994 ? 10000 : digits + 6;
    fim::CertifiedGrowthRate cert = fim::growth_rate_certified(rank, work);
    fim::PrecisionReal idem = fim::idempotent_growth_rate(rank, work);
    mpq_class half_ulp(1, 2);
    half_ulp /= fim::detail::zpow(10, static_cast<unsigned long>(digits));
    fim::Real err = cert.rate.error_bound +
                    fim::Real::of(half_ulp, cert.rate.value.prec());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", std::min(digits, 17), fim::asymptotic_growth(rank));
    return {cert.rate.value.fixed(digits),
            buf,
            idem.value.fixed(digits),
            err.sci(3),
            cert.bracket_lo.get_str(),
            cert.bracket_hi.get_str(),
            fim::growth_poly(rank).poly.coeffs_descending()};
}

int run_growth(int rank, int digits, const std::string& format) {
    if (rank == 1) {
        std::cerr << "rank 1 grows polynomially, not exponentially: sphere sizes are R^2+3R+2 at"
                     " radius 2R+1 and R^2+2R+1 at radius 2R; try 'fim spheres --rank 1'\n";
        return 2;
    }
    GrowthCells c = growth_cells(rank, digits);
    if (format == "json") {
        std::cout << "{\"rank\":" << rank << ",\"digits\":" << digits << ",\"growth_rate\":\""
                  << c.rate << "\",\"error_bound\":\"" << c.err << "\",\"bracket_lo\":\"" << c.lo
                  << "\",\"bracket_hi\":\"" << c.hi << "\",\"polynomial\":\"" << c.poly
                  << "\",\"asymptotic\":\"" << c.asym << "\",\"idempotent_rate\":\"" << c.idem
                  << "\"}\n";
    } else {
        std::cout << "rank,growth_rate,asymptotic,idempotent_rate\n";
        std::cout << rank << ',' << c.rate << ',' << c.asym << ',' << c.idem << '\n';
    }
    return 0;
}

int run_table1(int digits, const std::string& format) {
    if (format == "json") {
        std::cout << "{\"digits\":" << digits << ",\"rows\":[";
        for (int rank = 2; rank <= 7; ++rank) {
            GrowthCells c = growth_cells(rank, digits);
            if (rank > 2) std::cout << ',';
            std::cout << "{\"rank\":" << rank << ",\"growth_rate\":\"" << c.rate
                      << "\",\"asymptotic\":\"" << c.asym << "\",\"idempotent_rate\":\"" << c.idem
                      << "\"}";
        }
        std::cout << "]}\n";
    } else {
        std::cout << "rank,growth_rate,asymptotic,idempotent_rate\n";
        for (int rank = 2; rank <= 7; ++rank) {
            GrowthCells c = growth_cells(rank, digits);
            std::cout << rank << ',' << c.rate << ',' << c.asym << ',' << c.idem << '\n';
        }
    }
    return 0;
}

const char* certificate_line(const fim::IrreducibilityResult& cert, unsigned long prime_budget,
                             std::string& storage) {
    switch (cert.kind) {
        case fim::IrreducibilityResult::Kind::Irreducible:
            storage = "irreducible over the rationals (certified modulo " +
                      std::to_string(cert.prime) + ")";
            break;
        case fim::IrreducibilityResult::Kind::ReducibleWitness:
            storage = "reducible: divisible by " + cert.witness.pretty();
            break;
        case fim::IrreducibilityResult::Kind::Unknown:
            storage = "unknown: no certifying prime up to " + std::to_string(prime_budget);
            break;
    }
    return storage.c_str();
}

int run_poly(int rank, bool rank_given, bool factor_check, unsigned long prime_budget,
             int scan_to) {
    std::string line;
    if (scan_to >= 2) {
        for (int r = 2; r <= scan_to; ++r) {
            fim::IrreducibilityResult cert = fim::irreducibility_certificate(r, prime_budget);
            std::cout << "rank " << r << ": " << certificate_line(cert, prime_budget, line)
                      << std::endl;
        }
        return 0;
    }
    if (!rank_given) {
        std::cerr << "poly: either --rank or --scan-to is required\n";
        return 1;
    }
    fim::GrowthPolynomial g = fim::growth_poly(rank);
    std::cout << g.poly.coeffs_descending() << "\n";
    if (factor_check) {
        fim::IrreducibilityResult cert = fim::irreducibility_certificate(rank, prime_budget);
        std::cout << certificate_line(cert, prime_budget, line) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact sphere counts and growth rates of free inverse monoids"};
    app.require_subcommand(1);

    long sp_rank = 0, sp_maxk = 10;
    std::string sp_format = "csv";
    CLI::App* spheres = app.add_subcommand("spheres", "closed-form sphere/ball table");
    spheres->add_option("--rank", sp_rank, "alphabet rank")
        ->required()
        ->check(CLI::Range(1L, 1000000L));
    spheres->add_option("--max-k", sp_maxk, "largest radius, inclusive")
        ->check(CLI::Range(0L, 1000000L));
    spheres->add_option("--format", sp_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    int ve_rank = 0;
    long ve_maxk = 8, ve_samples = 0;
    unsigned long long ve_budget = 0, ve_seed = 12345;
    CLI::App* verify = app.add_subcommand(
        "verify", "compare brute-force enumeration against the closed forms");
    verify->add_option("--rank", ve_rank, "alphabet rank")->required()->check(CLI::Range(1, 127));
    verify->add_option("--max-k", ve_maxk, "largest radius to enumerate")
        ->check(CLI::Range(0L, 1000L));
    verify->add_option("--budget", ve_budget,
                       "work budget in generator products (default FIM_WORK_BUDGET or 10^7)");
    verify->add_option("--algebra-samples", ve_samples, "random algebraic-law samples to run")
        ->check(CLI::Range(0L, 100000000L));
    verify->add_option("--seed", ve_seed, "seed for the algebraic-law samples");

    int gr_rank = 0, gr_digits = 12;
    std::string gr_format = "csv";
    CLI::App* growth = app.add_subcommand("growth", "certified exponential growth rate");
    growth->add_option("--rank", gr_rank, "alphabet rank")->required()->check(CLI::Range(1, 2048));
    growth->add_option("--digits", gr_digits, "certified decimal digits")
        ->check(CLI::Range(1, 10000));
    growth->add_option("--format", gr_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    int t1_digits = 3;
    std::string t1_format = "csv";
    CLI::App* table1 = app.add_subcommand("table1", "growth summary for ranks 2..7");
    table1->add_option("--digits", t1_digits, "decimal digits per entry")
        ->check(CLI::Range(1, 10000));
    table1->add_option("--format", t1_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    int po_rank = 0, po_scan = 0;
    bool po_factor = false;
    unsigned long po_budget = 1000;
    CLI::App* poly = app.add_subcommand("poly", "growth polynomial coefficients");
    CLI::Option* po_rank_opt =
        poly->add_option("--rank", po_rank, "alphabet rank")->check(CLI::Range(2, 2048));
    poly->add_flag("--factor-check", po_factor, "report an irreducibility certificate");
    poly->add_option("--prime-budget", po_budget, "largest prime tried for certificates")
        ->check(CLI::Range(2UL, 1048576UL));
    poly->add_option("--scan-to", po_scan,
                     "certify every rank from 2 up to this bound (long-running for large bounds)")
        ->check(CLI::Range(2, 2048))
        ->excludes(po_rank_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (spheres->parsed()) return run_spheres(sp_rank, sp_maxk, sp_format);
        if (verify->parsed()) {
            unsigned long long budget = verify->count("--budget") ? ve_budget : env_work_budget();
            if (budget == 0) {
                std::cerr << "verify: budget must be positive\n";
                return 1;
            }
            return run_verify(ve_rank, ve_maxk, budget, ve_samples, ve_seed);
        }
        if (growth->parsed()) return run_growth(gr_rank, gr_digits, gr_format);
        if (table1->parsed()) return run_table1(t1_digits, t1_format);
        if (poly->parsed())
            return run_poly(po_rank, poly->count("--rank") > 0, po_factor, po_budget, po_scan);
    } catch (const fim::MonogenicGrowthError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const fim::BudgetExceeded& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
