#include "simcf/table.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

namespace simcf {

bool admissible(const mpz_class& n, const mpz_class& p) {
    mpz_class a = abs(n);
    if (a <= 1) return false;
    // Strip p^2 factors: only the parity of v_p matters.
    mpz_class psq = p * p;
    mpz_class k = a;
    while (mpz_divisible_p(k.get_mpz_t(), psq.get_mpz_t())) k /= psq;
    if (mpz_divisible_p(k.get_mpz_t(), p.get_mpz_t())) return false; // odd p-power left
    if (mpz_perfect_square_p(k.get_mpz_t())) return false;
    mpz_class signed_k = (n < 0) ? mpz_class(-k) : k;
    if (p == 2) {
        mpz_class r = signed_k % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    return mpz_legendre(signed_k.get_mpz_t(), p.get_mpz_t()) == 1;
}

RootSelect sqrt_row_root_select(const mpz_class& n, const mpz_class& p) {
    QuadElem x = QuadElem::make(BigRat(0), BigRat(1), n);
    if (x.is_rational()) throw Error("square radicand has no root branch");
    mpz_class f = x.b().get_num(); // sqrt(n) = f sqrt(d), integer f >= 1
    const mpz_class& d = x.d();
    RootSelect base = default_root_select(d, p);
    if (p == 2) {
        mpz_class f_odd = f;
        while (f_odd % 2 == 0) f_odd /= 2;
        // f_odd * s must be 1 mod 4; the default branch has s = 1 mod 4.
        return (f_odd % 4 == 1) ? base : opposite_root_select(base, p);
    }
    mpz_class f_free = f;
    while (f_free % p == 0) f_free /= p;
    mpz_class t = f_free * base.residue % p;
    if (t < 0) t += p;
    // Embedded root residue of k below p/2.
    return (2 * t < p) ? base : opposite_root_select(base, p);
}

void parallel_for(long count, int jobs, const std::function<void(long)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        while (true) {
            long i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n_threads = std::min<long>(jobs, count);
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

namespace {

std::vector<mpz_class> admissible_range(const mpz_class& p, const mpz_class& lo,
                                        const mpz_class& hi) {
    // Ordered by |n| ascending, matching the published tables.
    std::vector<mpz_class> out;
    if (lo >= 0) {
        for (mpz_class n = lo; n <= hi; ++n)
            if (admissible(n, p)) out.push_back(n);
    } else {
        mpz_class start = (hi < -1) ? -hi : mpz_class(2);
        for (mpz_class a = start; a <= -lo; ++a) {
            mpz_class n = -a;
            if (n <= hi && admissible(n, p)) out.push_back(n);
        }
    }
    return out;
}

TableRow make_row(const mpz_class& n, const mpz_class& p, long max_steps) {
    TableRow row;
    row.n = n;
    QuadElem x = QuadElem::make(BigRat(0), BigRat(1), n);
    EmbeddingCtx ctx(p, x.d(), sqrt_row_root_select(n, p));
    Expansion exp = expand(x, ctx, max_steps);
    row.rendering = render_expansion(exp);
    row.status = exp.status;
    row.preperiod = exp.preperiod;
    row.period = exp.period;
    if (exp.periodic() && n > 0) {
        try {
            ExponentSummary s = gamma_exponents(exp, ctx);
            row.has_gamma = true;
            row.gamma_real = s.gamma_real;
            row.gamma_padic = s.gamma_padic;
        } catch (const DegenerateEigenvalue&) {
            row.has_gamma = false;
        }
    }
    return row;
}

} // namespace

std::vector<TableRow> sqrt_table(const mpz_class& p, const mpz_class& lo, const mpz_class& hi,
                                 long max_steps, int jobs) {
    if (lo < 0 && hi >= 0) throw Error("radicand range must not straddle zero");
    std::vector<mpz_class> ns = admissible_range(p, lo, hi);
    std::vector<TableRow> rows(ns.size());
    parallel_for(static_cast<long>(ns.size()), jobs,
                 [&](long i) { rows[i] = make_row(ns[i], p, max_steps); });
    return rows;
}

SweepCounts periodicity_sweep(const mpz_class& p, const mpz_class& lo, const mpz_class& hi,
                              long max_steps, int jobs, bool include_lo) {
    std::vector<mpz_class> ns;
    for (mpz_class n = include_lo ? lo : mpz_class(lo + 1); n <= hi; ++n)
        if (admissible(n, p)) ns.push_back(n);

    std::vector<char> detected(ns.size(), 0);
    parallel_for(static_cast<long>(ns.size()), jobs, [&](long i) {
        QuadElem x = QuadElem::make(BigRat(0), BigRat(1), ns[i]);
        EmbeddingCtx ctx(p, x.d(), sqrt_row_root_select(ns[i], p));
        Expansion exp = expand(x, ctx, max_steps);
        detected[i] = exp.periodic() ? 1 : 0;
    });

    SweepCounts out;
    out.p = p;
    out.total = static_cast<long>(ns.size());
    for (char c : detected) out.detected += c;
    out.undetected = out.total - out.detected;
    return out;
}

Format parse_format(const std::string& name) {
    if (name == "md") return Format::Md;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw Error("unknown format '" + name + "' (expected md, csv, or json)");
}

namespace {

std::string sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string sqrt_label(const mpz_class& n) { return "sqrt(" + n.get_str() + ")"; }

std::string status_name(ExpStatus s) {
    switch (s) {
        case ExpStatus::Finite: return "finite";
        case ExpStatus::Periodic: return "periodic";
        default: return "truncated";
    }
}

} // namespace

std::string format_sqrt_table(const std::vector<TableRow>& rows, Format f, const mpz_class& p) {
    std::ostringstream os;
    bool with_gamma = false;
    for (const auto& r : rows) with_gamma = with_gamma || r.has_gamma;

    switch (f) {
        case Format::Md: {
            os << "| radicand | expansion |";
            if (with_gamma) os << " gamma_r | gamma_2 |";
            os << "\n|---|---|";
            if (with_gamma) os << "---|---|";
            os << "\n";
            for (const auto& r : rows) {
                os << "| " << sqrt_label(r.n) << " | " << r.rendering << " |";
                if (with_gamma) {
                    if (r.has_gamma)
                        os << " " << sig6(r.gamma_real) << " | " << sig6(r.gamma_padic) << " |";
                    else
                        os << "  |  |";
                }
                os << "\n";
            }
            break;
        }
        case Format::Csv: {
            os << "radicand,expansion";
            if (with_gamma) os << ",gamma_r,gamma_2";
            os << "\n";
            for (const auto& r : rows) {
                os << sqrt_label(r.n) << ",\"" << r.rendering << "\"";
                if (with_gamma) {
                    if (r.has_gamma)
                        os << "," << sig6(r.gamma_real) << "," << sig6(r.gamma_padic);
                    else
                        os << ",,";
                }
                os << "\n";
            }
            break;
        }
        case Format::Json: {
            nlohmann::json doc;
            doc["schema"] = "simcf.table/1";
            doc["p"] = p.get_str();
            doc["rows"] = nlohmann::json::array();
            for (const auto& r : rows) {
                nlohmann::json row;
                row["n"] = r.n.get_str();
                row["expansion"] = r.rendering;
                row["status"] = status_name(r.status);
                row["preperiod"] = r.preperiod;
                row["period"] = r.period;
                if (r.has_gamma) {
                    row["gamma_r"] = sig6(r.gamma_real);
                    row["gamma_2"] = sig6(r.gamma_padic);
                }
                doc["rows"].push_back(row);
            }
            os << doc.dump(2) << "\n";
            break;
        }
    }
    return os.str();
}

std::string format_sweep_table(const std::vector<SweepCounts>& rows, Format f, long max_steps) {
    std::ostringstream os;
    switch (f) {
        case Format::Md: {
            os << "| p | detected | undetected | total |\n|---|---|---|---|\n";
            for (const auto& r : rows)
                os << "| " << r.p.get_str() << " | " << r.detected << " | " << r.undetected
                   << " | " << r.total << " |\n";
            break;
        }
        case Format::Csv: {
            os << "p,detected,undetected,total\n";
            for (const auto& r : rows)
                os << r.p.get_str() << "," << r.detected << "," << r.undetected << ","
                   << r.total << "\n";
            break;
        }
        case Format::Json: {
            nlohmann::json doc;
            doc["schema"] = "simcf.sweep/1";
            doc["max_steps"] = max_steps;
            doc["rows"] = nlohmann::json::array();
            for (const auto& r : rows) {
                nlohmann::json row;
                row["p"] = r.p.get_str();
                row["detected"] = r.detected;
                row["undetected"] = r.undetected;
                row["total"] = r.total;
                doc["rows"].push_back(row);
            }
            os << doc.dump(2) << "\n";
            break;
        }
    }
    return os.str();
}

} // namespace simcf
