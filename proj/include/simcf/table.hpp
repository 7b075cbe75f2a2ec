#pragma once

#include <functional>
#include <string>
#include <vector>

#include "simcf/analysis.hpp"

namespace simcf {

// Whether sqrt(n) embeds into Q_p after stripping even powers of p:
// n = p^(2m) k with p not dividing k, k non-square, and k (or -k for
// negative n) a square in Q_p.
bool admissible(const mpz_class& n, const mpz_class& p);

// Root branch used by the published sqrt(n) tables, applied to the
// normalized radicand d of sqrt(n) = f sqrt(d): the embedded root of
// the p-free part k of n is 1 mod 4 for p = 2, and lies below p/2 for
// odd p.  Requires admissible(n, p).
RootSelect sqrt_row_root_select(const mpz_class& n, const mpz_class& p);

struct TableRow {
    mpz_class n;           // radicand, sign included
    std::string rendering; // bracketed expansion
    ExpStatus status = ExpStatus::Truncated;
    long preperiod = 0;
    long period = 0;
    bool has_gamma = false;
    double gamma_real = 0;
    double gamma_padic = 0;
};

// Expansion rows of sqrt(n) for all admissible n in [lo, hi], ordered
// by |n| ascending; gamma columns fill in for periodic real rows.
std::vector<TableRow> sqrt_table(const mpz_class& p, const mpz_class& lo, const mpz_class& hi,
                                 long max_steps, int jobs);

struct SweepCounts {
    mpz_class p;
    long detected = 0;
    long undetected = 0;
    long total = 0;
};

// Periodicity counts over admissible sqrt(n), lo < n <= hi (or the
// closed variant when include_lo), within the step budget.
SweepCounts periodicity_sweep(const mpz_class& p, const mpz_class& lo, const mpz_class& hi,
                              long max_steps, int jobs, bool include_lo = false);

enum class Format { Md, Csv, Json };

Format parse_format(const std::string& name);

// Document renderers; byte-deterministic for fixed inputs.
std::string format_sqrt_table(const std::vector<TableRow>& rows, Format f, const mpz_class& p);
std::string format_sweep_table(const std::vector<SweepCounts>& rows, Format f, long max_steps);

// Deterministic worker pool: applies fn to 0..count-1, any order.
void parallel_for(long count, int jobs, const std::function<void(long)>& fn);

} // namespace simcf
