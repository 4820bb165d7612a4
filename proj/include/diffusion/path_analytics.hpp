#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace diffusion {

// Closed forms for paths P_n, n >= 1. J_n counts the 0_2-invoking subsets of
// P_n including the empty set and V(P_n). All functions throw
// std::invalid_argument for n = 0.

/// ceil(n / 3).
int pq2_path_closed(int n);

/// J_1 = 2, J_2 = 4, J_n = J_{n-1} + J_{n-2} - 2. Valid for n <= 90.
std::uint64_t j_recurrence(int n);

/// Fibonacci numbers with F_0 = 0, F_1 = 1. Valid for k <= 92.
std::uint64_t fibonacci(int k);

/// J_n = 2 (F_{n-1} + 1).
std::uint64_t j_fibonacci(int n);

/// Every proper nontrivial 0_2-invoking subset of P_n holds exactly one of
/// the last two path vertices, and exactly one of the first two. n >= 2.
bool check_endpoint_lemma(int n);

struct PathReportRow {
    int n = 0;
    std::uint64_t j_bruteforce = 0;
    std::uint64_t j_recurrence = 0;
    std::uint64_t j_fibonacci = 0;
    int pq2_bruteforce = 0;
    int pq2_closed = 0;

    bool consistent() const {
        return j_bruteforce == j_recurrence && j_recurrence == j_fibonacci && pq2_bruteforce == pq2_closed;
    }
};

/// Rows 1..n_max. Throws std::logic_error if any row's columns disagree.
std::vector<PathReportRow> path_table(int n_max, int threads = 1);

void write_path_table_csv(std::ostream& out, const std::vector<PathReportRow>& rows);

}  // namespace diffusion
