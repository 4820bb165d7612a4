#include "diffusion/path_analytics.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>
#include <string>

#include "diffusion/enumeration.hpp"
#include "diffusion/graph.hpp"
#include "diffusion/quiescence.hpp"
#include "diffusion/simd/kernels.hpp"

namespace diffusion {

namespace {

void require_positive(int n, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + " needs n >= 1, got " + std::to_string(n));
}

}  // namespace

int pq2_path_closed(int n) {
    require_positive(n, "pq2_path_closed");
    return (n + 2) / 3;
}

std::uint64_t j_recurrence(int n) {
    require_positive(n, "j_recurrence");
    if (n > 90) throw std::invalid_argument("j_recurrence overflows uint64 beyond n = 90");
    std::uint64_t prev = 2;  // J_1
    std::uint64_t cur = 4;   // J_2
    if (n == 1) return prev;
    for (int k = 3; k <= n; ++k) {
        const std::uint64_t next = cur + prev - 2;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::uint64_t fibonacci(int k) {
    if (k < 0 || k > 92) throw std::invalid_argument("fibonacci index must lie in [0, 92]");
    std::uint64_t a = 0;
    std::uint64_t b = 1;
    for (int i = 0; i < k; ++i) {
        const std::uint64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t j_fibonacci(int n) {
    require_positive(n, "j_fibonacci");
    return 2 * (fibonacci(n - 1) + 1);
}

bool check_endpoint_lemma(int n) {
    if (n < 2) throw std::invalid_argument("check_endpoint_lemma needs n >= 2");
    if (n > kMaxExhaustiveOrder) throw std::invalid_argument("check_endpoint_lemma: n beyond the exhaustive bound");
    const Graph g = path(n);
    const auto& kernels = simd::active_kernels();
    const std::uint64_t full = VertexSet::full_bits(n);
    const std::uint64_t last_two = std::uint64_t{3} << (n - 2);
    const std::uint64_t first_two = 3;
    for (std::uint64_t h = 1; h < full; ++h) {
        if (!kernels.is_ccd(g.mask_rows(), n, h)) continue;
        if (std::popcount(h & last_two) != 1 || std::popcount(h & first_two) != 1) return false;
    }
    return true;
}

std::vector<PathReportRow> path_table(int n_max, int threads) {
    require_positive(n_max, "path_table");
    std::vector<PathReportRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        const Graph g = path(n);
        PathReportRow row;
        row.n = n;
        row.j_bruteforce = count_zero2_subsets(g, true, threads);
        row.j_recurrence = j_recurrence(n);
        row.j_fibonacci = j_fibonacci(n);
        row.pq2_bruteforce = pq2(g, {.threads = threads}).value_or(0);
        row.pq2_closed = pq2_path_closed(n);
        if (!row.consistent()) {
            throw std::logic_error("path table row " + std::to_string(n) + " is inconsistent: J = " +
                                   std::to_string(row.j_bruteforce) + "/" + std::to_string(row.j_recurrence) + "/" +
                                   std::to_string(row.j_fibonacci) + ", PQ2 = " + std::to_string(row.pq2_bruteforce) +
                                   "/" + std::to_string(row.pq2_closed));
        }
        rows.push_back(row);
    }
    return rows;
}

void write_path_table_csv(std::ostream& out, const std::vector<PathReportRow>& rows) {
    out << "n,j_bruteforce,j_recurrence,j_fibonacci,pq2_bruteforce,pq2_closed\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.j_bruteforce << ',' << r.j_recurrence << ',' << r.j_fibonacci << ','
            << r.pq2_bruteforce << ',' << r.pq2_closed << '\n';
    }
}

}  // namespace diffusion
