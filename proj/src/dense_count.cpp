#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ecv/multiplicity.hpp"

// Inclusion-exclusion over "vertex v has degree <= 1" events.  The signed
// terms agree to hundreds of digits before cancelling, so the whole column is
// accumulated in exact integers and converted to logs only at the end.

namespace ecv {

namespace {

mpz_class matching_count_int(int edges, int n) {
    if (edges < 0 || n < 0 || 2 * edges > n) return 0;
    mpz_class num, d1, d2;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_fac_ui(d1.get_mpz_t(), static_cast<unsigned long>(edges));
    d1 <<= edges;
    mpz_fac_ui(d2.get_mpz_t(), static_cast<unsigned long>(n - 2 * edges));
    d1 *= d2;
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), d1.get_mpz_t());
    return num;
}

mpz_class sparse_interface_count_int(int edges, int n_sparse, int n_dense) {
    if (edges < 0) return 0;
    if (n_dense == 0) return matching_count_int(edges, n_sparse);
    mpz_class total = 0, term, pw;
    const int e_lo = std::max(0, 2 * edges - n_sparse);
    const int e_hi = std::min(edges, n_sparse);
    for (int e = e_lo; e <= e_hi; ++e) {
        mpz_bin_uiui(term.get_mpz_t(), static_cast<unsigned long>(n_sparse),
                     static_cast<unsigned long>(e));
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(n_dense),
                      static_cast<unsigned long>(e));
        term *= pw;
        term *= matching_count_int(edges - e, n_sparse - e);
        total += term;
    }
    return total;
}

double log_from_int(const mpz_class& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    signed long ex = 0;
    const double mant = mpz_get_d_2exp(&ex, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(ex) * 0.6931471805599453;
}

}  // namespace

std::vector<double> min_degree_two_log_column(int n) {
    if (n < 0) throw std::invalid_argument("negative graph order");
    const long e_max = static_cast<long>(n) * (n - 1) / 2;
    std::vector<mpz_class> acc(static_cast<std::size_t>(e_max + 1), mpz_class(0));

    for (int s = 0; s <= n; ++s) {
        const int rest = n - s;
        const long rest_dyads = static_cast<long>(rest) * (rest - 1) / 2;
        // terms with j edges touching the s relaxed vertices
        const int j_max = rest > 0 ? s : s / 2;
        std::vector<mpz_class> coef(static_cast<std::size_t>(j_max + 1));
        mpz_class choose_s;
        mpz_bin_uiui(choose_s.get_mpz_t(), static_cast<unsigned long>(n),
                     static_cast<unsigned long>(s));
        for (int j = 0; j <= j_max; ++j)
            coef[static_cast<std::size_t>(j)] =
                choose_s * sparse_interface_count_int(j, s, rest);

        mpz_class bin = 1;  // binom(rest_dyads, t), updated incrementally
        for (long t = 0; t <= rest_dyads; ++t) {
            if (t > 0) {
                mpz_mul_ui(bin.get_mpz_t(), bin.get_mpz_t(),
                           static_cast<unsigned long>(rest_dyads - t + 1));
                mpz_divexact_ui(bin.get_mpz_t(), bin.get_mpz_t(),
                                static_cast<unsigned long>(t));
            }
            for (int j = 0; j <= j_max; ++j) {
                const long e = t + j;
                if (e > e_max) break;
                auto& slot = acc[static_cast<std::size_t>(e)];
                if (s % 2 == 0)
                    mpz_addmul(slot.get_mpz_t(), coef[static_cast<std::size_t>(j)].get_mpz_t(),
                               bin.get_mpz_t());
                else
                    mpz_submul(slot.get_mpz_t(), coef[static_cast<std::size_t>(j)].get_mpz_t(),
                               bin.get_mpz_t());
            }
        }
    }

    std::vector<double> out(static_cast<std::size_t>(e_max + 1));
    for (long e = 0; e <= e_max; ++e) {
        const auto& v = acc[static_cast<std::size_t>(e)];
        if (v < 0 || (n >= 3 && e >= n && v == 0))
            throw std::logic_error("min-degree-2 count failed sanity check");
        out[static_cast<std::size_t>(e)] = log_from_int(v);
    }
    return out;
}

}  // namespace ecv
