#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <vector>

namespace chow {

// All ring arithmetic in this library is exact. Int is an arbitrary-precision
// integer, Rat an arbitrary-precision rational; machine words are used only
// for indices, ranks and exponents, which are tiny.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Pascal-recurrence binomial. n is small everywhere in this library (bounded
// by the ground-set size), so rebuilding the row per call is cheap and keeps
// the function pure.
inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<Int> row(static_cast<size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[j] += row[j - 1];
    return row[static_cast<size_t>(k)];
}

// multinomial(n; k_1..k_m) with sum(k_i) == n, as a product of binomials.
inline Int multinomial(int n, const std::vector<int>& parts) {
    int sum = 0;
    Int result = 1;
    for (int k : parts) {
        if (k < 0) throw std::invalid_argument("multinomial: negative part");
        sum += k;
        result *= binomial(sum, k);
    }
    if (sum != n) throw std::invalid_argument("multinomial: parts do not sum to n");
    return result;
}

} // namespace chow
