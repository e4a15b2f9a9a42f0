#include "chow/oracle.hpp"

#include "chow/text.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace chow {

namespace {

Int content_gcd(const std::vector<std::pair<int, Int>>& entries) {
    Int g = 0;
    for (auto& [c, v] : entries) {
        g = gcd(g, v);
        if (g == 1) break;
    }
    return g;
}

ProperMonomial insert_sorted(const ProperMonomial& mono, int flat_index) {
    ProperMonomial out;
    out.reserve(mono.size() + 1);
    auto it = std::upper_bound(mono.begin(), mono.end(), flat_index);
    out.insert(out.end(), mono.begin(), it);
    out.push_back(flat_index);
    out.insert(out.end(), it, mono.end());
    return out;
}

// All nondecreasing index vectors of the given length over `alphabet`,
// in lexicographic order.
std::vector<ProperMonomial> monomials_of_degree(const std::vector<int>& alphabet, int degree) {
    std::vector<ProperMonomial> out;
    if (degree == 0) {
        out.push_back({});
        return out;
    }
    if (alphabet.empty()) return out;
    ProperMonomial cur;
    std::function<void(size_t)> rec = [&](size_t from) {
        if (static_cast<int>(cur.size()) == degree) {
            out.push_back(cur);
            return;
        }
        for (size_t i = from; i < alphabet.size(); ++i) {
            cur.push_back(alphabet[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

} // namespace

std::map<int, Int> to_proper_linear(const Matroid& m, const DivisorCombination& c) {
    std::map<int, Int> out;
    auto add = [&out](int idx, const Int& v) {
        auto [it, fresh] = out.emplace(idx, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) out.erase(it);
        }
    };
    const int top = m.num_flats() - 1;
    for (auto& [idx, v] : c.coeffs) {
        if (idx == top) {
            // D_E = -Σ_{0 ∈ F} X_F over proper flats
            for (int i : m.proper_flats())
                if (contains(m.flat(i), 0)) add(i, -v);
        } else {
            Mask f = m.flat(idx);
            if (f == 0) throw InputError("to_proper_linear: the empty flat is not a class");
            add(idx, v);
        }
    }
    return out;
}

namespace {

FlatPoly poly_mul_linear(const FlatPoly& poly, const std::map<int, Int>& linear) {
    FlatPoly out;
    for (auto& [mono, c] : poly)
        for (auto& [idx, lc] : linear) {
            ProperMonomial next = insert_sorted(mono, idx);
            auto [it, fresh] = out.emplace(std::move(next), c * lc);
            if (!fresh) {
                it->second += c * lc;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

} // namespace

FlatPoly to_poly(const Matroid& m, const DivisorMonomial& mono) {
    const int top = m.num_flats() - 1;
    ProperMonomial base;
    int top_exp = 0;
    for (auto& [idx, d] : mono.exps) {
        if (d < 1) throw InputError("to_poly: exponents must be positive");
        if (idx == top) {
            top_exp = d;
        } else {
            if (m.flat(idx) == 0) throw InputError("to_poly: the empty flat is not a class");
            for (int i = 0; i < d; ++i) base.push_back(idx);
        }
    }
    std::sort(base.begin(), base.end());
    FlatPoly poly;
    poly[base] = 1;
    if (top_exp > 0) {
        DivisorCombination just_top;
        just_top.add(top, 1);
        std::map<int, Int> top_linear = to_proper_linear(m, just_top);
        for (int i = 0; i < top_exp; ++i) poly = poly_mul_linear(poly, top_linear);
    }
    return poly;
}

FlatPoly poly_product(const Matroid& m, const std::vector<DivisorCombination>& factors) {
    FlatPoly poly;
    poly[{}] = 1;
    for (const DivisorCombination& f : factors)
        poly = poly_mul_linear(poly, to_proper_linear(m, f));
    return poly;
}

GradedPiece::GradedPiece(const Matroid& m, int k, size_t max_monomials) : k_(k) {
    if (k < 0) throw InputError("graded piece: negative degree");
    require_loopless(m, "graded piece");
    const std::vector<int>& proper = m.proper_flats();

    if (k > 0 && !proper.empty()) {
        // C(P + k - 1, k) monomials; refuse before enumerating.
        const int P = static_cast<int>(proper.size());
        Int count = binomial(P + k - 1, k);
        if (count > Int(max_monomials))
            throw GuardError("graded piece: degree-" + std::to_string(k) + " slice has " +
                             count.str() + " monomials, over the guard of " +
                             std::to_string(max_monomials));
        // The monomial cap bounds memory, not elimination time. Estimate the
        // ideal row count and refuse when rows x columns is out of reach;
        // the factor scales with the caller's monomial guard.
        if (k >= 2) {
            Int incomparable = 0;
            for (size_t i = 0; i < proper.size(); ++i)
                for (size_t j = i + 1; j < proper.size(); ++j) {
                    Mask a = m.flat(proper[i]), b = m.flat(proper[j]);
                    if (!subset_of(a, b) && !subset_of(b, a)) ++incomparable;
                }
            Int rows = Int(m.ground_size() - 1) * binomial(P + k - 2, k - 1) +
                       incomparable * binomial(P + k - 3, k - 2);
            if (rows * count > Int(max_monomials) * 250)
                throw GuardError("graded piece: degree-" + std::to_string(k) +
                                 " elimination is about " + rows.str() + " rows by " +
                                 count.str() + " columns, over the work guard");
        }
    }
    monomials_ = monomials_of_degree(proper, k);
    for (size_t i = 0; i < monomials_.size(); ++i)
        index_.emplace(monomials_[i], static_cast<int>(i));

    // Degree-k slice of the ideal.
    std::vector<Row> rows;
    const int n = m.ground_size();
    if (k >= 1) {
        // J generators with the base element 0: Σ_{0∈F} X_F - Σ_{f∈F} X_F.
        std::vector<std::vector<std::pair<int, Int>>> gens;
        for (int f = 1; f < n; ++f) {
            std::vector<std::pair<int, Int>> gen;
            for (int i : proper) {
                bool has0 = contains(m.flat(i), 0), hasf = contains(m.flat(i), f);
                if (has0 && !hasf) gen.emplace_back(i, 1);
                if (hasf && !has0) gen.emplace_back(i, -1);
            }
            gens.push_back(std::move(gen));
        }
        for (const ProperMonomial& mono : monomials_of_degree(proper, k - 1))
            for (const auto& gen : gens) {
                Row row;
                for (auto& [idx, v] : gen) {
                    auto it = index_.find(insert_sorted(mono, idx));
                    row.entries.emplace_back(it->second, v);
                }
                std::sort(row.entries.begin(), row.entries.end());
                if (!row.entries.empty()) rows.push_back(std::move(row));
            }
    }
    if (k >= 2) {
        std::vector<std::pair<int, int>> incomparable;
        for (size_t a = 0; a < proper.size(); ++a)
            for (size_t b = a + 1; b < proper.size(); ++b) {
                Mask fa = m.flat(proper[a]), fb = m.flat(proper[b]);
                if (!subset_of(fa, fb) && !subset_of(fb, fa))
                    incomparable.emplace_back(proper[a], proper[b]);
            }
        for (const ProperMonomial& mono : monomials_of_degree(proper, k - 2))
            for (auto& [i, j] : incomparable) {
                Row row;
                row.entries.emplace_back(index_.at(insert_sorted(insert_sorted(mono, i), j)), Int(1));
                rows.push_back(std::move(row));
            }
    }

    echelonize(rows);
    quotient_rank_ = static_cast<int>(monomials_.size()) - static_cast<int>(pivot_rows_.size());
}

void GradedPiece::echelonize(std::vector<Row>& rows) {
    const int cols = static_cast<int>(monomials_.size());
    std::vector<bool> alive(rows.size(), true);

    auto coeff_at = [](const Row& row, int col) -> const Int* {
        auto it = std::lower_bound(row.entries.begin(), row.entries.end(), col,
                                   [](const std::pair<int, Int>& e, int c) { return e.first < c; });
        return (it != row.entries.end() && it->first == col) ? &it->second : nullptr;
    };
    auto normalize = [](Row& row) {
        Int g = content_gcd(row.entries);
        if (g > 1)
            for (auto& [c, v] : row.entries) v /= g;
        if (!row.entries.empty() && row.entries.front().second < 0)
            for (auto& [c, v] : row.entries) v = -v;
    };

    for (int col = 0; col < cols; ++col) {
        // Pivot: smallest magnitude, then lowest row index.
        int pivot = -1;
        Int best_mag = 0;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!alive[r]) continue;
            const Int* v = coeff_at(rows[r], col);
            if (!v) continue;
            Int mag = abs(*v);
            if (pivot < 0 || mag < best_mag) {
                pivot = static_cast<int>(r);
                best_mag = mag;
            }
        }
        if (pivot < 0) {
            free_cols_.push_back(col);
            continue;
        }
        alive[static_cast<size_t>(pivot)] = false;
        Row prow = std::move(rows[static_cast<size_t>(pivot)]);
        normalize(prow);
        if (const Int* pv = coeff_at(prow, col); *pv < 0)
            for (auto& [c, v] : prow.entries) v = -v;
        const Int pc = *coeff_at(prow, col);

        for (size_t r = 0; r < rows.size(); ++r) {
            if (!alive[r]) continue;
            const Int* rvp = coeff_at(rows[r], col);
            if (!rvp) continue;
            const Int rv = *rvp;
            Int g = gcd(pc, rv);
            Int a = pc / g, b = rv / g;
            // row := a*row - b*prow, merged sparsely
            std::vector<std::pair<int, Int>> merged;
            size_t i = 0, j = 0;
            const auto& re = rows[r].entries;
            const auto& pe = prow.entries;
            while (i < re.size() || j < pe.size()) {
                if (j == pe.size() || (i < re.size() && re[i].first < pe[j].first)) {
                    merged.emplace_back(re[i].first, a * re[i].second);
                    ++i;
                } else if (i == re.size() || pe[j].first < re[i].first) {
                    merged.emplace_back(pe[j].first, -b * pe[j].second);
                    ++j;
                } else {
                    Int v = a * re[i].second - b * pe[j].second;
                    if (v != 0) merged.emplace_back(re[i].first, std::move(v));
                    ++i;
                    ++j;
                }
            }
            rows[r].entries = std::move(merged);
            normalize(rows[r]);
            if (rows[r].entries.empty()) alive[r] = false;
        }
        prow.pivot_col = col;
        pivot_rows_.push_back(std::move(prow));
    }
}

int GradedPiece::monomial_index(const ProperMonomial& mono) const {
    auto it = index_.find(mono);
    return it == index_.end() ? -1 : it->second;
}

std::vector<Rat> GradedPiece::reduce(std::vector<Rat> dense) const {
    if (dense.size() != monomials_.size())
        throw InputError("graded reduce: vector length does not match the slice");
    for (const Row& p : pivot_rows_) {
        Rat c = dense[static_cast<size_t>(p.pivot_col)];
        if (c == 0) continue;
        Rat factor = 0;
        for (auto& [col, v] : p.entries)
            if (col == p.pivot_col) {
                factor = c / Rat(v);
                break;
            }
        for (auto& [col, v] : p.entries) dense[static_cast<size_t>(col)] -= factor * Rat(v);
    }
    return dense;
}

std::vector<Rat> GradedPiece::reduce(const FlatPoly& poly) const {
    std::vector<Rat> dense(monomials_.size(), Rat(0));
    for (auto& [mono, c] : poly) {
        if (c == 0) continue;
        int idx = monomial_index(mono);
        if (idx < 0)
            throw InputError("graded reduce: monomial of degree " +
                             std::to_string(mono.size()) + " in the degree-" +
                             std::to_string(k_) + " slice");
        dense[static_cast<size_t>(idx)] += Rat(c);
    }
    return reduce(std::move(dense));
}

int FYBasisElement::degree() const {
    int d = 0;
    for (int e : exps) d += e;
    return d;
}

FYBasisElement FYBasisElement::hat(const Matroid& m) const {
    FYBasisElement out;
    out.flats = flats;
    out.exps.resize(exps.size());
    const size_t l = flats.size();
    int prev_rank = 0;
    for (size_t i = 0; i + 1 < l; ++i) {
        int rk = m.flat_rank(flats[i]);
        out.exps[i] = rk - prev_rank - exps[i];
        prev_rank = rk;
    }
    out.exps[l - 1] = m.top_degree() - prev_rank - exps[l - 1];
    return out;
}

std::vector<int> FYBasisElement::delta(const Matroid& m) const {
    FYBasisElement h = hat(m);
    std::vector<int> out;
    const size_t l = flats.size();
    for (size_t i = l; i-- > 0;) {
        out.push_back(h.exps[i]);
        if (i > 0) out.push_back(m.flat_rank(flats[i - 1]));
    }
    out.resize(2 * static_cast<size_t>(m.rank() + 1), 0);
    return out;
}

DivisorMonomial FYBasisElement::monomial() const {
    DivisorMonomial mono;
    for (size_t i = 0; i < flats.size(); ++i)
        if (exps[i] > 0) mono.exps[flats[i]] = exps[i];
    return mono;
}

Int determinant(std::vector<std::vector<Int>> a) {
    const size_t n = a.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t swap_row = n;
            for (size_t r = k + 1; r < n; ++r)
                if (a[r][k] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = num / prev; // Bareiss: exact division
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

Oracle::Oracle(Matroid m, size_t max_monomials)
    : m_(std::move(m)), max_monomials_(max_monomials) {
    require_loopless(m_, "oracle");
}

const GradedPiece& Oracle::graded(int k) {
    auto it = pieces_.find(k);
    if (it != pieces_.end()) return it->second;
    GradedPiece piece(m_, k, max_monomials_);
    const int r = m_.top_degree();
    if (k == r && piece.quotient_rank() != 1)
        throw std::logic_error("oracle: top graded piece has rank " +
                               std::to_string(piece.quotient_rank()) + ", expected 1");
    if (k > r && piece.quotient_rank() != 0)
        throw std::logic_error("oracle: graded piece above the top degree is nonzero");
    return pieces_.emplace(k, std::move(piece)).first->second;
}

DivisorMonomial Oracle::reference_flag_monomial() const {
    DivisorMonomial mono;
    int cur = 0; // bottom flat
    for (int rk = 1; rk <= m_.top_degree(); ++rk) {
        cur = m_.covers(cur).front(); // canonical order makes this the least mask
        mono.exps[cur] = 1;
    }
    return mono;
}

std::vector<Rat> Oracle::reduced_top(const FlatPoly& poly) {
    return graded(m_.top_degree()).reduce(poly);
}

Int Oracle::degree_of(const FlatPoly& poly) {
    const GradedPiece& top = graded(m_.top_degree());
    if (reference_reduced_.empty())
        reference_reduced_ = top.reduce(to_poly(m_, reference_flag_monomial()));
    std::vector<Rat> v = top.reduce(poly);
    const int fc = top.free_columns().front();
    const Rat& ref = reference_reduced_[static_cast<size_t>(fc)];
    if (ref == 0) throw std::logic_error("oracle: reference flag monomial reduced to zero");
    Rat d = v[static_cast<size_t>(fc)] / ref;
    if (denominator(d) != 1)
        throw std::logic_error("oracle: degree came out non-integral");
    return numerator(d);
}

Int Oracle::degree(const DivisorMonomial& mono) {
    if (mono.degree() != m_.top_degree())
        throw InputError("oracle degree: monomial has degree " + std::to_string(mono.degree()) +
                         ", the top degree is " + std::to_string(m_.top_degree()));
    // Build the slice first: its size guard must fire before any D_E power
    // is expanded, since that expansion alone can be enormous.
    graded(m_.top_degree());
    return degree_of(to_poly(m_, mono));
}

bool Oracle::reduces_to_zero(int k, const FlatPoly& poly) {
    std::vector<Rat> v = graded(k).reduce(poly);
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

std::vector<FYBasisElement> Oracle::fy_basis(int k) const {
    if (k < 0) throw InputError("fy_basis: negative degree");
    const int r = m_.top_degree();
    std::vector<FYBasisElement> out;

    // Chains of proper flats with legal interior exponents, closed by E.
    std::vector<int> chain, exps;
    std::function<void(int, int, int)> rec = [&](int last_index, int last_rank, int remaining) {
        if (remaining <= r - last_rank) {
            FYBasisElement b;
            b.flats = chain;
            b.flats.push_back(m_.num_flats() - 1);
            b.exps = exps;
            b.exps.push_back(remaining);
            out.push_back(std::move(b));
        }
        for (int i : m_.proper_flats()) {
            if (i <= last_index) continue; // canonical order refines rank order
            Mask f = m_.flat(i);
            if (last_index >= 0 && !subset_of(m_.flat(chain.back()), f)) continue;
            if (last_index >= 0 && f == m_.flat(chain.back())) continue;
            int gap = m_.flat_rank(i) - last_rank;
            for (int d = 1; d <= std::min(gap - 1, remaining); ++d) {
                chain.push_back(i);
                exps.push_back(d);
                rec(i, m_.flat_rank(i), remaining - d);
                chain.pop_back();
                exps.pop_back();
            }
        }
    };
    rec(-1, 0, k);

    std::sort(out.begin(), out.end(), [this](const FYBasisElement& a, const FYBasisElement& b) {
        std::vector<int> da = a.delta(m_), db = b.delta(m_);
        if (da != db) return da < db;
        // Ties: compare flags element-wise on canonical bitset order.
        for (size_t i = 0; i < std::min(a.flats.size(), b.flats.size()); ++i)
            if (a.flats[i] != b.flats[i])
                return m_.flat(a.flats[i]) < m_.flat(b.flats[i]);
        if (a.flats.size() != b.flats.size()) return a.flats.size() < b.flats.size();
        return a.exps < b.exps;
    });
    return out;
}

std::vector<Int> Oracle::reduce_to_fy(int k, const FlatPoly& poly) {
    const GradedPiece& piece = graded(k);
    std::vector<FYBasisElement> basis = fy_basis(k);
    if (static_cast<int>(basis.size()) != piece.quotient_rank())
        throw std::logic_error("fy basis size " + std::to_string(basis.size()) +
                               " does not match quotient rank " +
                               std::to_string(piece.quotient_rank()));
    const std::vector<int>& free_cols = piece.free_columns();
    const size_t n = basis.size();

    std::vector<Rat> target_full = piece.reduce(poly);
    std::vector<Rat> target(n);
    for (size_t i = 0; i < n; ++i) target[i] = target_full[static_cast<size_t>(free_cols[i])];

    // Columns: canonical reps of the basis monomials on the free coordinates.
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n, Rat(0)));
    for (size_t j = 0; j < n; ++j) {
        std::vector<Rat> col = piece.reduce(to_poly(m_, basis[j].monomial()));
        for (size_t i = 0; i < n; ++i) a[i][j] = col[static_cast<size_t>(free_cols[i])];
    }

    // Exact rational solve, pivot by smallest magnitude then lowest index.
    std::vector<int> col_of_pivot(n, -1);
    std::vector<bool> row_used(n, false);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = n;
        Rat best = 0;
        for (size_t r = 0; r < n; ++r) {
            if (row_used[r] || a[r][col] == 0) continue;
            Rat mag = abs(a[r][col]);
            if (pivot == n || mag < best) {
                pivot = r;
                best = mag;
            }
        }
        if (pivot == n) throw std::logic_error("fy reduction: singular basis matrix");
        row_used[pivot] = true;
        col_of_pivot[col] = static_cast<int>(pivot);
        for (size_t r = 0; r < n; ++r) {
            if (r == pivot || a[r][col] == 0) continue;
            Rat factor = a[r][col] / a[pivot][col];
            for (size_t c2 = 0; c2 < n; ++c2) a[r][c2] -= factor * a[pivot][c2];
            target[r] -= factor * target[pivot];
        }
    }
    std::vector<Int> coords(n);
    for (size_t col = 0; col < n; ++col) {
        size_t r = static_cast<size_t>(col_of_pivot[col]);
        Rat c = target[r] / a[r][col];
        if (denominator(c) != 1)
            throw Error("fy reduction: non-integral coordinate " + c.str() +
                        " on basis element " + std::to_string(col));
        coords[col] = numerator(c);
    }
    return coords;
}

PairingCertificate Oracle::pairing(int k, double spot_fraction, std::uint64_t seed) {
    const int r = m_.top_degree();
    if (k < 0 || k > r)
        throw InputError("pairing: degree outside [0, r]");
    std::vector<FYBasisElement> basis = fy_basis(k);
    const size_t n = basis.size();

    PairingCertificate cert;
    cert.k = k;
    cert.matrix.assign(n, std::vector<Int>(n, Int(0)));
    DegreeCache cache;
    std::vector<DivisorMonomial> row_monos(n), col_monos(n);
    for (size_t i = 0; i < n; ++i) {
        row_monos[i] = basis[i].monomial();
        col_monos[i] = basis[i].hat(m_).monomial();
        cert.rows.push_back(format_monomial(m_, row_monos[i]));
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            DivisorMonomial prod = row_monos[i];
            for (auto& [idx, d] : col_monos[j].exps) prod.exps[idx] += d;
            cert.matrix[i][j] = deg_monomial(m_, prod, nullptr, &cache);
        }

    // Oracle spot checks on a sample of entries.
    if (spot_fraction > 0 && n > 0) {
        size_t want = static_cast<size_t>(spot_fraction * static_cast<double>(n * n) + 0.999999);
        want = std::min(want, n * n);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<size_t> pick(0, n * n - 1);
        for (size_t t = 0; t < want; ++t) {
            size_t cell = pick(rng);
            size_t i = cell / n, j = cell % n;
            DivisorMonomial prod = row_monos[i];
            for (auto& [idx, d] : col_monos[j].exps) prod.exps[idx] += d;
            Int via_oracle = degree_of(to_poly(m_, prod));
            if (via_oracle != cert.matrix[i][j])
                throw VerificationError(
                    "pairing spot check failed at (" + std::to_string(i) + "," +
                    std::to_string(j) + "): fast path " + cert.matrix[i][j].str() +
                    ", oracle " + via_oracle.str());
            ++cert.spot_checks_run;
        }
    }

    cert.triangular = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (cert.matrix[i][j] != 0) cert.triangular = false;
    for (size_t i = 0; i < n; ++i) cert.diag.push_back(cert.matrix[i][i]);
    cert.det = determinant(cert.matrix);
    return cert;
}

bool Oracle::verify_poincare(int k, PairingCertificate* cert_out) {
    PairingCertificate cert = pairing(k);
    bool ok = abs(cert.det) == 1;
    if (cert_out) *cert_out = std::move(cert);
    return ok;
}

} // namespace chow
