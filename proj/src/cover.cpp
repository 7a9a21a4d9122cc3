#include "k1alex/cover.hpp"

#include <sstream>

namespace k1alex {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const mpz_class& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const mpz_class& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimensions do not match");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

mpz_class determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::vector<mpz_class> SNFResult::diagonal() const {
    std::vector<mpz_class> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

SNFResult smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SNFResult r{IntMatrix::identity(m), IntMatrix::identity(m), a, IntMatrix::identity(n)};
    auto& A = r.D;
    // Row operations are mirrored on U (left) and inversely on U_inv (right).
    auto row_add = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
        A.add_row(dst, src, f);
        r.U.add_row(dst, src, f);
        r.U_inv.add_col(src, dst, -f);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
        A.add_col(dst, src, f);
        r.V.add_col(dst, src, f);
    };
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (A(i, j) != 0 && (pi == m || abs(A(i, j)) < abs(A(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) return r;
            A.swap_rows(t, pi);
            r.U.swap_rows(t, pi);
            r.U_inv.swap_cols(t, pi);
            A.swap_cols(t, pj);
            r.V.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (A(i, t) == 0) continue;
                mpz_class q = A(i, t) / A(t, t);
                row_add(i, t, -q);
                if (A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                mpz_class q = A(t, j) / A(t, t);
                col_add(j, t, -q);
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad != m) {
                row_add(t, bad, 1);
                continue;
            }
            if (A(t, t) < 0) {
                A.negate_row(t);
                r.U.negate_row(t);
                for (std::size_t i = 0; i < m; ++i) r.U_inv(i, t) = -r.U_inv(i, t);
            }
            break;
        }
    }
    return r;
}

IntMatrix alexander_presentation(const MeridianPresentation& p, long N) {
    check_presentation(p);
    if (N < 1) throw ValidationError("cover degree must be positive");
    const auto r = static_cast<std::size_t>(p.rank());
    const auto n = static_cast<std::size_t>(N);
    IntMatrix R(r * n, r * n);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) {
            const auto g = Generator::x(static_cast<int>(i + 1));
            const long y = p.y[j].exponent_sum(g), z = p.z[j].exponent_sum(g);
            for (std::size_t k = 0; k < n; ++k) {
                R(i * n + (k + 1) % n, j * n + k) += y;
                R(i * n + k, j * n + k) -= z;
            }
        }
    return R;
}

CoverData cover_data(const MeridianPresentation& p, long N) {
    const IntMatrix R = alexander_presentation(p, N);
    const SNFResult snf = smith_normal_form(R);
    const auto diag = snf.diagonal();
    const std::size_t size = R.rows();
    const auto n = static_cast<std::size_t>(N);

    CoverData out;
    out.invariant_factors = diag;
    std::vector<std::size_t> torsion;
    std::vector<long> divisors;
    for (std::size_t s = 0; s < size; ++s) {
        if (diag[s] == 0) {
            ++out.free_rank;
        } else if (diag[s] > 1) {
            if (!diag[s].fits_slong_p()) throw ValidationError("torsion too large");
            torsion.push_back(s);
            divisors.push_back(diag[s].get_si());
        }
    }
    auto group = make_group(divisors);

    IntMatrix shift(size, size);
    for (std::size_t i = 0; i < static_cast<std::size_t>(p.rank()); ++i)
        for (std::size_t l = 0; l < n; ++l) shift(i * n + (l + 1) % n, i * n + l) = 1;
    const IntMatrix T = snf.U * shift * snf.U_inv;

    auto reduce = [](const mpz_class& v, long d) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(d));
        return r.get_si();
    };

    // t of a free generator must have vanishing torsion coordinates
    for (std::size_t a = 0; a < torsion.size(); ++a)
        for (std::size_t c = 0; c < size; ++c)
            if (diag[c] == 0 && reduce(T(torsion[a], c), divisors[a]) != 0)
                throw ValidationError("deck action does not preserve the chosen torsion complement");

    std::vector<std::vector<long>> kappa(torsion.size(), std::vector<long>(torsion.size()));
    for (std::size_t a = 0; a < torsion.size(); ++a)
        for (std::size_t b = 0; b < torsion.size(); ++b) kappa[a][b] = reduce(T(torsion[a], torsion[b]), divisors[a]);

    MetaRep rep;
    rep.kappa = std::make_shared<const GroupAut>(group, kappa);
    rep.N = N;
    for (std::size_t i = 0; i < static_cast<std::size_t>(p.rank()); ++i) {
        std::vector<long> e(torsion.size());
        for (std::size_t a = 0; a < torsion.size(); ++a) e[a] = reduce(snf.U(torsion[a], i * n), divisors[a]);
        rep.images.push_back(group->element(e));
    }
    if (N % rep.kappa->order() != 0) throw ValidationError("deck automorphism order does not divide N");
    if (auto v = validate_rep(p, rep)) throw ValidationError("cover representation fails relator " + v->detail);
    out.rep = std::move(rep);
    return out;
}

MetaRep metabelian_rep(const MeridianPresentation& p, long N) { return cover_data(p, N).rep; }

}  // namespace k1alex
