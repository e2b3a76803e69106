#include "trqf/zlattice.hpp"

#include "trqf/error.hpp"

#include <algorithm>
#include <numeric>

namespace trqf {

namespace {

std::size_t leading(const std::vector<Integer>& v) {
    for (std::size_t c = 0; c < v.size(); ++c)
        if (v[c] != 0) return c;
    return v.size();
}

void reduce_row(std::vector<Integer>& v, const std::vector<Integer>& r, const Integer& q, std::size_t from) {
    if (q == 0) return;
    for (std::size_t c = from; c < v.size(); ++c) v[c] -= q * r[c];
}

}  // namespace

ZLattice ZLattice::span(const std::vector<std::vector<Integer>>& generators, std::size_t dim) {
    ZLattice L(dim);
    for (const auto& g : generators) L.add(g);
    return L;
}

void ZLattice::add(std::vector<Integer> v) {
    if (v.size() != dim_) throw Error(ErrorCode::InvalidArgument, "vector has wrong dimension");
    while (true) {
        std::size_t c = leading(v);
        if (c == dim_) return;
        auto it = std::find(pivot_.begin(), pivot_.end(), c);
        if (it == pivot_.end()) {
            if (v[c] < 0)
                for (auto& x : v) x = -x;
            auto pos = std::upper_bound(pivot_.begin(), pivot_.end(), c) - pivot_.begin();
            pivot_.insert(pivot_.begin() + pos, c);
            rows_.insert(rows_.begin() + pos, std::move(v));
            // Keep entries above the new pivot small.
            for (std::size_t k = 0; k < static_cast<std::size_t>(pos); ++k)
                reduce_row(rows_[k], rows_[pos], floor(Rational(rows_[k][c], rows_[pos][c])), c);
            return;
        }
        auto& r = rows_[it - pivot_.begin()];
        if (divides(r[c], v[c])) {
            Integer q = v[c] / r[c];
            reduce_row(v, r, q, c);
            continue;
        }
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r[c].get_mpz_t(), v[c].get_mpz_t());
        Integer a = r[c] / g, b = v[c] / g;
        std::vector<Integer> nr(dim_), nv(dim_);
        for (std::size_t k = c; k < dim_; ++k) {
            nr[k] = s * r[k] + t * v[k];
            nv[k] = a * v[k] - b * r[k];
        }
        if (nr[c] < 0)
            for (auto& x : nr) x = -x;
        r = std::move(nr);
        v = std::move(nv);
    }
}

bool ZLattice::contains(std::vector<Integer> v) const {
    if (v.size() != dim_) throw Error(ErrorCode::InvalidArgument, "vector has wrong dimension");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        std::size_t c = pivot_[k];
        for (std::size_t j = 0; j < c; ++j)
            if (v[j] != 0) return false;
        if (v[c] == 0) continue;
        if (!divides(rows_[k][c], v[c])) return false;
        reduce_row(v, rows_[k], v[c] / rows_[k][c], c);
    }
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer ZLattice::index() const {
    if (rows_.size() != dim_) return 0;
    Integer p = 1;
    for (std::size_t k = 0; k < rows_.size(); ++k) p *= rows_[k][pivot_[k]];
    return abs(p);
}

std::vector<std::vector<Integer>> ZLattice::basis() const { return rows_; }

}  // namespace trqf
