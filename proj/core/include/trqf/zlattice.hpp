#pragma once

#include "trqf/bigint.hpp"

#include <vector>

namespace trqf {

// Sublattice of Z^dim kept as an echelon basis (one row per pivot column).
class ZLattice {
public:
    explicit ZLattice(std::size_t dim = 0) : dim_(dim) {}

    static ZLattice span(const std::vector<std::vector<Integer>>& generators, std::size_t dim);

    void add(std::vector<Integer> v);
    bool contains(std::vector<Integer> v) const;

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    // Index in Z^dim; zero when the lattice is not of full rank.
    Integer index() const;
    // Rows in order of increasing pivot column.
    std::vector<std::vector<Integer>> basis() const;

private:
    std::size_t dim_;
    std::vector<std::vector<Integer>> rows_;
    std::vector<std::size_t> pivot_;
};

}  // namespace trqf
