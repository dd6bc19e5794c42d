// Seeded generators for chain complexes and chain maps.
//
// Complexes are direct sums of elementary pieces 0 -> R -> R -> 0 (identity
// differential) and free summands, conjugated degreewise by random invertible
// matrices with entries in {-2..2}. d^2 = 0 holds by construction and the
// homology is that of the free summands.
//
// Chain maps between arbitrary complexes are sampled exactly from the
// solution space of d f = f d.

#pragma once

#include "chain.hpp"

#include <random>
#include <tuple>

namespace catrace {

namespace detail {

inline ExactMatrix random_entries(const RingTag& ring, int rows, int cols, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> entry(-2, 2);
    ExactMatrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, Rat(entry(rng)));
    return m;
}

// Invertible over fields, unimodular over Z (product of elementary ops).
inline ExactMatrix random_change_of_basis(const RingTag& ring, int n, std::mt19937_64& rng)
{
    if (n == 0) return ExactMatrix(ring, 0, 0);
    if (ring.kind == RingTag::Kind::integers) {
        ExactMatrix m = ExactMatrix::identity(ring, n);
        std::uniform_int_distribution<int> pick(0, n - 1), coeff(-2, 2), kind(0, 3);
        for (int step = 0; step < 2 * n + 2; ++step) {
            int i = pick(rng), j = pick(rng);
            switch (kind(rng)) {
                case 0:
                    if (i != j) {
                        Rat q(coeff(rng));
                        for (int k = 0; k < n; ++k)
                            m.at(i, k) = ring_add(ring, m.at(i, k), ring_mul(ring, q, m.at(j, k)));
                    }
                    break;
                case 1:
                    for (int k = 0; k < n; ++k) std::swap(m.at(i, k), m.at(j, k));
                    break;
                default:
                    for (int k = 0; k < n; ++k) m.at(i, k) = ring_neg(ring, m.at(i, k));
            }
        }
        return m;
    }
    for (;;) {
        auto m = random_entries(ring, n, n, rng);
        RingTag field = ring;
        if (inverse(m.map([](const Rat& v) { return v; }, field))) return m;
    }
}

inline ExactMatrix exact_inverse(const ExactMatrix& m)
{
    if (m.ring().kind == RingTag::Kind::integers) {
        auto inv_q = inverse(m.map([](const Rat& v) { return v; }, RingTag::Q()));
        if (!inv_q) throw std::invalid_argument("matrix not invertible");
        return inv_q->map([](const Rat& v) { return v; }, RingTag::Z());
    }
    auto inv = inverse(m);
    if (!inv) throw std::invalid_argument("matrix not invertible");
    return *inv;
}

}  // namespace detail

struct ChainGenOptions {
    int min_degree = -1;
    int max_degree = 2;
    int max_elementary = 2;
    int max_free = 1;
    bool conjugate = true;
};

inline ChainComplex random_complex(const RingTag& ring, std::mt19937_64& rng,
                                   const ChainGenOptions& opt = {})
{
    std::uniform_int_distribution<int> deg(opt.min_degree, opt.max_degree);
    std::uniform_int_distribution<int> n_elem(0, opt.max_elementary);
    std::uniform_int_distribution<int> n_free(0, opt.max_free);

    std::map<int, int> ranks;
    std::vector<int> elem_tops;
    int elems = n_elem(rng);
    for (int e = 0; e < elems; ++e) {
        int a = deg(rng);
        if (a == opt.min_degree) a++;  // keep the bottom inside the window
        elem_tops.push_back(a);
        ranks[a]++;
        ranks[a - 1]++;
    }
    int frees = n_free(rng) + (elems == 0 ? 1 : 0);
    for (int e = 0; e < frees; ++e) ranks[deg(rng)]++;

    // Block differentials: each elementary piece contributes one unit entry.
    std::map<int, int> used;  // first free slot per degree
    std::map<int, ExactMatrix> diff;
    std::map<int, std::map<int, int>> elem_slot;  // degree -> (piece -> slot)
    for (int e = 0; e < int(elem_tops.size()); ++e) {
        int a = elem_tops[e];
        int top_slot = used[a]++;
        int bot_slot = used[a - 1]++;
        if (diff.find(a) == diff.end())
            diff[a] = ExactMatrix(ring, ranks.count(a - 1) ? ranks[a - 1] : 0, ranks[a]);
        diff[a].at(bot_slot, top_slot) = 1;
    }
    auto m = chain_primitive(ring, ranks, std::move(diff));
    if (!opt.conjugate) return m;

    // Conjugate: d'_n = P_{n-1} d_n P_n^{-1}
    std::map<int, ExactMatrix> basis_change;
    for (const auto& [n, r] : ranks)
        basis_change[n] = detail::random_change_of_basis(ring, r, rng);
    std::map<int, ExactMatrix> new_diff;
    for (const auto& [n, r] : ranks) {
        if (ranks.count(n - 1) == 0) continue;
        new_diff[n] =
            mat_mul(basis_change[n - 1], mat_mul(m.d(n), detail::exact_inverse(basis_change[n])));
    }
    return chain_primitive(ring, ranks, std::move(new_diff));
}

// The space of chain maps a -> b, solved exactly. Over Z the basis spans the
// full lattice of chain maps (Smith kernel); over a field it is a vector
// space basis.
class ChainHomSpace {
  public:
    ChainHomSpace(ChainComplex source, ChainComplex target)
        : source_(std::move(source)), target_(std::move(target))
    {
        const RingTag& ring = source_.ring();
        for (const auto& [n, ws] : source_.gens()) {
            if (target_.rank(n) == 0) continue;
            for (int r = 0; r < target_.rank(n); ++r)
                for (int c = 0; c < source_.rank(n); ++c) vars_.push_back({n, r, c});
        }
        // one equation block per degree n: d^B_n f_n - f_{n-1} d^A_n = 0
        std::vector<std::array<int, 2>> eqs;  // (degree, flat index)
        int lo = std::min(source_.min_degree(), target_.min_degree());
        int hi = std::max(source_.max_degree(), target_.max_degree()) + 1;
        int n_eq = 0;
        for (int n = lo; n <= hi; ++n)
            n_eq += target_.rank(n - 1) * source_.rank(n);
        ExactMatrix sys(ring, n_eq, int(vars_.size()));
        int row0 = 0;
        for (int n = lo; n <= hi; ++n) {
            int rows = target_.rank(n - 1), cols = source_.rank(n);
            if (rows == 0 || cols == 0) continue;
            auto db = target_.d(n);
            auto da = source_.d(n);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) {
                    int row = row0 + r * cols + c;
                    for (int v = 0; v < int(vars_.size()); ++v) {
                        auto [vn, vr, vc] = vars_[v];
                        Rat coeff = 0;
                        if (vn == n && vc == c) coeff = ring_add(ring, coeff, db.at(r, vr));
                        if (vn == n - 1 && vr == r)
                            coeff = ring_sub(ring, coeff, da.at(vc, c));
                        if (coeff != 0) sys.at(row, v) = coeff;
                    }
                }
            row0 += rows * cols;
        }
        basis_ = ring.kind == RingTag::Kind::integers ? kernel_basis_integer(sys)
                                                      : kernel_basis(sys);
    }

    int dim() const { return basis_.cols(); }

    ChainMap materialize(const std::vector<Rat>& coords) const
    {
        if (int(coords.size()) != basis_.cols())
            throw std::invalid_argument("coordinate count mismatch");
        const RingTag& ring = source_.ring();
        std::map<int, ExactMatrix> parts;
        for (int v = 0; v < int(vars_.size()); ++v) {
            auto [n, r, c] = vars_[v];
            if (parts.find(n) == parts.end())
                parts[n] = ExactMatrix(ring, target_.rank(n), source_.rank(n));
            Rat val = 0;
            for (int j = 0; j < basis_.cols(); ++j)
                val = ring_add(ring, val, ring_mul(ring, basis_.at(v, j), coords[j]));
            parts[n].at(r, c) = val;
        }
        return ChainMap(source_, target_, std::move(parts));
    }

    ChainMap sample(std::mt19937_64& rng) const
    {
        std::uniform_int_distribution<int> coeff(-2, 2);
        std::vector<Rat> coords(basis_.cols());
        for (auto& x : coords) x = ring_normalize(source_.ring(), Rat(coeff(rng)));
        return materialize(coords);
    }

  private:
    ChainComplex source_, target_;
    std::vector<std::tuple<int, int, int>> vars_;
    ExactMatrix basis_;
};

inline ChainMap random_chain_map(const ChainComplex& a, const ChainComplex& b,
                                 std::mt19937_64& rng)
{
    return ChainHomSpace(a, b).sample(rng);
}

}  // namespace catrace
