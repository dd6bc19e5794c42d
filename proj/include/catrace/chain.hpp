// Bounded chain complexes of finite-rank free modules, with the graded
// tensor product, Koszul symmetry and chain duals. Graded modules are the
// zero-differential complexes, so one instance serves both.
//
// Strictness: every generator carries a flat word of atoms recording its
// primitive tensor factors, and each degree's basis is sorted by word. The
// sort only sees the concatenated word, never the grouping, so tensor_obj
// is associative and unital on the nose and associators never materialize.

#pragma once

#include "matrix.hpp"
#include "smc.hpp"

#include <array>
#include <map>

namespace catrace {

struct ChainAtom {
    int deg;
    int idx;
    auto operator<=>(const ChainAtom&) const = default;
};

using ChainWord = std::vector<ChainAtom>;

class ChainComplex {
  public:
    ChainComplex() : ring_(RingTag::Z()) {}
    ChainComplex(RingTag ring, std::map<int, std::vector<ChainWord>> gens,
                 std::map<int, ExactMatrix> diff)
        : ring_(std::move(ring)), gens_(std::move(gens)), diff_(std::move(diff))
    {
        validate();
    }

    const RingTag& ring() const { return ring_; }
    const std::map<int, std::vector<ChainWord>>& gens() const { return gens_; }

    int rank(int n) const
    {
        auto it = gens_.find(n);
        return it == gens_.end() ? 0 : int(it->second.size());
    }

    int min_degree() const { return gens_.empty() ? 0 : gens_.begin()->first; }
    int max_degree() const { return gens_.empty() ? 0 : gens_.rbegin()->first; }
    bool is_zero_object() const { return gens_.empty(); }

    // d_n : C_n -> C_{n-1}; a zero matrix of the right shape when not stored.
    ExactMatrix d(int n) const
    {
        auto it = diff_.find(n);
        if (it != diff_.end()) return it->second;
        return ExactMatrix(ring_, rank(n - 1), rank(n));
    }

    bool has_zero_differential() const
    {
        for (const auto& [n, m] : diff_)
            if (!m.is_zero()) return false;
        return true;
    }

    bool operator==(const ChainComplex& o) const
    {
        if (!(ring_ == o.ring_) || gens_ != o.gens_) return false;
        for (const auto& [n, ws] : gens_)
            if (!(d(n) == o.d(n))) return false;
        return true;
    }

  private:
    void validate() const
    {
        for (const auto& [n, m] : diff_) {
            if (m.rows() != rank(n - 1) || m.cols() != rank(n))
                throw std::invalid_argument("differential shape mismatch at degree " +
                                            std::to_string(n));
            if (!(m.ring() == ring_)) throw std::invalid_argument("differential ring mismatch");
            if (rank(n) > 0 && rank(n - 2) > 0 && !mat_mul(d(n - 1), m).is_zero())
                throw std::invalid_argument("d^2 != 0 at degree " + std::to_string(n));
        }
    }

    RingTag ring_;
    std::map<int, std::vector<ChainWord>> gens_;
    std::map<int, ExactMatrix> diff_;
};

// Free complex on fresh rank-many generators per degree.
inline ChainComplex chain_primitive(const RingTag& ring, const std::map<int, int>& ranks,
                                    std::map<int, ExactMatrix> diff)
{
    std::map<int, std::vector<ChainWord>> gens;
    for (auto [n, r] : ranks) {
        if (r < 0) throw std::invalid_argument("negative rank");
        if (r == 0) continue;
        std::vector<ChainWord> ws;
        for (int i = 0; i < r; ++i) ws.push_back(ChainWord{ChainAtom{n, i}});
        gens[n] = std::move(ws);
    }
    // drop differentials that lost both endpoints
    for (auto it = diff.begin(); it != diff.end();) {
        if (it->second.rows() == 0 && it->second.cols() == 0)
            it = diff.erase(it);
        else
            ++it;
    }
    return ChainComplex(ring, std::move(gens), std::move(diff));
}

// A graded module, i.e. a complex with zero differential.
inline ChainComplex graded_object(const RingTag& ring, const std::map<int, int>& ranks)
{
    return chain_primitive(ring, ranks, {});
}

inline ChainComplex chain_unit_object(const RingTag& ring)
{
    std::map<int, std::vector<ChainWord>> gens;
    gens[0] = {ChainWord{}};
    return ChainComplex(ring, std::move(gens), {});
}

namespace detail {

struct PairEntry {
    int p, i, q, j;
};

// Degreewise basis of a tensor product: all (p,i,q,j) with p+q = n, sorted
// by concatenated word.
struct TensorLayout {
    std::map<int, std::vector<PairEntry>> by_degree;
    std::map<std::array<int, 4>, std::pair<int, int>> pos;  // (p,i,q,j) -> (degree, index)

    const std::pair<int, int>& position(int p, int i, int q, int j) const
    {
        return pos.at({p, i, q, j});
    }
    int rank(int n) const
    {
        auto it = by_degree.find(n);
        return it == by_degree.end() ? 0 : int(it->second.size());
    }
};

inline TensorLayout tensor_layout(const ChainComplex& a, const ChainComplex& b)
{
    std::map<int, std::vector<std::pair<ChainWord, PairEntry>>> raw;
    for (const auto& [p, aws] : a.gens())
        for (const auto& [q, bws] : b.gens())
            for (int i = 0; i < int(aws.size()); ++i)
                for (int j = 0; j < int(bws.size()); ++j) {
                    ChainWord w = aws[i];
                    w.insert(w.end(), bws[j].begin(), bws[j].end());
                    raw[p + q].push_back({std::move(w), PairEntry{p, i, q, j}});
                }
    TensorLayout out;
    for (auto& [n, entries] : raw) {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        auto& row = out.by_degree[n];
        for (int k = 0; k < int(entries.size()); ++k) {
            const PairEntry& e = entries[k].second;
            row.push_back(e);
            out.pos[{e.p, e.i, e.q, e.j}] = {n, k};
        }
    }
    return out;
}

inline int koszul_sign(int p, int q) { return ((long long)p * q) % 2 ? -1 : 1; }

}  // namespace detail

class ChainMap;

ChainComplex chain_tensor_obj(const ChainComplex& a, const ChainComplex& b);

class ChainMap {
  public:
    ChainMap() = default;
    // Unvalidated; the category operations keep the chain-map property.
    ChainMap(ChainComplex source, ChainComplex target, std::map<int, ExactMatrix> parts)
        : source_(std::move(source)), target_(std::move(target))
    {
        for (int n = std::min(source_.min_degree(), target_.min_degree());
             n <= std::max(source_.max_degree(), target_.max_degree()); ++n) {
            if (source_.rank(n) == 0 || target_.rank(n) == 0) continue;
            auto it = parts.find(n);
            parts_[n] = it != parts.end() ? it->second
                                          : ExactMatrix(source_.ring(), target_.rank(n), source_.rank(n));
            if (parts_[n].rows() != target_.rank(n) || parts_[n].cols() != source_.rank(n))
                throw std::invalid_argument("chain map component shape mismatch at degree " +
                                            std::to_string(n));
        }
    }

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }

    ExactMatrix part(int n) const
    {
        auto it = parts_.find(n);
        if (it != parts_.end()) return it->second;
        return ExactMatrix(source_.ring(), target_.rank(n), source_.rank(n));
    }
    const std::map<int, ExactMatrix>& parts() const { return parts_; }

    bool commutes_with_differentials() const
    {
        int lo = std::min(source_.min_degree(), target_.min_degree());
        int hi = std::max(source_.max_degree(), target_.max_degree());
        for (int n = lo; n <= hi + 1; ++n) {
            auto lhs = mat_mul(target_.d(n), part(n));
            auto rhs = mat_mul(part(n - 1), source_.d(n));
            if (!(lhs == rhs)) return false;
        }
        return true;
    }

    bool operator==(const ChainMap& o) const
    {
        return source_ == o.source_ && target_ == o.target_ && parts_ == o.parts_;
    }

  private:
    ChainComplex source_, target_;
    std::map<int, ExactMatrix> parts_;
};

// Validating constructor for externally supplied components.
inline ChainMap chain_map(ChainComplex source, ChainComplex target,
                          std::map<int, ExactMatrix> parts)
{
    ChainMap f(std::move(source), std::move(target), std::move(parts));
    if (!f.commutes_with_differentials())
        throw std::invalid_argument("components do not commute with the differentials");
    return f;
}

inline ChainComplex chain_tensor_obj(const ChainComplex& a, const ChainComplex& b)
{
    if (!(a.ring() == b.ring())) throw std::invalid_argument("tensor ring mismatch");
    auto layout = detail::tensor_layout(a, b);
    std::map<int, std::vector<ChainWord>> gens;
    for (const auto& [n, entries] : layout.by_degree) {
        auto& ws = gens[n];
        for (const auto& e : entries) {
            ChainWord w = a.gens().at(e.p)[e.i];
            const ChainWord& v = b.gens().at(e.q)[e.j];
            w.insert(w.end(), v.begin(), v.end());
            ws.push_back(std::move(w));
        }
    }
    // Leibniz rule: d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy
    std::map<int, ExactMatrix> diff;
    for (const auto& [n, entries] : layout.by_degree) {
        int rows = layout.rank(n - 1);
        if (rows == 0) continue;
        ExactMatrix m(a.ring(), rows, int(entries.size()));
        for (int col = 0; col < int(entries.size()); ++col) {
            const auto& e = entries[col];
            auto da = a.d(e.p);
            for (int k = 0; k < da.rows(); ++k) {
                if (da.at(k, e.i) == 0) continue;
                int row = layout.position(e.p - 1, k, e.q, e.j).second;
                m.at(row, col) = ring_add(a.ring(), m.at(row, col), da.at(k, e.i));
            }
            auto db = b.d(e.q);
            Rat sign = detail::koszul_sign(e.p, 1);
            for (int l = 0; l < db.rows(); ++l) {
                if (db.at(l, e.j) == 0) continue;
                int row = layout.position(e.p, e.i, e.q - 1, l).second;
                m.at(row, col) =
                    ring_add(a.ring(), m.at(row, col), ring_mul(a.ring(), sign, db.at(l, e.j)));
            }
        }
        diff[n] = std::move(m);
    }
    return ChainComplex(a.ring(), std::move(gens), std::move(diff));
}

class ChainCategory {
  public:
    using Obj = ChainComplex;
    using Mor = ChainMap;

    explicit ChainCategory(RingTag ring) : ring_(std::move(ring)) {}

    const RingTag& ring() const { return ring_; }

    Mor identity(const Obj& a) const
    {
        std::map<int, ExactMatrix> parts;
        for (const auto& [n, ws] : a.gens())
            parts[n] = ExactMatrix::identity(ring_, int(ws.size()));
        return Mor(a, a, std::move(parts));
    }

    Mor compose(const Mor& f, const Mor& g) const  // f after g
    {
        if (!(f.source() == g.target()))
            throw std::invalid_argument("chain compose: objects do not match");
        std::map<int, ExactMatrix> parts;
        for (const auto& [n, ws] : g.source().gens())
            if (f.target().rank(n) > 0) parts[n] = mat_mul(f.part(n), g.part(n));
        return Mor(g.source(), f.target(), std::move(parts));
    }

    Obj tensor_obj(const Obj& a, const Obj& b) const { return chain_tensor_obj(a, b); }

    Mor tensor_mor(const Mor& f, const Mor& g) const
    {
        auto src = tensor_obj(f.source(), g.source());
        auto dst = tensor_obj(f.target(), g.target());
        auto src_layout = detail::tensor_layout(f.source(), g.source());
        auto dst_layout = detail::tensor_layout(f.target(), g.target());
        std::map<int, ExactMatrix> parts;
        for (const auto& [n, entries] : src_layout.by_degree) {
            if (dst_layout.rank(n) == 0) continue;
            ExactMatrix m(ring_, dst_layout.rank(n), int(entries.size()));
            for (int col = 0; col < int(entries.size()); ++col) {
                const auto& e = entries[col];
                auto fp = f.part(e.p);
                auto gq = g.part(e.q);
                for (int k = 0; k < fp.rows(); ++k) {
                    if (fp.at(k, e.i) == 0) continue;
                    for (int l = 0; l < gq.rows(); ++l) {
                        if (gq.at(l, e.j) == 0) continue;
                        int row = dst_layout.position(e.p, k, e.q, l).second;
                        m.at(row, col) = ring_add(ring_, m.at(row, col),
                                                  ring_mul(ring_, fp.at(k, e.i), gq.at(l, e.j)));
                    }
                }
            }
            parts[n] = std::move(m);
        }
        return Mor(std::move(src), std::move(dst), std::move(parts));
    }

    Obj unit() const { return chain_unit_object(ring_); }

    // Koszul symmetry: x (x) y |-> (-1)^{|x||y|} y (x) x.
    Mor symmetry(const Obj& a, const Obj& b) const
    {
        auto ab = detail::tensor_layout(a, b);
        auto ba = detail::tensor_layout(b, a);
        std::map<int, ExactMatrix> parts;
        for (const auto& [n, entries] : ab.by_degree) {
            ExactMatrix m(ring_, ba.rank(n), int(entries.size()));
            for (int col = 0; col < int(entries.size()); ++col) {
                const auto& e = entries[col];
                int row = ba.position(e.q, e.j, e.p, e.i).second;
                m.at(row, col) = ring_normalize(ring_, Rat(detail::koszul_sign(e.p, e.q)));
            }
            parts[n] = std::move(m);
        }
        return Mor(tensor_obj(a, b), tensor_obj(b, a), std::move(parts));
    }

    bool equal(const Mor& f, const Mor& g) const { return f == g; }

    Obj dom(const Mor& f) const { return f.source(); }
    Obj cod(const Mor& f) const { return f.target(); }

  private:
    RingTag ring_;
};

// The dual complex: fresh generators in negated degrees, differential a
// signed transpose; the sign makes coevaluation and evaluation chain maps.
inline ChainComplex chain_dual_object(const ChainComplex& m)
{
    std::map<int, int> ranks;
    std::map<int, ExactMatrix> diff;
    for (const auto& [p, ws] : m.gens()) ranks[-p] = int(ws.size());
    for (const auto& [n, r] : ranks) {
        if (ranks.count(n - 1) == 0) continue;
        Rat sign = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}
        diff[n] = mat_scale(ring_normalize(m.ring(), sign), m.d(1 - n).transpose());
    }
    return chain_primitive(m.ring(), ranks, std::move(diff));
}

inline DualPair<ChainCategory> chain_dual_pair(const ChainCategory& c, const ChainComplex& m)
{
    ChainComplex dual = chain_dual_object(m);
    ChainComplex md = c.tensor_obj(m, dual);
    ChainComplex dm = c.tensor_obj(dual, m);

    auto md_layout = detail::tensor_layout(m, dual);
    ExactMatrix coev0(m.ring(), md_layout.rank(0), 1);
    for (const auto& [p, ws] : m.gens())
        for (int i = 0; i < int(ws.size()); ++i)
            coev0.at(md_layout.position(p, i, -p, i).second, 0) = 1;
    ChainMap coev(c.unit(), md, {{0, std::move(coev0)}});

    auto dm_layout = detail::tensor_layout(dual, m);
    ExactMatrix ev0(m.ring(), 1, dm_layout.rank(0));
    for (const auto& [p, ws] : m.gens())
        for (int i = 0; i < int(ws.size()); ++i)
            ev0.at(0, dm_layout.position(-p, i, p, i).second) = 1;
    ChainMap ev(dm, c.unit(), {{0, std::move(ev0)}});

    DualPair<ChainCategory> dp{m, std::move(dual), std::move(coev), std::move(ev)};
    if (!verify_dual_pair(c, dp))
        throw std::logic_error("chain dual pair failed the triangle identities");
    return dp;
}

// End(I) of the chain category as a ring scalar.
inline Rat chain_scalar(const ChainMap& end_of_unit)
{
    if (end_of_unit.source().rank(0) != 1 || end_of_unit.target().rank(0) != 1)
        throw std::invalid_argument("not an endomorphism of the chain unit");
    return end_of_unit.part(0).at(0, 0);
}

// Alternating sum of degreewise traces; the independent route to tr(f).
inline Rat alternating_trace(const ChainMap& f)
{
    if (!(f.source() == f.target()))
        throw std::invalid_argument("alternating trace needs an endomorphism");
    Rat total = 0;
    const RingTag& r = f.source().ring();
    for (const auto& [n, ws] : f.source().gens()) {
        Rat t = mat_trace(f.part(n));
        total = (n % 2 == 0) ? ring_add(r, total, t) : ring_sub(r, total, t);
    }
    return total;
}

}  // namespace catrace
