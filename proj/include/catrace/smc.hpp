// The generic symmetric-monoidal kernel: the category contract as a C++20
// concept, dual pairs with mechanical verification, traces, twisted traces,
// mates, diagonal traces and transfers.
//
// Instances are strict: tensor_obj is associative and unital on the chosen
// representations, so composite objects never carry associators. Symmetries
// of composite objects are generated from adjacent block transpositions.

#pragma once

#include <concepts>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace catrace {

template <typename C>
concept SymmetricMonoidalCategory =
    std::equality_comparable<typename C::Obj> && requires(
        const C& c, const typename C::Obj& a, const typename C::Obj& b,
        const typename C::Mor& f, const typename C::Mor& g) {
        { c.identity(a) } -> std::same_as<typename C::Mor>;
        { c.compose(f, g) } -> std::same_as<typename C::Mor>;  // f after g
        { c.tensor_obj(a, b) } -> std::same_as<typename C::Obj>;
        { c.tensor_mor(f, g) } -> std::same_as<typename C::Mor>;
        { c.unit() } -> std::same_as<typename C::Obj>;
        { c.symmetry(a, b) } -> std::same_as<typename C::Mor>;  // a (x) b -> b (x) a
        { c.equal(f, g) } -> std::same_as<bool>;
        { c.dom(f) } -> std::same_as<typename C::Obj>;
        { c.cod(f) } -> std::same_as<typename C::Obj>;
    };

// A dualizable object M with chosen dual and structure maps
//   coev : I -> M (x) dual,   ev : dual (x) M -> I.
template <typename C>
struct DualPair {
    typename C::Obj m;
    typename C::Obj dual;
    typename C::Mor coev;
    typename C::Mor ev;
};

template <SymmetricMonoidalCategory C>
typename C::Obj tensor_all(const C& c, const std::vector<typename C::Obj>& objs)
{
    typename C::Obj acc = c.unit();
    for (const auto& o : objs) acc = c.tensor_obj(acc, o);
    return acc;
}

template <SymmetricMonoidalCategory C, typename... Rest>
typename C::Mor compose_all(const C& c, const typename C::Mor& last, const Rest&... rest)
{
    if constexpr (sizeof...(rest) == 0)
        return last;
    else
        return c.compose(last, compose_all(c, rest...));
}

// Morphism (x)objs -> (x)objs[perm[0]], objs[perm[1]], ... built from adjacent
// block transpositions, bubbling each target block into place left to right.
template <SymmetricMonoidalCategory C>
typename C::Mor block_permutation(const C& c, const std::vector<typename C::Obj>& objs,
                                  const std::vector<int>& perm)
{
    const int n = int(objs.size());
    if (int(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
    std::vector<int> cur(n);
    std::iota(cur.begin(), cur.end(), 0);
    typename C::Mor acc = c.identity(tensor_all(c, objs));
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && cur[p] != perm[k]) ++p;
        if (p == n) throw std::invalid_argument("not a permutation");
        for (; p > k; --p) {
            // swap blocks at positions p-1, p
            typename C::Mor step = c.identity(c.unit());
            for (int i = 0; i < p - 1; ++i)
                step = c.tensor_mor(step, c.identity(objs[cur[i]]));
            step = c.tensor_mor(step, c.symmetry(objs[cur[p - 1]], objs[cur[p]]));
            for (int i = p + 1; i < n; ++i)
                step = c.tensor_mor(step, c.identity(objs[cur[i]]));
            acc = c.compose(step, acc);
            std::swap(cur[p - 1], cur[p]);
        }
    }
    return acc;
}

// Both triangle identities under the instance's morphism equality. Structure
// maps are type-checked first; a shape mismatch throws.
template <SymmetricMonoidalCategory C>
bool verify_dual_pair(const C& c, const DualPair<C>& dp)
{
    if (!(c.dom(dp.coev) == c.unit() && c.cod(dp.coev) == c.tensor_obj(dp.m, dp.dual)))
        throw std::invalid_argument("coevaluation is not typed I -> M (x) dual");
    if (!(c.dom(dp.ev) == c.tensor_obj(dp.dual, dp.m) && c.cod(dp.ev) == c.unit()))
        throw std::invalid_argument("evaluation is not typed dual (x) M -> I");
    auto id_m = c.identity(dp.m);
    auto id_d = c.identity(dp.dual);
    auto left = c.compose(c.tensor_mor(id_m, dp.ev), c.tensor_mor(dp.coev, id_m));
    auto right = c.compose(c.tensor_mor(dp.ev, id_d), c.tensor_mor(id_d, dp.coev));
    return c.equal(left, id_m) && c.equal(right, id_d);
}

// tr(f) = ev . s . (f (x) id) . coev for an endomorphism f of dp.m.
template <SymmetricMonoidalCategory C>
typename C::Mor trace(const C& c, const DualPair<C>& dp, const typename C::Mor& f)
{
    if (!(c.dom(f) == dp.m && c.cod(f) == dp.m))
        throw std::invalid_argument("trace needs an endomorphism of the dualizable object");
    return compose_all(c, dp.ev, c.symmetry(dp.m, dp.dual), c.tensor_mor(f, c.identity(dp.dual)),
                       dp.coev);
}

template <SymmetricMonoidalCategory C>
typename C::Mor euler_characteristic(const C& c, const DualPair<C>& dp)
{
    return trace(c, dp, c.identity(dp.m));
}

// Twisted trace of f : Q (x) M -> M (x) P, a morphism Q -> P. The
// factorization (Q, P) is passed explicitly; it is not recoverable from the
// composite objects.
template <SymmetricMonoidalCategory C>
typename C::Mor twisted_trace(const C& c, const DualPair<C>& dp, const typename C::Mor& f,
                              const typename C::Obj& q, const typename C::Obj& p)
{
    if (!(c.dom(f) == c.tensor_obj(q, dp.m)))
        throw std::invalid_argument("twisted trace: domain does not factor as Q (x) M");
    if (!(c.cod(f) == c.tensor_obj(dp.m, p)))
        throw std::invalid_argument("twisted trace: codomain does not factor as M (x) P");
    auto s1 = c.tensor_mor(c.identity(q), dp.coev);          // Q -> Q (x) M (x) dual
    auto s2 = c.tensor_mor(f, c.identity(dp.dual));          // -> M (x) P (x) dual
    auto s3 = block_permutation(c, {dp.m, p, dp.dual}, {2, 0, 1});  // -> dual (x) M (x) P
    auto s4 = c.tensor_mor(dp.ev, c.identity(p));            // -> P
    return compose_all(c, s4, s3, s2, s1);
}

// Mate of f : Q (x) M -> N (x) P, a morphism dual(N) (x) Q -> P (x) dual(M).
template <SymmetricMonoidalCategory C>
typename C::Mor mate(const C& c, const DualPair<C>& dp_m, const DualPair<C>& dp_n,
                     const typename C::Mor& f, const typename C::Obj& q, const typename C::Obj& p)
{
    if (!(c.dom(f) == c.tensor_obj(q, dp_m.m) && c.cod(f) == c.tensor_obj(dp_n.m, p)))
        throw std::invalid_argument("mate: morphism is not typed Q (x) M -> N (x) P");
    auto id_nd = c.identity(dp_n.dual);
    auto s1 = c.tensor_mor(c.tensor_mor(id_nd, c.identity(q)), dp_m.coev);
    auto s2 = c.tensor_mor(c.tensor_mor(id_nd, f), c.identity(dp_m.dual));
    auto s3 = c.tensor_mor(c.tensor_mor(dp_n.ev, c.identity(p)), c.identity(dp_m.dual));
    return compose_all(c, s3, s2, s1);
}

// Trace of f with respect to a diagonal D : M -> M (x) P; a morphism I -> P.
template <SymmetricMonoidalCategory C>
typename C::Mor trace_wrt_diagonal(const C& c, const DualPair<C>& dp,
                                   const typename C::Mor& diagonal, const typename C::Obj& p,
                                   const typename C::Mor& f)
{
    if (!(c.dom(f) == dp.m && c.cod(f) == dp.m))
        throw std::invalid_argument("diagonal trace needs an endomorphism of M");
    if (!(c.dom(diagonal) == dp.m && c.cod(diagonal) == c.tensor_obj(dp.m, p)))
        throw std::invalid_argument("diagonal is not typed M -> M (x) P");
    return twisted_trace(c, dp, c.compose(diagonal, f), c.unit(), p);
}

template <SymmetricMonoidalCategory C>
typename C::Mor transfer(const C& c, const DualPair<C>& dp, const typename C::Mor& diagonal,
                         const typename C::Obj& p)
{
    return trace_wrt_diagonal(c, dp, diagonal, p, c.identity(dp.m));
}

// The dual object is itself dualizable, with M as its dual.
template <SymmetricMonoidalCategory C>
DualPair<C> dual_pair_flip(const C& c, const DualPair<C>& dp)
{
    return DualPair<C>{dp.dual, dp.m, c.compose(c.symmetry(dp.m, dp.dual), dp.coev),
                       c.compose(dp.ev, c.symmetry(dp.m, dp.dual))};
}

// M (x) N is dualizable with dual dual(M) (x) dual(N).
template <SymmetricMonoidalCategory C>
DualPair<C> tensor_dual_pair(const C& c, const DualPair<C>& a, const DualPair<C>& b)
{
    auto shuffle_in = c.tensor_mor(c.tensor_mor(c.identity(a.m), c.symmetry(a.dual, b.m)),
                                   c.identity(b.dual));
    auto coev = c.compose(shuffle_in, c.tensor_mor(a.coev, b.coev));
    auto shuffle_out = c.tensor_mor(c.tensor_mor(c.identity(a.dual), c.symmetry(b.dual, a.m)),
                                    c.identity(b.m));
    auto ev = c.compose(c.tensor_mor(a.ev, b.ev), shuffle_out);
    return DualPair<C>{c.tensor_obj(a.m, b.m), c.tensor_obj(a.dual, b.dual), coev, ev};
}

}  // namespace catrace
