// Exact scalar arithmetic over the ground rings Z, Q and Z/m.
//
// Every scalar is stored as a boost::multiprecision::cpp_rational; the
// RingTag decides which values are legal and how arithmetic normalizes
// (rationals stay reduced with positive denominator automatically,
// modular values live in [0, m)).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace catrace {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct RingTag {
    enum class Kind { integers, rationals, mod };
    Kind kind = Kind::integers;
    Int modulus = 0;  // valid iff kind == mod, always >= 2

    static RingTag Z() { return {Kind::integers, 0}; }
    static RingTag Q() { return {Kind::rationals, 0}; }
    static RingTag Zm(Int m)
    {
        if (m < 2) throw std::invalid_argument("modulus must be >= 2");
        return {Kind::mod, std::move(m)};
    }

    bool operator==(const RingTag& o) const
    {
        return kind == o.kind && (kind != Kind::mod || modulus == o.modulus);
    }

    bool is_prime_modulus() const
    {
        if (kind != Kind::mod) return false;
        if (modulus < 2) return false;
        for (Int d = 2; d * d <= modulus; ++d)
            if (modulus % d == 0) return false;
        return true;
    }

    // Q and Z/p admit Gaussian elimination.
    bool is_field() const { return kind == Kind::rationals || is_prime_modulus(); }

    std::string name() const
    {
        switch (kind) {
            case Kind::integers: return "Z";
            case Kind::rationals: return "Q";
            case Kind::mod: return "Zm:" + modulus.str();
        }
        return "?";
    }

    static RingTag parse(const std::string& s)
    {
        if (s == "Z") return Z();
        if (s == "Q") return Q();
        if (s.rfind("Zm:", 0) == 0) return Zm(Int(s.substr(3)));
        throw std::invalid_argument("unknown ring '" + s + "'");
    }
};

inline Int mod_floor(const Int& a, const Int& m)
{
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Extended Euclid: returns g = gcd(a,b) and x,y with a*x + b*y = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y)
{
    if (b == 0) {
        x = (a < 0) ? -1 : 1;
        y = 0;
        return (a < 0) ? Int(-a) : a;
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline Int mod_inverse(const Int& a, const Int& m)
{
    Int x, y;
    Int g = ext_gcd(mod_floor(a, m), m, x, y);
    if (g != 1) throw std::domain_error("not invertible mod " + m.str());
    return mod_floor(x, m);
}

inline Rat ring_normalize(const RingTag& r, const Rat& v)
{
    if (r.kind == RingTag::Kind::rationals) return v;
    if (denominator(v) != 1)
        throw std::domain_error("non-integral value in ring " + r.name());
    if (r.kind == RingTag::Kind::integers) return v;
    return Rat(mod_floor(numerator(v), r.modulus));
}

inline Rat ring_add(const RingTag& r, const Rat& a, const Rat& b) { return ring_normalize(r, a + b); }
inline Rat ring_sub(const RingTag& r, const Rat& a, const Rat& b) { return ring_normalize(r, a - b); }
inline Rat ring_mul(const RingTag& r, const Rat& a, const Rat& b) { return ring_normalize(r, a * b); }
inline Rat ring_neg(const RingTag& r, const Rat& a) { return ring_normalize(r, -a); }

inline Rat ring_inv(const RingTag& r, const Rat& a)
{
    switch (r.kind) {
        case RingTag::Kind::rationals:
            if (a == 0) throw std::domain_error("division by zero");
            return 1 / a;
        case RingTag::Kind::mod:
            return Rat(mod_inverse(numerator(a), r.modulus));
        case RingTag::Kind::integers:
            if (a == 1 || a == -1) return a;
            throw std::domain_error("Z is not a field");
    }
    throw std::logic_error("bad ring");
}

// Scalars print as `p` or `p/q`, matching the matrix text format.
inline std::string scalar_str(const Rat& v)
{
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

inline Rat scalar_parse(const RingTag& r, const std::string& tok)
{
    auto slash = tok.find('/');
    Rat v;
    if (slash == std::string::npos)
        v = Rat(Int(tok));
    else
        v = Rat(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1)));
    return ring_normalize(r, v);
}

}  // namespace catrace
