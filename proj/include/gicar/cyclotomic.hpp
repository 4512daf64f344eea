#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gicar {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

namespace detail {

/// Coefficients of the N-th cyclotomic polynomial, monic, index = degree.
/// Computed by dividing x^N - 1 by all lower cyclotomic factors.
inline const std::vector<Int>& cyclotomic_poly(unsigned n) {
    static std::map<unsigned, std::vector<Int>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    auto exact_divide = [](std::vector<Int> num, const std::vector<Int>& den) {
        std::vector<Int> q(num.size() - den.size() + 1, 0);
        for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
            q[k] = num[k + den.size() - 1];
            if (q[k] == 0) continue;
            for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= q[k] * den[j];
        }
        return q;
    };

    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        std::vector<Int> numer(d + 1, 0);
        numer[0] = -1;
        numer[d] = 1;
        for (unsigned e = 1; e < d; ++e)
            if (d % e == 0) numer = exact_divide(std::move(numer), cache.at(e));
        cache.emplace(d, std::move(numer));
    }
    return cache.at(n);
}

}  // namespace detail

/// Exact element of Q(zeta_N), zeta_N a primitive N-th root of unity.
/// Stored as a rational coefficient vector for 1, zeta, zeta^2, ... kept
/// reduced modulo the N-th cyclotomic polynomial and trimmed of trailing
/// zeros, so representations are canonical and equality is coefficient-wise.
class CycScalar {
public:
    CycScalar() : order_(1) {}

    explicit CycScalar(const Rat& r, unsigned order = 1) : order_(order) {
        if (order == 0) throw std::invalid_argument("CycScalar: order must be >= 1");
        if (r != 0) c_.push_back(r);
    }

    CycScalar(long num, long den = 1) : CycScalar(rat(num, den)) {}

    /// zeta_N^k
    static CycScalar zeta(unsigned order, long power = 1) {
        if (order == 0) throw std::invalid_argument("CycScalar::zeta: order must be >= 1");
        CycScalar z(Rat(0), order);
        long p = ((power % static_cast<long>(order)) + order) % order;
        z.c_.assign(static_cast<std::size_t>(p) + 1, Rat(0));
        z.c_.back() = 1;
        z.reduce();
        return z;
    }

    static CycScalar from_coeffs(unsigned order, std::vector<Rat> coeffs) {
        CycScalar z(Rat(0), order);
        if (coeffs.size() > order) throw std::invalid_argument("CycScalar: too many coefficients");
        z.c_ = std::move(coeffs);
        z.reduce();
        return z;
    }

    unsigned order() const { return order_; }

    /// Coefficient vector padded to length N (the canonical reduced form).
    std::vector<Rat> coeffs() const {
        std::vector<Rat> out = c_;
        out.resize(order_, Rat(0));
        return out;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }

    /// Value as a plain rational; throws if the element has higher-degree terms.
    Rat rational_value() const {
        if (!is_rational()) throw std::invalid_argument("CycScalar: not rational");
        return c_.empty() ? Rat(0) : c_[0];
    }

    /// Image in Q(zeta_M) via zeta_N -> zeta_M^{M/N}; requires N | M.
    CycScalar embedded(unsigned target_order) const {
        if (target_order == order_) return *this;
        if (target_order % order_ != 0)
            throw std::invalid_argument("CycScalar: order " + std::to_string(order_) +
                                        " does not embed into order " + std::to_string(target_order));
        unsigned step = target_order / order_;
        CycScalar out(Rat(0), target_order);
        if (!c_.empty()) {
            out.c_.assign((c_.size() - 1) * step + 1, Rat(0));
            for (std::size_t j = 0; j < c_.size(); ++j) out.c_[j * step] = c_[j];
        }
        out.reduce();
        return out;
    }

    CycScalar conj() const {
        CycScalar out(Rat(0), order_);
        out.c_.assign(order_, Rat(0));
        for (std::size_t j = 0; j < c_.size(); ++j) out.c_[(order_ - j) % order_] += c_[j];
        out.reduce();
        return out;
    }

    CycScalar operator-() const {
        CycScalar out = *this;
        for (auto& x : out.c_) x = -x;
        return out;
    }

    friend CycScalar operator+(const CycScalar& a, const CycScalar& b) {
        auto [x, y] = aligned(a, b);
        if (y.c_.size() > x.c_.size()) x.c_.resize(y.c_.size(), Rat(0));
        for (std::size_t j = 0; j < y.c_.size(); ++j) x.c_[j] += y.c_[j];
        x.trim();
        return x;
    }

    friend CycScalar operator-(const CycScalar& a, const CycScalar& b) { return a + (-b); }

    friend CycScalar operator*(const CycScalar& a, const CycScalar& b) {
        auto [x, y] = aligned(a, b);
        const unsigned n = x.order_;
        if (x.c_.empty() || y.c_.empty()) return CycScalar(Rat(0), n);
        if (y.is_rational()) {
            for (auto& v : x.c_) v *= y.c_[0];
            return x;
        }
        if (x.is_rational()) {
            CycScalar out = y;
            for (auto& v : out.c_) v *= x.c_[0];
            return out;
        }
        CycScalar out(Rat(0), n);
        out.c_.assign(n, Rat(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                out.c_[(i + j) % n] += x.c_[i] * y.c_[j];
            }
        }
        out.reduce();
        return out;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against the cyclotomic polynomial (irreducible over Q).
    CycScalar inverse() const {
        if (is_zero()) throw std::invalid_argument("CycScalar: division by zero");
        if (is_rational()) {
            CycScalar out(Rat(0), order_);
            out.c_.push_back(1 / c_[0]);
            return out;
        }
        const auto& phi_int = detail::cyclotomic_poly(order_);
        std::vector<Rat> r0(phi_int.begin(), phi_int.end());
        std::vector<Rat> r1 = c_;
        std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // running Bezout coefficient of *this
        while (true) {
            auto [q, r] = poly_divmod(r0, r1);
            trim_poly(r);
            if (r.empty()) break;
            std::vector<Rat> s2(std::max(s0.size(), q.size() + s1.size()), Rat(0));
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
            trim_poly(s2);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.size() != 1)
            throw std::logic_error("CycScalar: cyclotomic polynomial not irreducible?");
        for (auto& v : s1) v /= r1[0];
        return from_coeffs(order_, std::move(s1));
    }

    friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }

    CycScalar& operator+=(const CycScalar& o) { return *this = *this + o; }
    CycScalar& operator-=(const CycScalar& o) { return *this = *this - o; }
    CycScalar& operator*=(const CycScalar& o) { return *this = *this * o; }

    /// Canonical-form comparison; one order must embed into the other.
    friend bool operator==(const CycScalar& a, const CycScalar& b) {
        if (a.order_ == b.order_) return a.c_ == b.c_;
        if (b.order_ % a.order_ == 0) return a.embedded(b.order_).c_ == b.c_;
        if (a.order_ % b.order_ == 0) return a.c_ == b.embedded(a.order_).c_;
        return false;
    }
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            if (!first) os << " + ";
            os << c_[j].get_str();
            if (j > 0) os << "*z^" << j;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    unsigned order_;
    std::vector<Rat> c_;  // trimmed: no trailing zeros, size <= order_

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    static void trim_poly(std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }

    /// divide a by b (b nonzero, trimmed); returns (quotient, remainder)
    static std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> a,
                                                                     const std::vector<Rat>& b) {
        trim_poly(a);
        if (a.size() < b.size()) return {{}, a};
        std::vector<Rat> q(a.size() - b.size() + 1, Rat(0));
        for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
            Rat f = a[k + b.size() - 1] / b.back();
            q[k] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= f * b[j];
        }
        a.resize(b.size() - 1);
        return {q, a};
    }

    static std::pair<CycScalar, CycScalar> aligned(const CycScalar& a, const CycScalar& b) {
        if (a.order_ == b.order_) return {a, b};
        if (a.order_ == 1) return {a.embedded(b.order_), b};
        if (b.order_ == 1) return {a, b.embedded(a.order_)};
        throw std::invalid_argument("CycScalar: incompatible orders " + std::to_string(a.order_) +
                                    " and " + std::to_string(b.order_));
    }

    /// Reduce modulo the cyclotomic polynomial so degrees >= phi(N) vanish.
    void reduce() {
        const auto& phi = detail::cyclotomic_poly(order_);
        const std::size_t deg = phi.size() - 1;  // = Euler phi(N)
        if (c_.size() > deg) {
            for (std::size_t j = c_.size(); j-- > deg;) {
                if (c_[j] == 0) continue;
                Rat f = c_[j];
                c_[j] = 0;
                for (std::size_t i = 0; i < deg; ++i) c_[j - deg + i] -= f * Rat(phi[i]);
            }
        }
        trim();
    }
};

}  // namespace gicar
