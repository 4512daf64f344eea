#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "gicar/cyclotomic.hpp"

namespace gicar {

/// Formal linear combination of basis objects with CycScalar coefficients.
/// Zero coefficients are pruned so equality is structural.
template <class Basis>
class LinComb {
public:
    using Terms = std::map<Basis, CycScalar>;

    LinComb() = default;
    LinComb(const Basis& b, const CycScalar& c = CycScalar(1)) {
        if (!c.is_zero()) terms_[b] = c;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    CycScalar coeff(const Basis& b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? CycScalar(0) : it->second;
    }

    LinComb& add_term(const Basis& b, const CycScalar& c) {
        if (c.is_zero()) return *this;
        auto [it, inserted] = terms_.emplace(b, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
        return *this;
    }

    friend LinComb operator+(const LinComb& a, const LinComb& b) {
        LinComb out = a;
        for (const auto& [k, v] : b.terms_) out.add_term(k, v);
        return out;
    }
    friend LinComb operator-(const LinComb& a, const LinComb& b) {
        LinComb out = a;
        for (const auto& [k, v] : b.terms_) out.add_term(k, -v);
        return out;
    }
    friend LinComb operator*(const CycScalar& s, const LinComb& a) {
        LinComb out;
        if (s.is_zero()) return out;
        for (const auto& [k, v] : a.terms_) out.add_term(k, s * v);
        return out;
    }
    LinComb operator-() const { return CycScalar(-1) * *this; }
    LinComb& operator+=(const LinComb& o) { return *this = *this + o; }
    LinComb& operator-=(const LinComb& o) { return *this = *this - o; }

    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }

    std::string str(const std::function<std::string(const Basis&)>& show) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : terms_) {
            if (!first) os << "  +  ";
            os << "(" << v.str() << ") " << show(k);
            first = false;
        }
        return os.str();
    }

private:
    Terms terms_;
};

/// Bilinear extension of a basis-level product.  The composer returns a
/// LinComb (possibly empty, meaning zero).
template <class Basis, class F>
LinComb<Basis> bilinear(const LinComb<Basis>& a, const LinComb<Basis>& b, F&& compose) {
    LinComb<Basis> out;
    for (const auto& [x, cx] : a.terms())
        for (const auto& [y, cy] : b.terms()) {
            LinComb<Basis> piece = compose(x, y);
            out += (cx * cy) * piece;
        }
    return out;
}

}  // namespace gicar
