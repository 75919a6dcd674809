#pragma once

// Elements c0 + c1*sqrt(d) of a quadratic extension of a base field T.

#include <stdexcept>

namespace rankstab {

template <class T>
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(T c0, T c1, T radicand) : c0_(std::move(c0)), c1_(std::move(c1)), d_(std::move(radicand)) {}

    const T& c0() const { return c0_; }
    const T& c1() const { return c1_; }
    const T& radicand() const { return d_; }

    bool in_base() const { return is_zero(c1_); }
    QuadElem conjugate() const { return {c0_, -c1_, d_}; }

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y) { return {x.c0_ + y.c0_, x.c1_ + y.c1_, x.d_}; }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y) { return {x.c0_ - y.c0_, x.c1_ - y.c1_, x.d_}; }
    friend QuadElem operator-(const QuadElem& x) { return {-x.c0_, -x.c1_, x.d_}; }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
        return {x.c0_ * y.c0_ + x.c1_ * y.c1_ * x.d_, x.c0_ * y.c1_ + x.c1_ * y.c0_, x.d_};
    }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) {
        const T n = y.c0_ * y.c0_ - y.c1_ * y.c1_ * y.d_;
        if (is_zero(n)) throw std::domain_error("QuadElem: division by zero");
        const QuadElem num = x * y.conjugate();
        return {num.c0_ / n, num.c1_ / n, x.d_};
    }
    friend bool operator==(const QuadElem& x, const QuadElem& y) { return x.c0_ == y.c0_ && x.c1_ == y.c1_; }
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }
    friend bool is_zero(const QuadElem& x) { return is_zero(x.c0_) && is_zero(x.c1_); }

private:
    T c0_{};
    T c1_{};
    T d_{};
};

}  // namespace rankstab
