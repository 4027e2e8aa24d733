#pragma once
// Exact field scalars: rationals with arbitrary-precision integers, extended
// to Gaussian rationals a + b*i. The session field (Q or Q(i)) is a policy
// flag checked at the few places that can introduce i; the storage type is
// the same either way so mixed-field code paths cannot diverge.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ncweil {

enum class Field { Q, Qi };

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Scalar {
  public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(long num, long den) : re_(num, den), im_(0) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        re_.canonicalize();
    }
    explicit Scalar(mpq_class re) : re_(std::move(re)), im_(0) {}
    Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i2 = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i2);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        if (n == 0) throw std::domain_error("division by zero");
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
        mpq_class i2 = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i2);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // total order for canonical map keys / report sorting, not a field order
    friend bool operator<(const Scalar& a, const Scalar& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    Scalar conj() const { return Scalar(re_, -im_); }

    // "p/q" or "a/b+c/d i" (also "-i", "2i", "1-i"); whitespace-insensitive
    static Scalar parse(std::string_view s);
    std::string str() const;

  private:
    mpq_class re_, im_;
};

namespace detail {

inline mpq_class parse_rat(std::string_view s) {
    if (s.empty()) throw parse_error("empty number");
    try {
        mpq_class q(std::string(s), 10);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw parse_error("bad rational: '" + std::string(s) + "'");
    }
}

}  // namespace detail

inline Scalar Scalar::parse(std::string_view in) {
    std::string s;
    for (char c : in)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty scalar");
    if (s.back() == 'i' || s.back() == 'I') {
        // split off the trailing imaginary term: scan for the +/- that starts it
        size_t split = std::string::npos;
        for (size_t k = s.size() - 1; k > 0; --k) {
            char c = s[k];
            if ((c == '+' || c == '-') && s[k - 1] != '/' && s[k - 1] != '+' &&
                s[k - 1] != '-') {
                split = k;
                break;
            }
        }
        std::string re = split == std::string::npos ? "" : s.substr(0, split);
        std::string im = split == std::string::npos ? s : s.substr(split);
        im.pop_back();  // drop 'i'
        if (im.empty() || im == "+") im = "1";
        else if (im == "-") im = "-1";
        mpq_class rq = re.empty() ? mpq_class(0) : detail::parse_rat(re);
        return Scalar(rq, detail::parse_rat(im));
    }
    return Scalar(detail::parse_rat(s));
}

inline std::string Scalar::str() const {
    if (im_ == 0) return re_.get_str();
    std::string im = im_.get_str() + "i";
    if (re_ == 0) return im;
    return re_.get_str() + (im_ > 0 ? "+" : "") + im;
}

// exact square root of a rational, if it is a perfect square
inline std::optional<mpq_class> sqrt_rational(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return mpq_class(0);
    const mpz_class &n = q.get_num(), &d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return mpq_class(rn, rd);
}

// square root within the session field; nullopt signals FieldExtensionRequired
inline std::optional<Scalar> sqrt_in_field(const Scalar& c, Field field) {
    if (c.is_zero()) return Scalar(0);
    if (c.is_rational()) {
        if (auto r = sqrt_rational(c.real())) return Scalar(*r);
        if (field == Field::Qi) {
            if (auto r = sqrt_rational(-c.real())) return Scalar(mpq_class(0), *r);
        }
        return std::nullopt;
    }
    if (field != Field::Qi) return std::nullopt;
    // (a+bi)^2 = re + im*i  =>  a^2 = (re + |c|)/2, b = im/(2a)
    auto nrm = sqrt_rational(c.real() * c.real() + c.imag() * c.imag());
    if (!nrm) return std::nullopt;
    auto a = sqrt_rational((c.real() + *nrm) / 2);
    if (!a || *a == 0) return std::nullopt;
    return Scalar(*a, c.imag() / (2 * *a));
}

}  // namespace ncweil
