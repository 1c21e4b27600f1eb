#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ihf/ring.hpp"

namespace ihf {

// Gradings are stored doubled so half-integers stay exact.
//   U, UQ:       [maslov]
//   UV (l = 1):  [gr_U, gr_V]          Alexander = (gr_U - gr_V) / 2
//   UV (l > 1):  [gr_w, gr_z, A_1, ..., A_l]
struct Grading {
    std::vector<std::int64_t> twice;

    Grading() = default;
    explicit Grading(std::vector<std::int64_t> doubled) : twice(std::move(doubled)) {}
    static Grading from_halves(std::initializer_list<std::int64_t> doubled) { return Grading(std::vector<std::int64_t>(doubled)); }
    static Grading integral(std::initializer_list<std::int64_t> values);
    static Grading zero(Mode mode);

    std::size_t size() const { return twice.size(); }
    Grading& operator+=(const Grading& o);
    Grading& operator-=(const Grading& o);
    friend Grading operator+(Grading a, const Grading& b) { return a += b; }
    friend Grading operator-(Grading a, const Grading& b) { return a -= b; }
    Grading operator-() const;
    auto operator<=>(const Grading&) const = default;
    bool operator==(const Grading&) const = default;

    std::string to_string() const;
};

int grading_dim(Mode mode);
Grading shift_of(Mode mode, const Monomial& m);     // grading change from multiplying by m
Grading conj_grading(Mode mode, const Grading& g);  // swap the two Maslov gradings, negate A
Grading differential_degree(Mode mode);
// Alexander grading (doubled) of component i; only for UV.
std::int64_t alexander_twice(Mode mode, const Grading& g, int component = 0);

// All monomials m with shift_of(mode, m) == delta.
std::vector<Monomial> monomials_with_shift(Mode mode, const Grading& delta);

std::string format_half(std::int64_t twice);

}  // namespace ihf
