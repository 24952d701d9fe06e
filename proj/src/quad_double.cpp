#include "mpmm/quad_double.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "hex_util.hpp"

namespace mpmm {

namespace {

using eft::quick_two_sum;
using eft::two_prod;
using eft::two_sum;

void three_sum(double& a, double& b, double& c) {
  double t2;
  double t3;
  double t1 = two_sum(a, b, t2);
  a = two_sum(c, t1, t3);
  b = two_sum(t2, t3, c);
}

void three_sum2(double& a, double& b, double& c) {
  double t2;
  double t3;
  double t1 = two_sum(a, b, t2);
  a = two_sum(c, t1, t3);
  b = t2 + t3;
}

void renorm(double& c0, double& c1, double& c2, double& c3) {
  if (std::isinf(c0)) return;
  double s2 = 0.0;
  double s3 = 0.0;
  double s0 = quick_two_sum(c2, c3, c3);
  s0 = quick_two_sum(c1, s0, c2);
  c0 = quick_two_sum(c0, s0, c1);
  s0 = c0;
  double s1 = c1;
  if (s1 != 0.0) {
    s1 = quick_two_sum(s1, c2, s2);
    if (s2 != 0.0) {
      s2 = quick_two_sum(s2, c3, s3);
    } else {
      s1 = quick_two_sum(s1, c3, s2);
    }
  } else {
    s0 = quick_two_sum(s0, c2, s1);
    if (s1 != 0.0) {
      s1 = quick_two_sum(s1, c3, s2);
    } else {
      s0 = quick_two_sum(s0, c3, s1);
    }
  }
  c0 = s0;
  c1 = s1;
  c2 = s2;
  c3 = s3;
}

void renorm(double& c0, double& c1, double& c2, double& c3, double& c4) {
  if (std::isinf(c0)) return;
  double s2 = 0.0;
  double s3 = 0.0;
  double s0 = quick_two_sum(c3, c4, c4);
  s0 = quick_two_sum(c2, s0, c3);
  s0 = quick_two_sum(c1, s0, c2);
  c0 = quick_two_sum(c0, s0, c1);
  s0 = c0;
  double s1 = c1;
  if (s1 != 0.0) {
    s1 = quick_two_sum(s1, c2, s2);
    if (s2 != 0.0) {
      s2 = quick_two_sum(s2, c3, s3);
      if (s3 != 0.0) {
        s3 += c4;
      } else {
        s2 = quick_two_sum(s2, c4, s3);
      }
    } else {
      s1 = quick_two_sum(s1, c3, s2);
      if (s2 != 0.0) {
        s2 = quick_two_sum(s2, c4, s3);
      } else {
        s1 = quick_two_sum(s1, c4, s2);
      }
    }
  } else {
    s0 = quick_two_sum(s0, c2, s1);
    if (s1 != 0.0) {
      s1 = quick_two_sum(s1, c3, s2);
      if (s2 != 0.0) {
        s2 = quick_two_sum(s2, c4, s3);
      } else {
        s1 = quick_two_sum(s1, c4, s2);
      }
    } else {
      s0 = quick_two_sum(s0, c3, s1);
      if (s1 != 0.0) {
        s1 = quick_two_sum(s1, c4, s2);
      } else {
        s0 = quick_two_sum(s0, c4, s1);
      }
    }
  }
  c0 = s0;
  c1 = s1;
  c2 = s2;
  c3 = s3;
}

// Adds c into the double-length accumulator (a, b); returns the part that
// no longer fits, or 0 when everything was absorbed.
double quick_three_accum(double& a, double& b, double c) {
  double s = two_sum(b, c, b);
  s = two_sum(a, s, a);
  bool za = a != 0.0;
  bool zb = b != 0.0;
  if (za && zb) return s;
  if (!zb) {
    b = a;
    a = s;
  } else {
    a = s;
  }
  return 0.0;
}

QuadDouble mul_double(const QuadDouble& a, double b) {
  double q0;
  double q1;
  double q2;
  double p0 = two_prod(a[0], b, q0);
  double p1 = two_prod(a[1], b, q1);
  double p2 = two_prod(a[2], b, q2);
  double p3 = a[3] * b;

  double s0 = p0;
  double s2;
  double s1 = two_sum(q0, p1, s2);
  three_sum(s2, q1, p2);
  three_sum2(q1, q2, p3);
  double s3 = q1;
  double s4 = q2 + p2;
  renorm(s0, s1, s2, s3, s4);
  return {s0, s1, s2, s3};
}

}  // namespace

bool QuadDouble::is_finite() const {
  for (double x : c) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

bool QuadDouble::is_normalized() const {
  for (int i = 0; i < 3; ++i) {
    if (c[i] + c[i + 1] != c[i]) return false;
  }
  return true;
}

QuadDouble operator+(const QuadDouble& a, const QuadDouble& b) {
  // Merge both operands by decreasing magnitude into a double-length
  // accumulator, emitting components as they overflow it.
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double x[4] = {0.0, 0.0, 0.0, 0.0};
  double u;
  double v;
  if (std::fabs(a[i]) > std::fabs(b[j])) {
    u = a[i++];
  } else {
    u = b[j++];
  }
  if (std::fabs(a[i]) > std::fabs(b[j])) {
    v = a[i++];
  } else {
    v = b[j++];
  }
  u = quick_two_sum(u, v, v);

  while (k < 4) {
    if (i >= 4 && j >= 4) {
      x[k] = u;
      if (k < 3) x[++k] = v;
      break;
    }
    double t;
    if (i >= 4) {
      t = b[j++];
    } else if (j >= 4) {
      t = a[i++];
    } else if (std::fabs(a[i]) > std::fabs(b[j])) {
      t = a[i++];
    } else {
      t = b[j++];
    }
    double s = quick_three_accum(u, v, t);
    if (s != 0.0) x[k++] = s;
  }

  for (std::size_t r = i; r < 4; ++r) x[3] += a[r];
  for (std::size_t r = j; r < 4; ++r) x[3] += b[r];
  renorm(x[0], x[1], x[2], x[3]);
  return {x[0], x[1], x[2], x[3]};
}

QuadDouble operator-(const QuadDouble& a, const QuadDouble& b) { return a + (-b); }

QuadDouble operator*(const QuadDouble& a, const QuadDouble& b) {
  double q0;
  double q1;
  double q2;
  double q3;
  double q4;
  double q5;
  double p0 = two_prod(a[0], b[0], q0);
  double p1 = two_prod(a[0], b[1], q1);
  double p2 = two_prod(a[1], b[0], q2);
  double p3 = two_prod(a[0], b[2], q3);
  double p4 = two_prod(a[1], b[1], q4);
  double p5 = two_prod(a[2], b[0], q5);

  three_sum(p1, p2, q0);

  // Six-three sum of p2, q1, q2, p3, p4, p5.
  three_sum(p2, q1, q2);
  three_sum(p3, p4, p5);
  double t0;
  double t1;
  double s0 = two_sum(p2, p3, t0);
  double s1 = two_sum(q1, p4, t1);
  double s2 = q2 + p5;
  s1 = two_sum(s1, t0, t0);
  s2 += (t0 + t1);

  // O(eps^3) terms.
  s1 += a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0] + q0 + q3 + q4 + q5;
  renorm(p0, p1, s0, s1, s2);
  return {p0, p1, s0, s1};
}

QuadDouble operator/(const QuadDouble& a, const QuadDouble& b) {
  // Long division, one double quotient digit at a time.
  double q0 = a[0] / b[0];
  QuadDouble r = a - mul_double(b, q0);
  double q1 = r[0] / b[0];
  r -= mul_double(b, q1);
  double q2 = r[0] / b[0];
  r -= mul_double(b, q2);
  double q3 = r[0] / b[0];
  r -= mul_double(b, q3);
  double q4 = r[0] / b[0];
  renorm(q0, q1, q2, q3, q4);
  return {q0, q1, q2, q3};
}

QuadDouble sqrt(const QuadDouble& a) {
  if (a[0] == 0.0) return {};
  if (a[0] < 0.0) return QuadDouble(std::nan(""));
  // Newton iteration for 1/sqrt(a): x += x * (1/2 - (a/2) * x^2).
  QuadDouble r(1.0 / std::sqrt(a[0]));
  QuadDouble h = mul_double(a, 0.5);
  const QuadDouble half(0.5);
  for (int iter = 0; iter < 3; ++iter) {
    r += (half - h * (r * r)) * r;
  }
  return r * a;
}

QuadDouble abs(const QuadDouble& a) { return a[0] < 0.0 ? -a : a; }

bool identical(const QuadDouble& a, const QuadDouble& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

std::string to_hex(const QuadDouble& x) {
  return detail::hex_double(x[0]) + "," + detail::hex_double(x[1]) + "," + detail::hex_double(x[2]) +
         "," + detail::hex_double(x[3]);
}

QuadDouble qd_from_hex(std::string_view text) {
  auto p = detail::split_hex_components(text, 4);
  return {p[0], p[1], p[2], p[3]};
}

}  // namespace mpmm
