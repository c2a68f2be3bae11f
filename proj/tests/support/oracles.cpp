#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

namespace {

using LComplex = std::complex<long double>;

int extent(const GridSpec& g, int axis) { return axis < g.dims() ? g.n(axis) : 1; }

// In-place direct DFT along one axis of a complex array with the given sign.
void dft_axis(std::vector<LComplex>& data, const std::array<int, 3>& n, int axis, int sign) {
  const int len = n[static_cast<std::size_t>(axis)];
  if (len == 1) return;
  std::array<int, 3> stride{1, n[0], n[0] * n[1]};
  const int s = stride[static_cast<std::size_t>(axis)];
  std::vector<LComplex> twiddle(static_cast<std::size_t>(len));
  for (int j = 0; j < len; ++j) {
    const long double ang = sign * 2.0L * std::numbers::pi_v<long double> * j / len;
    twiddle[static_cast<std::size_t>(j)] = LComplex(std::cos(ang), std::sin(ang));
  }
  std::vector<LComplex> line(static_cast<std::size_t>(len)), out(static_cast<std::size_t>(len));
  const int total = n[0] * n[1] * n[2];
  for (int base = 0; base < total; ++base) {
    // Only visit line starts: index with zero coordinate along `axis`.
    const int coord = (base / s) % len;
    if (coord != 0) continue;
    for (int j = 0; j < len; ++j) line[static_cast<std::size_t>(j)] = data[static_cast<std::size_t>(base + j * s)];
    for (int k = 0; k < len; ++k) {
      LComplex acc = 0;
      for (int j = 0; j < len; ++j) {
        acc += line[static_cast<std::size_t>(j)] * twiddle[static_cast<std::size_t>((static_cast<long>(j) * k) % len)];
      }
      out[static_cast<std::size_t>(k)] = acc;
    }
    for (int k = 0; k < len; ++k) data[static_cast<std::size_t>(base + k * s)] = out[static_cast<std::size_t>(k)];
  }
}

}  // namespace

int signed_mode(int i, int n) { return i <= n / 2 ? i : i - n; }

bool is_nyquist(int m, int n) { return n > 1 && (m == n / 2 || m == -n / 2); }

Complex FullSpectrum::at(int m0, int m1, int m2) const {
  const int n0 = grid.n(0), n1 = grid.n(1), n2 = extent(grid, 2);
  const int i0 = ((m0 % n0) + n0) % n0;
  const int i1 = ((m1 % n1) + n1) % n1;
  const int i2 = ((m2 % n2) + n2) % n2;
  return c[static_cast<std::size_t>(i0 + n0 * (i1 + n1 * i2))];
}

FullSpectrum full_dft(const GridSpec& grid, const std::vector<double>& real) {
  const std::array<int, 3> n{grid.n(0), grid.n(1), extent(grid, 2)};
  std::vector<LComplex> data(real.begin(), real.end());
  for (int axis = 0; axis < grid.dims(); ++axis) dft_axis(data, n, axis, -1);
  FullSpectrum s{grid, {}};
  s.c.reserve(data.size());
  for (const auto& z : data) s.c.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  return s;
}

std::vector<Complex> full_idft(const FullSpectrum& s) {
  const std::array<int, 3> n{s.grid.n(0), s.grid.n(1), extent(s.grid, 2)};
  std::vector<LComplex> data(s.c.begin(), s.c.end());
  for (int axis = 0; axis < s.grid.dims(); ++axis) dft_axis(data, n, axis, +1);
  const long double scale = 1.0L / data.size();
  std::vector<Complex> out;
  for (const auto& z : data) {
    out.emplace_back(static_cast<double>(z.real() * scale), static_cast<double>(z.imag() * scale));
  }
  return out;
}

FullSpectrum truncated_convolution(const FullSpectrum& a, const FullSpectrum& b) {
  const GridSpec& g = a.grid;
  const int n0 = g.n(0), n1 = g.n(1), n2 = extent(g, 2);
  const int h0 = n0 / 2, h1 = n1 / 2, h2 = n2 > 1 ? n2 / 2 : 1;
  FullSpectrum out{g, std::vector<Complex>(a.c.size())};
  const long double inv_n = 1.0L / (static_cast<long double>(n0) * n1 * n2);
  for (int k2 = -h2 + 1; k2 <= h2 - 1; ++k2) {
    for (int k1 = -h1 + 1; k1 <= h1 - 1; ++k1) {
      for (int k0 = -h0 + 1; k0 <= h0 - 1; ++k0) {
        LComplex acc = 0;
        for (int p2 = -h2 + 1; p2 <= h2 - 1; ++p2) {
          const int q2 = k2 - p2;
          if (q2 <= -h2 || q2 >= h2) continue;
          for (int p1 = -h1 + 1; p1 <= h1 - 1; ++p1) {
            const int q1 = k1 - p1;
            if (q1 <= -h1 || q1 >= h1) continue;
            for (int p0 = -h0 + 1; p0 <= h0 - 1; ++p0) {
              const int q0 = k0 - p0;
              if (q0 <= -h0 || q0 >= h0) continue;
              acc += LComplex(a.at(p0, p1, p2)) * LComplex(b.at(q0, q1, q2));
            }
          }
        }
        acc *= inv_n;
        const int i0 = (k0 + n0) % n0, i1 = (k1 + n1) % n1, i2 = (k2 + n2) % n2;
        out.c[static_cast<std::size_t>(i0 + n0 * (i1 + n1 * i2))] =
            Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
      }
    }
  }
  return out;
}

std::vector<double> random_field(const GridSpec& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(grid.physical_size());
  for (double& x : v) x = dist(rng);
  return v;
}

Complex stored(const specrk::SpectralField& s, std::size_t component, int m0, int m1, int m2) {
  const GridSpec& g = s.grid();
  const int e0 = g.spectral_extent(0);
  const int n1 = g.n(1), n2 = extent(g, 2);
  const int i1 = ((m1 % n1) + n1) % n1;
  const int i2 = ((m2 % n2) + n2) % n2;
  return s.component(component)[static_cast<std::size_t>(m0 + e0 * (i1 + n1 * i2))];
}

}  // namespace oracle
