#include "specrk/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "specrk/error.hpp"

namespace specrk {

namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr char magic[4] = {'S', 'R', 'K', 'L'};
constexpr std::uint32_t version = 1;

class Writer {
 public:
  template <typename T>
  void put(T v) {
    const auto* p = reinterpret_cast<const char*>(&v);
    bytes_.insert(bytes_.end(), p, p + sizeof(T));
  }
  void put_bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const char*>(p);
    bytes_.insert(bytes_.end(), c, c + n);
  }
  void put_complex(std::span<const Complex> v) {
    for (const Complex& z : v) {
      put(z.real());
      put(z.imag());
    }
  }
  const std::vector<char>& bytes() const { return bytes_; }

 private:
  std::vector<char> bytes_;
};

class Reader {
 public:
  explicit Reader(std::vector<char> bytes) : bytes_(std::move(bytes)) {}

  template <typename T>
  T get() {
    T v;
    get_bytes(&v, sizeof(T));
    return v;
  }
  void get_bytes(void* out, std::size_t n) {
    if (n > bytes_.size() - pos_) fail(ErrorCategory::format, "checkpoint is truncated");
    std::memcpy(out, bytes_.data() + pos_, n);
    pos_ += n;
  }
  void get_complex(std::span<Complex> out) {
    for (Complex& z : out) {
      const double re = get<double>();
      const double im = get<double>();
      z = Complex(re, im);
    }
  }
  bool at_end() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::vector<char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_checkpoint(const SimulationState& s, const std::string& path) {
  const GridSpec& g = s.flow.grid();
  Writer w;
  w.put_bytes(magic, 4);
  w.put(version);
  w.put(static_cast<std::uint32_t>(g.dims()));
  for (int a = 0; a < 3; ++a) w.put(static_cast<std::uint32_t>(g.n(a)));
  for (int a = 0; a < 3; ++a) w.put(g.length(a));
  w.put(s.flow.time);
  w.put(s.h);
  w.put(s.h_last);
  w.put(static_cast<std::uint8_t>(s.prev_rejected));
  w.put(static_cast<std::uint8_t>(s.history.valid));
  w.put(s.history.h_prev);
  w.put(static_cast<std::int64_t>(s.rhs_evals));
  w.put(static_cast<std::int64_t>(s.rejections));
  w.put(static_cast<std::int64_t>(s.accepted_steps));
  w.put(static_cast<std::uint32_t>(s.rng_state.size()));
  w.put_bytes(s.rng_state.data(), s.rng_state.size());
  w.put(static_cast<std::uint32_t>(s.flow.fields.components()));
  w.put(static_cast<std::uint8_t>(s.flow.has_density));
  w.put(static_cast<std::uint64_t>(s.history.derivative.size()));
  w.put_complex(s.history.derivative);
  w.put_complex(s.flow.fields.data());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCategory::io, "cannot write checkpoint '" + path + "'");
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) fail(ErrorCategory::io, "failed while writing checkpoint '" + path + "'");
}

SimulationState read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::io, "cannot open checkpoint '" + path + "'");
  Reader r(std::vector<char>(std::istreambuf_iterator<char>(in), {}));

  char m[4];
  r.get_bytes(m, 4);
  if (std::memcmp(m, magic, 4) != 0) fail(ErrorCategory::format, "not a checkpoint file (bad magic)");
  const auto v = r.get<std::uint32_t>();
  if (v != version) fail(ErrorCategory::format, "unsupported checkpoint version " + std::to_string(v));

  const auto dims = static_cast<int>(r.get<std::uint32_t>());
  std::array<int, 3> n{};
  std::array<double, 3> length{};
  for (auto& x : n) x = static_cast<int>(r.get<std::uint32_t>());
  for (auto& x : length) x = r.get<double>();
  GridSpec grid;
  try {
    grid = GridSpec(dims, n, length);
  } catch (const Error& e) {
    fail(ErrorCategory::format, std::string("checkpoint grid is invalid: ") + e.what());
  }

  SimulationState s;
  const double time = r.get<double>();
  s.h = r.get<double>();
  s.h_last = r.get<double>();
  s.prev_rejected = r.get<std::uint8_t>() != 0;
  s.history.valid = r.get<std::uint8_t>() != 0;
  s.history.h_prev = r.get<double>();
  s.rhs_evals = r.get<std::int64_t>();
  s.rejections = r.get<std::int64_t>();
  s.accepted_steps = r.get<std::int64_t>();
  const auto rng_len = r.get<std::uint32_t>();
  if (rng_len > r.remaining()) fail(ErrorCategory::format, "checkpoint is truncated");
  s.rng_state.resize(rng_len);
  r.get_bytes(s.rng_state.data(), rng_len);
  const auto components = r.get<std::uint32_t>();
  const bool has_density = r.get<std::uint8_t>() != 0;
  if (components != static_cast<std::uint32_t>(dims) + (has_density ? 1u : 0u)) {
    fail(ErrorCategory::format, "checkpoint component count does not match its dimension");
  }
  const auto history_size = r.get<std::uint64_t>();
  const std::size_t state_size = components * grid.spectral_size();
  if (history_size != 0 && history_size != state_size) {
    fail(ErrorCategory::format, "checkpoint history block has the wrong size");
  }
  if (history_size > r.remaining()) fail(ErrorCategory::format, "checkpoint is truncated");
  s.history.derivative.resize(history_size);
  r.get_complex(s.history.derivative);

  s.flow = FlowState(grid, has_density);
  s.flow.time = time;
  r.get_complex(s.flow.fields.data());
  if (!r.at_end()) fail(ErrorCategory::format, "checkpoint has trailing bytes");
  return s;
}

}  // namespace specrk
