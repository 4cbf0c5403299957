#include "qnls/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace qnls {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw FormatError("cannot open " + path.string() + " for writing");
  }
  template <class T>
  void put(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); }
  void finish() {
    out_.flush();
    if (!out_) throw Error("write failed");
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(std::vector<char> data) : data_(std::move(data)) {}
  template <class T>
  T get() {
    T v;
    take(&v, sizeof(T));
    return v;
  }
  void take(void* dst, std::size_t n) {
    if (pos_ + n > data_.size()) throw FormatError("checkpoint size mismatch: file truncated");
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::vector<char> data_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_pair(const FieldPair& p, const CheckpointMeta& meta, const std::filesystem::path& path) {
  const Grid& g = p.grid();
  if (static_cast<int>(meta.c.size()) != g.dim()) throw ValidationError("checkpoint velocity has wrong length");
  Writer w(path);
  w.bytes(kCheckpointMagic, sizeof kCheckpointMagic);
  w.put<std::uint16_t>(kCheckpointVersion);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(g.dim()));
  for (int n : g.points()) w.put<std::uint64_t>(static_cast<std::uint64_t>(n));
  for (double L : g.box()) w.put<double>(L);
  w.put<double>(meta.kappa);
  w.put<double>(meta.omega);
  for (double c : meta.c) w.put<double>(c);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(p.gauge));
  w.bytes(p.first.values().data(), p.first.size() * sizeof(cplx));
  w.bytes(p.second.values().data(), p.second.size() * sizeof(cplx));
  w.finish();
}

Checkpoint load_pair(const std::filesystem::path& path, std::size_t max_points) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  Reader r(std::vector<char>(std::istreambuf_iterator<char>(in), {}));

  char magic[6];
  r.take(magic, sizeof magic);
  if (std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0) throw FormatError("not a QNLSF1 checkpoint (bad magic)");
  const auto version = r.get<std::uint16_t>();
  if (version != kCheckpointVersion) throw FormatError("unsupported checkpoint version " + std::to_string(version));
  const int d = r.get<std::uint8_t>();
  if (d < 1 || d > kMaxDim) throw FormatError("checkpoint dimension out of range");
  std::vector<int> n(d);
  for (int j = 0; j < d; ++j) {
    const auto nj = r.get<std::uint64_t>();
    if (nj > (1u << 30)) throw FormatError("checkpoint extent out of range");
    n[j] = static_cast<int>(nj);
  }
  std::vector<double> box(d);
  for (int j = 0; j < d; ++j) box[j] = r.get<double>();
  Checkpoint cp;
  cp.meta.kappa = r.get<double>();
  cp.meta.omega = r.get<double>();
  cp.meta.c.resize(d);
  for (int j = 0; j < d; ++j) cp.meta.c[j] = r.get<double>();
  const auto gauge = r.get<std::uint8_t>();
  if (gauge > 1) throw FormatError("unknown gauge tag");

  GridPtr grid;
  try {
    grid = make_grid(d, n, box, max_points);
  } catch (const ValidationError& e) {
    throw FormatError(std::string("checkpoint grid invalid: ") + e.what());
  }
  const std::size_t bytes = grid->size() * sizeof(cplx);
  if (r.remaining() != 2 * bytes) throw FormatError("checkpoint size mismatch");
  Buffer u(grid->size()), v(grid->size());
  r.take(u.data(), bytes);
  r.take(v.data(), bytes);
  cp.pair = FieldPair(ComplexField(grid, std::move(u)), ComplexField(grid, std::move(v)), static_cast<Gauge>(gauge));
  return cp;
}

}  // namespace qnls
