#include "snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "errors.hpp"

namespace gch {

namespace {

constexpr char kMagic[4] = {'G', 'C', 'H', 'S'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 8 + 8 + 4 + 4 + 8;

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void put_f64(std::vector<unsigned char>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

struct Reader {
  const unsigned char* p;
  std::size_t left;
  const std::string& path;

  void need(std::size_t n) const {
    if (left < n) throw io_failure("snapshot truncated: " + path);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    p += 4;
    left -= 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    p += 8;
    left -= 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
};

}  // namespace

void write_snapshot(const SolverState& st, const ModelParams& mp,
                    const std::string& path) {
  mp.validate();
  const int n = st.u.grid.n();

  std::vector<unsigned char> bytes;
  bytes.reserve(kHeaderBytes + 8 * static_cast<std::size_t>(n));
  bytes.insert(bytes.end(), kMagic, kMagic + 4);
  put_u32(bytes, kSnapshotVersion);
  put_u64(bytes, static_cast<std::uint64_t>(n));
  put_f64(bytes, st.u.grid.length());
  put_f64(bytes, st.t);
  put_u32(bytes, static_cast<std::uint32_t>(mp.k));
  put_u32(bytes, static_cast<std::uint32_t>(mp.p));
  put_f64(bytes, mp.b);
  for (double v : st.u.values) put_f64(bytes, v);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_failure("cannot open snapshot output: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw io_failure("failed writing snapshot: " + path);
}

SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_failure("cannot open snapshot: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw io_failure("failed reading snapshot: " + path);

  Reader r{bytes.data(), bytes.size(), path};
  r.need(4);
  if (std::memcmp(r.p, kMagic, 4) != 0) {
    throw io_failure("not a snapshot (bad magic): " + path);
  }
  r.p += 4;
  r.left -= 4;

  std::uint32_t version = r.u32();
  if (version != kSnapshotVersion) {
    throw io_failure("snapshot version mismatch (got " +
                     std::to_string(version) + ", expected " +
                     std::to_string(kSnapshotVersion) + "): " + path);
  }

  std::uint64_t n64 = r.u64();
  double length = r.f64();
  double t = r.f64();
  std::uint32_t k = r.u32();
  std::uint32_t p = r.u32();
  double b = r.f64();

  if (n64 == 0 || n64 > (1u << 24)) {
    throw io_failure("snapshot header has implausible grid size: " + path);
  }
  const int n = static_cast<int>(n64);
  if (r.left != 8 * static_cast<std::size_t>(n)) {
    throw io_failure(r.left < 8 * static_cast<std::size_t>(n)
                         ? "snapshot truncated: " + path
                         : "snapshot has trailing bytes: " + path);
  }
  if (k < 1 || p < 1 || !std::isfinite(b)) {
    throw io_failure("snapshot header has invalid model parameters: " + path);
  }

  try {
    Field u{GridSpec(n, length), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) u.values[i] = r.f64();
    return SnapshotData{SolverState{t, std::move(u), 0, false, {}},
                        static_cast<int>(k),
                        static_cast<int>(p), b};
  } catch (const invalid_input& e) {
    throw io_failure(std::string("snapshot grid invalid (") + e.what() +
                     "): " + path);
  }
}

}  // namespace gch
