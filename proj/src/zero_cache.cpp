#include "lowzero/zero_cache.hpp"

#include <atomic>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lowzero/errors.hpp"

namespace lowzero {

namespace fs = std::filesystem;

namespace {

static_assert(std::endian::native == std::endian::little, "cache records assume a little-endian host");

template <class T>
void put(std::vector<std::uint8_t>& out, T v) {
  std::uint8_t buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

template <class T>
T get(std::span<const std::uint8_t> in, std::size_t off) {
  T v;
  std::memcpy(&v, in.data() + off, sizeof(T));
  return v;
}

std::string height_label(double T) {
  std::ostringstream os;
  os.precision(17);
  os << T;
  return os.str();
}

}  // namespace

std::vector<std::uint8_t> encode_zero_record(const ZeroList& z, std::uint32_t version) {
  std::vector<std::uint8_t> out;
  out.reserve(kCacheHeaderSize + 8 * z.gammas.size());
  for (char c : {'L', 'Q', 'Z', '0'}) out.push_back(static_cast<std::uint8_t>(c));
  put<std::uint32_t>(out, version);
  put<std::uint64_t>(out, z.p);
  put<double>(out, z.T);
  put<std::uint64_t>(out, z.gammas.size());
  out.push_back(z.central_flag ? 1 : 0);
  out.resize(out.size() + 7, 0);
  for (double g : z.gammas) put<double>(out, g);
  return out;
}

ZeroList decode_zero_record(std::span<const std::uint8_t> bytes, std::uint32_t* version) {
  if (bytes.size() < kCacheHeaderSize || std::memcmp(bytes.data(), "LQZ0", 4) != 0)
    throw std::runtime_error("zero record: bad magic or truncated header");
  ZeroList z;
  const auto ver = get<std::uint32_t>(bytes, 4);
  z.p = get<std::uint64_t>(bytes, 8);
  z.T = get<double>(bytes, 16);
  const auto count = get<std::uint64_t>(bytes, 24);
  z.central_flag = bytes[32] != 0;
  if (bytes.size() != kCacheHeaderSize + 8 * count) throw std::runtime_error("zero record: length mismatch");
  z.gammas.resize(count);
  for (std::size_t i = 0; i < count; ++i) z.gammas[i] = get<double>(bytes, kCacheHeaderSize + 8 * i);
  z.certified = true;
  z.ap_count = static_cast<long>(count);
  if (version) *version = ver;
  return z;
}

ZeroCache::ZeroCache(fs::path root, std::uint32_t version) : root_(std::move(root)), version_(version) {}

fs::path ZeroCache::file_for(std::uint64_t p, double T) const {
  return root_ / ("v" + std::to_string(version_)) / ("T" + height_label(T)) / (std::to_string(p) + ".lqz");
}

bool ZeroCache::contains(std::uint64_t p, double T) const { return fs::exists(file_for(p, T)); }

std::optional<ZeroList> ZeroCache::load(std::uint64_t p, double T) const {
  std::ifstream in(file_for(p, T), std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::uint32_t ver = 0;
  ZeroList z;
  try {
    z = decode_zero_record(bytes, &ver);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
  if (ver != version_ || z.p != p || z.T != T) return std::nullopt;
  return z;
}

void ZeroCache::store(const ZeroList& z) const {
  if (!z.certified) throw UncertifiedZerosError(z.p);
  const fs::path target = file_for(z.p, z.T);
  fs::create_directories(target.parent_path());
  static std::atomic<std::uint64_t> serial{0};
  std::ostringstream tag;
  tag << ".tmp." << std::this_thread::get_id() << "." << serial.fetch_add(1);
  const fs::path tmp = target.string() + tag.str();
  const auto bytes = encode_zero_record(z, version_);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<ZeroList> ZeroCache::load_all(std::span<const std::uint64_t> primes, double T) const {
  std::vector<ZeroList> out;
  out.reserve(primes.size());
  std::vector<std::uint64_t> missing;
  for (auto p : primes) {
    auto z = load(p, T);
    if (z)
      out.push_back(std::move(*z));
    else
      missing.push_back(p);
  }
  if (!missing.empty()) throw MissingCacheError(std::move(missing));
  return out;
}

PopulateStats ZeroCache::populate(std::span<const std::uint64_t> primes, double T, unsigned threads,
                                  const FamilyOptions& opt) const {
  PopulateStats st;
  std::vector<std::uint64_t> todo;
  for (auto p : primes) {
    if (load(p, T))
      ++st.hits;
    else
      todo.push_back(p);
  }
  if (todo.empty()) return st;
  auto lists = find_zeros_family(todo, T, threads, opt);
  for (const auto& z : lists) {
    if (z.certified) {
      store(z);
      ++st.computed;
    } else {
      st.failures.push_back(z.p);
    }
  }
  return st;
}

}  // namespace lowzero
