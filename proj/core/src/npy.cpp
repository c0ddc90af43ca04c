#include "tsloc/npy.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "tsloc/errors.hpp"

namespace tsloc {
namespace {

static_assert(std::endian::native == std::endian::little,
              "the NPY codec assumes a little-endian host");

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicLen = 6;
constexpr std::size_t kAlign = 64;

std::size_t element_count(std::span<const std::size_t> shape) {
  std::size_t n = 1;
  for (const auto d : shape) n *= d;
  return n;
}

std::string shape_tuple(std::span<const std::size_t> shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(shape[i]);
  }
  if (shape.size() == 1) out += ",";
  return out + ")";
}

template <typename T>
std::string encode(std::span<const T> values, std::span<const std::size_t> shape,
                   std::string_view descr) {
  if (values.size() != element_count(shape)) {
    throw IoError("value count " + std::to_string(values.size()) +
                  " does not match shape " + shape_tuple(shape));
  }
  std::string header = "{'descr': '" + std::string(descr) +
                       "', 'fortran_order': False, 'shape': " +
                       shape_tuple(shape) + ", }";
  const std::size_t unpadded = kMagicLen + 2 + 2 + header.size() + 1;
  const std::size_t padding = (kAlign - unpadded % kAlign) % kAlign;
  header.append(padding, ' ');
  header.push_back('\n');
  if (header.size() > 0xffff) throw IoError("NPY header too long for version 1.0");

  std::string out(kMagic, kMagicLen);
  out.push_back('\x01');
  out.push_back('\x00');
  out.push_back(static_cast<char>(header.size() & 0xff));
  out.push_back(static_cast<char>((header.size() >> 8) & 0xff));
  out += header;
  const auto* bytes = reinterpret_cast<const char*>(values.data());
  out.append(bytes, values.size() * sizeof(T));
  return out;
}

// --- header dict parsing ---------------------------------------------------

struct HeaderValue {
  std::variant<std::string, bool, std::vector<std::size_t>> v;
};

class HeaderParser {
 public:
  explicit HeaderParser(std::string_view text) : s_(text) {}

  std::map<std::string, HeaderValue> parse() {
    std::map<std::string, HeaderValue> out;
    expect('{');
    skip_ws();
    while (peek() != '}') {
      auto key = string_literal();
      expect(':');
      skip_ws();
      out[key] = value();
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
      } else if (peek() != '}') {
        fail("expected ',' or '}'");
      }
    }
    ++pos_;
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after header dict");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw FormatError("malformed NPY header: " + msg + " at offset " +
                      std::to_string(pos_));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string string_literal() {
    skip_ws();
    const char quote = peek();
    if (quote != '\'' && quote != '"') fail("expected a string");
    const auto end = s_.find(quote, pos_ + 1);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string out(s_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return out;
  }

  HeaderValue value() {
    const char c = peek();
    if (c == '\'' || c == '"') return {string_literal()};
    if (s_.substr(pos_, 4) == "True") {
      pos_ += 4;
      return {true};
    }
    if (s_.substr(pos_, 5) == "False") {
      pos_ += 5;
      return {false};
    }
    if (c == '(') return {tuple()};
    fail("unsupported value");
  }

  std::vector<std::size_t> tuple() {
    std::vector<std::size_t> out;
    expect('(');
    skip_ws();
    while (peek() != ')') {
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
      std::size_t v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        v = v * 10 + static_cast<std::size_t>(peek() - '0');
        ++pos_;
      }
      // Python longs may carry an 'L' suffix in old files.
      if (peek() == 'L') ++pos_;
      out.push_back(v);
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
      } else if (peek() != ')') {
        fail("expected ',' or ')'");
      }
    }
    ++pos_;
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct DescrInfo {
  DType dtype;
  std::size_t item_size;
  bool big_endian;
};

DescrInfo parse_descr(const std::string& descr) {
  if (descr.size() < 3) throw FormatError("unsupported dtype '" + descr + "'");
  const char order = descr[0];
  const std::string code = descr.substr(1);
  bool big = false;
  if (order == '>') {
    big = true;
  } else if (order != '<' && order != '|' && order != '=') {
    throw FormatError("unsupported dtype '" + descr + "'");
  }
  if (code == "f8") return {DType::kF8, 8, big};
  if (code == "f4") return {DType::kF4, 4, big};
  if (code == "i8") return {DType::kI8, 8, big};
  if (code == "i4") return {DType::kI4, 4, big};
  if (code == "u1") return {DType::kU1, 1, false};
  if (code == "b1") return {DType::kB1, 1, false};
  throw FormatError("unsupported dtype '" + descr + "'");
}

template <typename T>
T load_scalar(const char* p, bool big_endian) {
  std::array<char, sizeof(T)> raw;
  std::memcpy(raw.data(), p, sizeof(T));
  if (big_endian) std::reverse(raw.begin(), raw.end());
  return std::bit_cast<T>(raw);
}

// Index of C-order flat position `c` in a Fortran-order buffer.
std::vector<std::size_t> fortran_to_c_order(std::span<const std::size_t> shape) {
  const std::size_t n = element_count(shape);
  std::vector<std::size_t> src(n);
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t offset = 0;
    std::size_t stride = 1;
    for (std::size_t d = 0; d < shape.size(); ++d) {
      offset += idx[d] * stride;
      stride *= shape[d];
    }
    src[c] = offset;
    for (std::size_t d = shape.size(); d-- > 0;) {
      if (++idx[d] < shape[d]) break;
      idx[d] = 0;
    }
  }
  return src;
}

}  // namespace

std::string_view to_string(DType dtype) {
  switch (dtype) {
    case DType::kF8: return "f8";
    case DType::kF4: return "f4";
    case DType::kI8: return "i8";
    case DType::kI4: return "i4";
    case DType::kU1: return "u1";
    case DType::kB1: return "b1";
  }
  return "?";
}

std::size_t NpyArray::size() const {
  return std::visit([](const auto& v) { return v.size(); }, data);
}

std::vector<double> NpyArray::to_f8() const {
  return std::visit(
      [](const auto& v) { return std::vector<double>(v.begin(), v.end()); }, data);
}

std::vector<std::int64_t> NpyArray::to_i8() const {
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&data)) return *v;
  if (const auto* v = std::get_if<std::vector<std::uint8_t>>(&data)) {
    return {v->begin(), v->end()};
  }
  throw FormatError("expected an integer array, got dtype " +
                    std::string(to_string(dtype)));
}

std::vector<std::uint8_t> NpyArray::to_u1() const {
  if (const auto* v = std::get_if<std::vector<std::uint8_t>>(&data)) return *v;
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&data)) {
    std::vector<std::uint8_t> out;
    out.reserve(v->size());
    for (const auto x : *v) {
      if (x < 0 || x > 255) throw FormatError("value does not fit in u1");
      out.push_back(static_cast<std::uint8_t>(x));
    }
    return out;
  }
  throw FormatError("expected a u1 array, got dtype " + std::string(to_string(dtype)));
}

std::string encode_npy(std::span<const double> values,
                       std::span<const std::size_t> shape) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw IoError("NonFinite: f8 value at flat index " + std::to_string(i) +
                    " is not finite");
    }
  }
  return encode(values, shape, "<f8");
}

std::string encode_npy(std::span<const std::int64_t> values,
                       std::span<const std::size_t> shape) {
  return encode(values, shape, "<i8");
}

std::string encode_npy(std::span<const std::uint8_t> values,
                       std::span<const std::size_t> shape) {
  return encode(values, shape, "|u1");
}

NpyArray decode_npy(std::string_view bytes) {
  if (bytes.size() < kMagicLen + 2 || bytes.substr(0, kMagicLen) != std::string_view(kMagic, kMagicLen)) {
    throw FormatError("not an NPY file (bad magic)");
  }
  const auto major = static_cast<unsigned char>(bytes[6]);
  const auto minor = static_cast<unsigned char>(bytes[7]);
  std::size_t header_len = 0;
  std::size_t pos = 8;
  if (major == 1 && minor == 0) {
    if (bytes.size() < 10) throw FormatError("truncated NPY preamble");
    header_len = static_cast<unsigned char>(bytes[8]) |
                 (static_cast<std::size_t>(static_cast<unsigned char>(bytes[9])) << 8);
    pos = 10;
  } else if ((major == 2 || major == 3) && minor == 0) {
    if (bytes.size() < 12) throw FormatError("truncated NPY preamble");
    for (int i = 3; i >= 0; --i) {
      header_len = (header_len << 8) | static_cast<unsigned char>(bytes[8 + i]);
    }
    pos = 12;
  } else {
    throw FormatError("unsupported NPY version " + std::to_string(major) + "." +
                      std::to_string(minor));
  }
  if (bytes.size() < pos + header_len) throw FormatError("truncated NPY header");
  const auto fields = HeaderParser(bytes.substr(pos, header_len)).parse();
  pos += header_len;

  auto field = [&](const char* name) -> const HeaderValue& {
    const auto it = fields.find(name);
    if (it == fields.end()) {
      throw FormatError(std::string("NPY header lacks '") + name + "'");
    }
    return it->second;
  };
  const auto* descr = std::get_if<std::string>(&field("descr").v);
  const auto* fortran = std::get_if<bool>(&field("fortran_order").v);
  const auto* shape = std::get_if<std::vector<std::size_t>>(&field("shape").v);
  if (!descr || !fortran || !shape) throw FormatError("NPY header has mistyped fields");

  const auto info = parse_descr(*descr);
  NpyArray out;
  out.shape = *shape;
  out.dtype = info.dtype;
  const std::size_t n = element_count(out.shape);
  if (bytes.size() - pos < n * info.item_size) {
    throw FormatError("NPY data section is truncated: need " +
                      std::to_string(n * info.item_size) + " bytes, have " +
                      std::to_string(bytes.size() - pos));
  }
  const char* data = bytes.data() + pos;

  std::vector<std::size_t> order;
  if (*fortran && out.shape.size() > 1) order = fortran_to_c_order(out.shape);
  auto src = [&](std::size_t c) { return order.empty() ? c : order[c]; };

  auto fill = [&](auto& vec, auto load) {
    vec.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
      vec[c] = load(data + src(c) * info.item_size);
    }
  };

  switch (info.dtype) {
    case DType::kF8: {
      std::vector<double> v;
      fill(v, [&](const char* p) { return load_scalar<double>(p, info.big_endian); });
      out.data = std::move(v);
      break;
    }
    case DType::kF4: {
      std::vector<double> v;
      fill(v, [&](const char* p) {
        return static_cast<double>(load_scalar<float>(p, info.big_endian));
      });
      out.data = std::move(v);
      break;
    }
    case DType::kI8: {
      std::vector<std::int64_t> v;
      fill(v, [&](const char* p) { return load_scalar<std::int64_t>(p, info.big_endian); });
      out.data = std::move(v);
      break;
    }
    case DType::kI4: {
      std::vector<std::int64_t> v;
      fill(v, [&](const char* p) {
        return static_cast<std::int64_t>(load_scalar<std::int32_t>(p, info.big_endian));
      });
      out.data = std::move(v);
      break;
    }
    case DType::kU1:
    case DType::kB1: {
      std::vector<std::uint8_t> v;
      fill(v, [](const char* p) { return static_cast<std::uint8_t>(*p); });
      out.data = std::move(v);
      break;
    }
  }
  return out;
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return buf.str();
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_npy(const std::filesystem::path& path, std::span<const double> values,
               std::span<const std::size_t> shape) {
  write_file_bytes(path, encode_npy(values, shape));
}

void write_npy(const std::filesystem::path& path,
               std::span<const std::int64_t> values,
               std::span<const std::size_t> shape) {
  write_file_bytes(path, encode_npy(values, shape));
}

void write_npy(const std::filesystem::path& path,
               std::span<const std::uint8_t> values,
               std::span<const std::size_t> shape) {
  write_file_bytes(path, encode_npy(values, shape));
}

NpyArray read_npy(const std::filesystem::path& path) {
  return decode_npy(read_file_bytes(path));
}

}  // namespace tsloc
