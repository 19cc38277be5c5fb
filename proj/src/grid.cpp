#include "topo/grid.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "topo/error.hpp"

namespace topo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::DisconnectedCss: return "DisconnectedCss";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NotAnnular: return "NotAnnular";
    case ErrorCode::TooManySubsystems: return "TooManySubsystems";
    case ErrorCode::TooFewSubsystems: return "TooFewSubsystems";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::TooManyQubits: return "TooManyQubits";
    case ErrorCode::SingularK: return "SingularK";
    case ErrorCode::MismatchBetweenPaths: return "MismatchBetweenPaths";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::LatticeTooSmall: return "LatticeTooSmall";
    case ErrorCode::WindingRegion: return "WindingRegion";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Region

Region::Region(int width, int height) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::ValidationError, "negative region dimensions");
  }
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  words_.assign((n + 63) / 64, 0);
}

Region Region::from_cells(int width, int height, std::span<const Cell> cells) {
  Region r(width, height);
  for (const Cell& c : cells) r.insert(c.x, c.y);
  return r;
}

bool Region::contains(int x, int y) const noexcept {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return false;
  const std::size_t i = index(x, y);
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void Region::insert(int x, int y) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    throw Error(ErrorCode::ValidationError, "cell (" + std::to_string(x) + ", " +
                                                std::to_string(y) + ") out of bounds");
  }
  const std::size_t i = index(x, y);
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void Region::erase(int x, int y) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  const std::size_t i = index(x, y);
  words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::size_t Region::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Region::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::vector<Cell> Region::cells() const {
  std::vector<Cell> out;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (contains(x, y)) out.push_back({x, y});
  return out;
}

void Region::check_same_shape(const Region& other) const {
  if (width_ != other.width_ || height_ != other.height_) {
    throw Error(ErrorCode::ValidationError, "region shapes differ");
  }
}

Region& Region::operator|=(const Region& other) {
  check_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Region& Region::operator&=(const Region& other) {
  check_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Region Region::complement() const {
  Region r(width_, height_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
  const std::size_t n = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  if (n % 64 != 0 && !r.words_.empty()) r.words_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
  return r;
}

// ---------------------------------------------------------------------------
// GridCss

namespace {

int label_at(std::span<const int> labels, int width, int height, int x, int y) {
  if (x < 0 || y < 0 || x >= width || y >= height) return kOutside;
  return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)];
}

// A diagonal pair (p, q) is pinched against the anti-diagonal pair (r, s) if
// some union holds p and q but neither r nor s.
bool pinched(int p, int q, int r, int s) {
  if (p == kOutside || q == kOutside) return false;
  return r != p && r != q && s != p && s != q;
}

}  // namespace

bool has_pinch_at(std::span<const int> labels, int width, int height, int wx, int wy) {
  const int a = label_at(labels, width, height, wx, wy);
  const int b = label_at(labels, width, height, wx + 1, wy);
  const int c = label_at(labels, width, height, wx, wy + 1);
  const int d = label_at(labels, width, height, wx + 1, wy + 1);
  return pinched(a, d, b, c) || pinched(b, c, a, d);
}

GridCss GridCss::from_labels(int width, int height, std::vector<int> labels, std::string name,
                             GridLimits limits) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::ValidationError, "grid dimensions must be positive");
  }
  const std::size_t cells = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (cells > limits.max_cells) {
    throw Error(ErrorCode::ValidationError, "grid has " + std::to_string(cells) +
                                                " cells, cap is " +
                                                std::to_string(limits.max_cells));
  }
  if (labels.size() != cells) {
    throw Error(ErrorCode::ValidationError, "expected " + std::to_string(cells) +
                                                " labels, got " + std::to_string(labels.size()));
  }
  int max_label = kOutside;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < kOutside) {
      throw Error(ErrorCode::ValidationError,
                  "label " + std::to_string(labels[i]) + " at index " + std::to_string(i));
    }
    max_label = std::max(max_label, labels[i]);
  }
  const int n = max_label + 1;
  if (n > 64) throw Error(ErrorCode::ValidationError, "more than 64 subsystems");

  GridCss css;
  css.width_ = width;
  css.height_ = height;
  css.n_ = n;
  css.name_ = std::move(name);
  css.subsystems_.assign(static_cast<std::size_t>(n), Region(width, height));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int l = labels[static_cast<std::size_t>(y) * width + x];
      if (l != kOutside) css.subsystems_[static_cast<std::size_t>(l)].insert(x, y);
    }
  }
  for (int id = 0; id < n; ++id) {
    if (css.subsystems_[static_cast<std::size_t>(id)].empty()) {
      throw Error(ErrorCode::ValidationError,
                  "subsystem " + std::to_string(id) + " has no cells (ids must be contiguous)");
    }
  }
  for (int wy = -1; wy < height; ++wy) {
    for (int wx = -1; wx < width; ++wx) {
      if (has_pinch_at(labels, width, height, wx, wy)) {
        throw Error(ErrorCode::ValidationError, "diagonal pinch in the 2x2 window at (" +
                                                    std::to_string(wx) + ", " +
                                                    std::to_string(wy) + ")");
      }
    }
  }
  css.labels_ = std::move(labels);
  return css;
}

int GridCss::label(int x, int y) const noexcept {
  return label_at(labels_, width_, height_, x, y);
}

const Region& GridCss::subsystem(int id) const {
  if (id < 0 || id >= n_) {
    throw Error(ErrorCode::ValidationError, "no subsystem " + std::to_string(id));
  }
  return subsystems_[static_cast<std::size_t>(id)];
}

GridCss GridCss::restricted_to(std::span<const int> ids) const {
  std::vector<int> remap(static_cast<std::size_t>(n_), kOutside);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const int id = ids[k];
    if (id < 0 || id >= n_ || remap[static_cast<std::size_t>(id)] != kOutside) {
      throw Error(ErrorCode::ValidationError, "bad or repeated subsystem id in restriction");
    }
    remap[static_cast<std::size_t>(id)] = static_cast<int>(k);
  }
  std::vector<int> labels(labels_.size(), kOutside);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != kOutside) labels[i] = remap[static_cast<std::size_t>(labels_[i])];
  }
  return from_labels(width_, height_, std::move(labels), name_);
}

// ---------------------------------------------------------------------------
// ASCII format

char label_char(int id) {
  if (id == kOutside) return '.';
  if (id >= 0 && id < 26) return static_cast<char>('A' + id);
  if (id >= 26 && id < 52) return static_cast<char>('a' + (id - 26));
  throw Error(ErrorCode::ValidationError, "id " + std::to_string(id) + " has no ASCII label");
}

GridCss parse_ascii_grid(std::string_view text, std::string name, GridLimits limits) {
  std::vector<std::string> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!rows.empty() && line.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": length " +
                                             std::to_string(line.size()) + ", expected " +
                                             std::to_string(rows.front().size()));
    }
    for (std::size_t col = 0; col < line.size(); ++col) {
      const char ch = line[col];
      const bool ok = ch == '.' || (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z');
      if (!ok) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ", column " +
                                               std::to_string(col + 1) + ": unexpected '" +
                                               std::string(1, ch) + "'");
      }
    }
    rows.push_back(std::move(line));
    if (end == text.size()) break;
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "grid has no rows");

  const int width = static_cast<int>(rows.front().size());
  const int height = static_cast<int>(rows.size());
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(width) * height);
  for (const auto& row : rows) {
    for (char ch : row) {
      if (ch == '.') labels.push_back(kOutside);
      else if (ch >= 'A' && ch <= 'Z') labels.push_back(ch - 'A');
      else labels.push_back(26 + (ch - 'a'));
    }
  }
  return GridCss::from_labels(width, height, std::move(labels), std::move(name), limits);
}

std::string to_ascii(const GridCss& css) {
  std::ostringstream out;
  for (int y = 0; y < css.height(); ++y) {
    for (int x = 0; x < css.width(); ++x) out << label_char(css.label(x, y));
    out << '\n';
  }
  return out.str();
}

}  // namespace topo
