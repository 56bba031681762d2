#include "oog/plant_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "oog/error.hpp"

namespace oog {
namespace {

constexpr std::array<const char*, 6> kSections{"A", "B", "Cp", "Dp", "Cr", "Dr"};

struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) tokens.push_back({word, number});
  }
  return tokens;
}

[[noreturn]] void fail(const Token& at, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(at.line) + ": " + what);
}

template <typename T>
T parse_number(const Token& tok) {
  T value{};
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail(tok, "expected a number, got '" + tok.text + "'");
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return {buf.data(), ptr};
}

TwoOutputPlant read_plant(std::istream& in) {
  const std::vector<Token> tokens = tokenize(in);
  std::map<std::string, Matrix> blocks;

  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& name = tokens[i++];
    if (std::find(kSections.begin(), kSections.end(), name.text) == kSections.end()) {
      fail(name, "unknown section '" + name.text + "'");
    }
    if (blocks.count(name.text)) fail(name, "duplicate section '" + name.text + "'");
    if (i + 2 > tokens.size()) fail(name, "section '" + name.text + "' lacks its dimensions");
    const long rows = parse_number<long>(tokens[i]);
    const long cols = parse_number<long>(tokens[i + 1]);
    if (rows < 0 || cols < 0) fail(tokens[i], "negative dimension");
    i += 2;

    Matrix M(rows, cols);
    for (long r = 0; r < rows; ++r) {
      for (long c = 0; c < cols; ++c) {
        if (i >= tokens.size()) fail(tokens.back(), "section '" + name.text + "' is truncated");
        const double v = parse_number<double>(tokens[i]);
        if (!std::isfinite(v)) fail(tokens[i], "non-finite entry");
        M(r, c) = v;
        ++i;
      }
    }
    blocks.emplace(name.text, std::move(M));
  }

  for (const char* required : {"A", "B", "Cp", "Cr"}) {
    if (!blocks.count(required)) {
      throw Error(ErrorCode::ParseError, std::string("missing section '") + required + "'");
    }
  }
  const auto m = blocks["B"].cols();
  if (!blocks.count("Dp")) blocks["Dp"] = Matrix::Zero(blocks["Cp"].rows(), m);
  if (!blocks.count("Dr")) blocks["Dr"] = Matrix::Zero(blocks["Cr"].rows(), m);

  try {
    return {blocks["A"], blocks["B"], blocks["Cp"], blocks["Dp"], blocks["Cr"], blocks["Dr"]};
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

TwoOutputPlant read_plant_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read_plant(in);
}

void write_plant(std::ostream& out, const TwoOutputPlant& plant) {
  const std::array<const Matrix*, 6> blocks{&plant.A(),  &plant.B(),  &plant.Cp(),
                                            &plant.Dp(), &plant.Cr(), &plant.Dr()};
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Matrix& M = *blocks[k];
    out << kSections[k] << '\n' << M.rows() << ' ' << M.cols() << '\n';
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      for (Eigen::Index c = 0; c < M.cols(); ++c) {
        out << (c ? " " : "") << format_double(M(r, c));
      }
      out << '\n';
    }
  }
}

void write_plant_file(const std::filesystem::path& path, const TwoOutputPlant& plant) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  write_plant(out, plant);
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace oog
