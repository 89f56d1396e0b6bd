#include <cctype>
#include <fstream>
#include <sstream>

#include "tvb/algebra.hpp"

namespace tvb {

namespace {

struct Token {
  std::string text;
  int line;
  int col;
};

std::vector<std::vector<Token>> tokenize_rows(std::string_view text) {
  std::vector<std::vector<Token>> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    std::vector<Token> row;
    int col = 0;
    std::string cur;
    int cur_col = 0;
    auto flush = [&] {
      if (!cur.empty()) {
        row.push_back({cur, line_no, cur_col});
        cur.clear();
      }
    };
    for (char c : line) {
      ++col;
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c)) || c == '|' || c == '[' || c == ']' || c == ',') {
        flush();
        continue;
      }
      if (cur.empty()) cur_col = col;
      cur.push_back(c);
    }
    flush();
    if (!row.empty()) rows.push_back(std::move(row));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return rows;
}

int parse_cell(const Token& tok, int order, bool allow_undefined) {
  if (tok.text == "-") {
    if (!allow_undefined)
      throw ParseError("SYNTAX", tok.line, tok.col, "'-' is only valid in the product block");
    return kUndefined;
  }
  for (char c : tok.text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("SYNTAX", tok.line, tok.col, "expected an element value, got '" + tok.text + "'");
  const long v = std::stol(tok.text);
  if (v < 1 || v > order)
    throw ParseError("SYNTAX", tok.line, tok.col,
                     "element " + tok.text + " out of range 1.." + std::to_string(order));
  return static_cast<int>(v);
}

}  // namespace

TwistedVirtualBikeigebra parse_structure(std::string_view text) {
  const auto rows = tokenize_rows(text);
  if (rows.empty()) throw ParseError("SYNTAX", 1, 1, "empty structure file");
  const std::size_t fields = rows.front().size();
  if (fields < 5 || (fields - 1) % 4 != 0)
    throw ParseError("SYNTAX", rows.front().front().line, rows.front().front().col,
                     "each row needs 4n+1 fields, got " + std::to_string(fields));
  const int n = static_cast<int>((fields - 1) / 4);
  if (rows.size() != static_cast<std::size_t>(n))
    throw ParseError("SYNTAX", rows.back().front().line, rows.back().front().col,
                     "expected " + std::to_string(n) + " rows for order " + std::to_string(n) +
                         ", got " + std::to_string(rows.size()));

  OperationTable under = OperationTable::trivial(n);
  OperationTable over = OperationTable::trivial(n);
  OperationTable virt = OperationTable::trivial(n);
  PartialProduct product = PartialProduct::empty(n);
  std::vector<int> twist_image(static_cast<std::size_t>(n));

  for (int x = 1; x <= n; ++x) {
    const auto& row = rows[static_cast<std::size_t>(x - 1)];
    if (row.size() != fields)
      throw ParseError("SYNTAX", row.front().line, row.front().col,
                       "row has " + std::to_string(row.size()) + " fields, expected " +
                           std::to_string(fields));
    for (int y = 1; y <= n; ++y) {
      under.set(x, y, parse_cell(row[static_cast<std::size_t>(y - 1)], n, false));
      over.set(x, y, parse_cell(row[static_cast<std::size_t>(n + y - 1)], n, false));
      virt.set(x, y, parse_cell(row[static_cast<std::size_t>(2 * n + y - 1)], n, false));
      product.set(x, y, parse_cell(row[static_cast<std::size_t>(3 * n + y - 1)], n, true));
    }
    twist_image[static_cast<std::size_t>(x - 1)] = parse_cell(row[static_cast<std::size_t>(4 * n)], n, false);
  }

  try {
    return TwistedVirtualBikeigebra::make(std::move(under), std::move(over), std::move(virt),
                                          std::move(product), TwistMap(std::move(twist_image)));
  } catch (const std::invalid_argument& e) {
    throw ParseError("INVOLUTION", rows.front().front().line, rows.front().front().col, e.what());
  }
}

TwistedVirtualBikeigebra load_structure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

std::string serialize_structure(const TwistedVirtualBikeigebra& X) {
  const int n = X.order();
  std::ostringstream out;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) out << X.under.at(x, y) << ' ';
    out << "| ";
    for (int y = 1; y <= n; ++y) out << X.over.at(x, y) << ' ';
    out << "| ";
    for (int y = 1; y <= n; ++y) out << X.virt.at(x, y) << ' ';
    out << "| ";
    for (int y = 1; y <= n; ++y) {
      const int v = X.product.at(x, y);
      if (v == kUndefined)
        out << "- ";
      else
        out << v << ' ';
    }
    out << "| " << X.twist.at(x) << '\n';
  }
  return out.str();
}

}  // namespace tvb
