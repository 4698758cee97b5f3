#include "gjw/graph_expr.hpp"

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "gjw/errors.hpp"

namespace gjw {

namespace {

class GraphExprParser {
 public:
  explicit GraphExprParser(std::string_view text) : text_(text) {}

  Graph parse() {
    Graph g = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
    return g;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected a graph family or operation name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected a non-negative integer");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  std::vector<std::size_t> numbers(std::size_t count) {
    std::vector<std::size_t> out;
    expect('(');
    for (std::size_t k = 0; k < count; ++k) {
      if (k > 0) expect(',');
      out.push_back(number());
    }
    expect(')');
    return out;
  }

  Graph term() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string name = identifier();

    static const std::map<std::string, ProductKind> products = {
        {"cartesian", ProductKind::Cartesian}, {"tensor", ProductKind::Tensor},
        {"strong", ProductKind::Strong},       {"lexicographic", ProductKind::Lexicographic},
        {"corona", ProductKind::Corona}};
    if (auto it = products.find(name); it != products.end()) {
      expect('(');
      Graph a = term();
      expect(',');
      Graph b = term();
      expect(')');
      return product(a, b, it->second);
    }
    if (name == "join" || name == "union") {
      expect('(');
      Graph a = term();
      expect(',');
      Graph b = term();
      expect(')');
      return name == "join" ? join(a, b) : disjoint_union(a, b);
    }
    if (name == "complement") {
      expect('(');
      Graph a = term();
      expect(')');
      return complement(a);
    }

    static const std::map<std::string, FamilyKind> single = {
        {"empty", FamilyKind::Empty},   {"complete", FamilyKind::Complete},
        {"path", FamilyKind::Path},     {"cycle", FamilyKind::Cycle},
        {"star", FamilyKind::Star},     {"wheel", FamilyKind::Wheel},
        {"ladder", FamilyKind::Ladder}, {"prism", FamilyKind::Prism},
        {"creutz", FamilyKind::CreutzLadder}, {"hypercube", FamilyKind::Hypercube}};
    if (auto it = single.find(name); it != single.end()) {
      const auto args = numbers(1);
      return make_family(GraphFamily{it->second, args[0]});
    }
    if (name == "circulant" || name == "banded") {
      const auto args = numbers(2);
      return make_family(GraphFamily::circulant(args[0], args[1], name == "banded"));
    }
    if (name == "bipartite") {
      const auto args = numbers(2);
      return make_family(GraphFamily::complete_bipartite(args[0], args[1]));
    }
    throw UnknownIdentifierError(at, name);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Graph parse_graph_expression(std::string_view text) { return GraphExprParser(text).parse(); }

}  // namespace gjw
