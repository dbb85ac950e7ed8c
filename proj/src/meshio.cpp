#include "astk/meshio.hpp"

#include <fstream>
#include <sstream>

namespace astk {

namespace {

struct Token {
  enum Kind { Ident, Number, Colon, LBracket, RBracket, Comma, End } kind = End;
  std::string text;
  int line = 0, col = 0;
};

class Lexer {
 public:
  Lexer(std::istream& in, std::string name) : name_(std::move(name)) {
    std::ostringstream ss;
    ss << in.rdbuf();
    src_ = ss.str();
  }

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (c == ':') return take(Token::Colon);
    if (c == '[') return take(Token::LBracket);
    if (c == ']') return take(Token::RBracket);
    if (c == ',') return take(Token::Comma);
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      t.kind = Token::Number;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '-' ||
              src_[pos_] == '+' || src_[pos_] == '/'))
        t.text += advance();
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Ident;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_'))
        t.text += advance();
      return t;
    }
    error("unexpected character '" + std::string(1, c) + "'", t.line, t.col);
  }

  [[noreturn]] void error(const std::string& what, int line, int col) const {
    fail(ErrorCode::MalformedMeshFile,
         name_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  Token take(Token::Kind k) {
    Token t;
    t.kind = k;
    t.line = line_;
    t.col = col_;
    t.text = std::string(1, advance());
    return t;
  }
  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string name_, src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::istream& in, const std::string& name) : lex_(in, name) { bump(); }

  MeshFile parse() {
    bool saw_domain = false, saw_xi = false, saw_eta = false;
    MeshFile out;
    while (cur_.kind != Token::End) {
      Token key = expect(Token::Ident, "field name");
      expect(Token::Colon, "':'");
      if (key.text == "index_domain") {
        std::vector<Rational> v = rational_list();
        if (v.size() != 4) lex_.error("index_domain needs four integers", key.line, key.col);
        out.domain = IndexDomain(int_of(v[0], key), int_of(v[1], key), int_of(v[2], key),
                                 int_of(v[3], key));
        saw_domain = true;
      } else if (key.text == "h_lines" || key.text == "v_lines") {
        auto& dst = key.text == "h_lines" ? out.h_lines : out.v_lines;
        expect(Token::LBracket, "'['");
        while (cur_.kind != Token::RBracket) {
          std::vector<Rational> v = rational_list();
          if (v.size() != 3) lex_.error("line entries are [line, lo, hi]", key.line, key.col);
          dst.push_back({int_of(v[0], key), {int_of(v[1], key), int_of(v[2], key)}});
          if (cur_.kind == Token::Comma) bump();
        }
        bump();
      } else if (key.text == "knots_xi" || key.text == "knots_eta") {
        (key.text == "knots_xi" ? out.knots.xi : out.knots.eta) = rational_list();
        (key.text == "knots_xi" ? saw_xi : saw_eta) = true;
      } else {
        lex_.error("unknown field '" + key.text + "'", key.line, key.col);
      }
    }
    if (!saw_domain) lex_.error("missing index_domain", cur_.line, cur_.col);
    if (!saw_xi || !saw_eta) lex_.error("missing knot vectors", cur_.line, cur_.col);
    out.knots.m_lo = out.domain.m_lo;
    out.knots.n_lo = out.domain.n_lo;
    try {
      out.knots.validate(out.domain);
    } catch (const Error& e) {
      lex_.error(e.what(), cur_.line, cur_.col);
    }
    return out;
  }

 private:
  void bump() { cur_ = lex_.next(); }
  Token expect(Token::Kind k, const std::string& what) {
    if (cur_.kind != k) lex_.error("expected " + what, cur_.line, cur_.col);
    Token t = cur_;
    bump();
    return t;
  }
  int int_of(const Rational& q, const Token& at) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() != 1) lex_.error("expected an integer", at.line, at.col);
    return static_cast<int>(c.get_num().get_si());
  }
  std::vector<Rational> rational_list() {
    expect(Token::LBracket, "'['");
    std::vector<Rational> out;
    while (cur_.kind != Token::RBracket) {
      Token t = expect(Token::Number, "a number");
      try {
        out.push_back(rational_from_string(t.text));
      } catch (const std::exception& e) {
        lex_.error(e.what(), t.line, t.col);
      }
      if (cur_.kind == Token::Comma) bump();
    }
    bump();
    return out;
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

MeshFile parse_mesh_file(std::istream& in, const std::string& name) {
  return Parser(in, name).parse();
}

MeshFile load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MalformedMeshFile, path + ": cannot open");
  return parse_mesh_file(in, path);
}

std::string write_mesh_file(const MeshFile& mesh, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const std::string& c : comments) os << "# " << c << "\n";
  os << "index_domain: [" << mesh.domain.m_lo << ", " << mesh.domain.m_hi << ", "
     << mesh.domain.n_lo << ", " << mesh.domain.n_hi << "]\n";
  auto lines = [&](const char* key, const std::vector<LineSpan>& ls) {
    os << key << ": [";
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (i) os << ", ";
      os << "[" << ls[i].line << ", " << ls[i].span.lo << ", " << ls[i].span.hi << "]";
    }
    os << "]\n";
  };
  lines("h_lines", mesh.h_lines);
  lines("v_lines", mesh.v_lines);
  auto knots = [&](const char* key, const std::vector<Rational>& ks) {
    os << key << ": [";
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (i) os << ", ";
      os << to_string(ks[i]);
    }
    os << "]\n";
  };
  knots("knots_xi", mesh.knots.xi);
  knots("knots_eta", mesh.knots.eta);
  return os.str();
}

MeshFile mesh_file_from(const TMesh& mesh, const GlobalKnots& knots) {
  MeshFile f;
  f.domain = mesh.domain();
  f.h_lines = mesh.h_spans();
  f.v_lines = mesh.v_spans();
  f.knots = knots;
  return f;
}

ControlNet parse_control_net(std::istream& in, const std::string& name) {
  ControlNet net;
  std::vector<std::array<double, 3>> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line.substr(0, line.find('#'));
    std::istringstream is(body);
    int i, j;
    double x, y, z;
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!(is >> i >> j >> x >> y >> z))
      fail(ErrorCode::MalformedMeshFile,
           name + ":" + std::to_string(lineno) + ": control rows are 'i j x y z'");
    net.anchors.push_back({i, j});
    pts.push_back({x, y, z});
  }
  net.points.resize(static_cast<Eigen::Index>(pts.size()), 3);
  for (std::size_t r = 0; r < pts.size(); ++r)
    for (int c = 0; c < 3; ++c) net.points(static_cast<Eigen::Index>(r), c) = pts[r][static_cast<std::size_t>(c)];
  return net;
}

ControlNet load_control_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MalformedMeshFile, path + ": cannot open");
  return parse_control_net(in, path);
}

std::string write_control_net(const ControlNet& net) {
  std::ostringstream os;
  for (std::size_t r = 0; r < net.anchors.size(); ++r) {
    os << net.anchors[r].x << " " << net.anchors[r].y;
    for (int c = 0; c < 3; ++c) os << " " << format_double(net.points(static_cast<Eigen::Index>(r), c));
    os << "\n";
  }
  return os.str();
}

}  // namespace astk
