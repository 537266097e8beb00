#include "slopecert/surface.hpp"

#include <cctype>
#include <memory>
#include <utility>

#include "slopecert/errors.hpp"

namespace slopecert {

namespace {

constexpr unsigned kMaxHirzebruchIndex = 1'000'000;

LatticePtr make_lattice(const Base& base, std::size_t steps) {
  auto lat = base.is_hirzebruch() ? IntersectionLattice::hirzebruch(base.n)
                                  : IntersectionLattice::projective_plane();
  for (std::size_t i = 0; i < steps; ++i) lat = lat.extend_by_blowup();
  return std::make_shared<const IntersectionLattice>(std::move(lat));
}

}  // namespace

SurfacePresentation::SurfacePresentation(Base base, std::vector<BlowupStep> steps)
    : base_(base),
      steps_(std::move(steps)),
      lattice_(make_lattice(base_, steps_.size())),
      canonical_(canonical_class(lattice_)) {
  if (base_.is_hirzebruch() && base_.n > kMaxHirzebruchIndex) {
    throw UsageError("Hirzebruch index too large");
  }
  if (!base_.is_hirzebruch() && !steps_.empty() && steps_.front().locus == Locus::OnZ) {
    throw UsageError("onZ blow-up over P2 before Z exists (first step must be generic)");
  }

  // Replay the blow-ups one lattice at a time so every tracked curve goes
  // through proper_transform and is re-checked against adjunction.
  auto current = make_lattice(base_, 0);
  std::optional<DivisorClass> fiber;
  std::size_t first = 0;
  if (base_.is_hirzebruch()) {
    tracked_.emplace_back(DivisorClass::basis(current, 0), 0, CurveTag::z_section());
    fiber = DivisorClass::basis(current, 1);
    tracked_.emplace_back(*fiber, 0, CurveTag::general_fiber());
  } else if (steps_.empty()) {
    tracked_.emplace_back(DivisorClass::basis(current, 0), 0, CurveTag::line());
  } else {
    current = make_lattice(base_, 1);
    tracked_.emplace_back(DivisorClass::basis(current, 1), 0, CurveTag::z_section());
    fiber = DivisorClass::basis(current, 0) - DivisorClass::basis(current, 1);
    tracked_.emplace_back(*fiber, 0, CurveTag::general_fiber());
    first = 1;
  }

  for (std::size_t i = first; i < steps_.size(); ++i) {
    const std::size_t step = i + 1;
    auto next = make_lattice(base_, step);
    std::vector<CurveClassRecord> moved;
    moved.reserve(tracked_.size() + 2);
    for (const auto& curve : tracked_) {
      const bool through = curve.tag().kind == CurveKind::ZSection &&
                           steps_[i].locus == Locus::OnZ;
      moved.push_back(proper_transform(curve, next, through ? 1 : 0));
    }
    const CurveClassRecord fiber_before(fiber->pullback(current), 0, CurveTag::fiber(step));
    moved.push_back(proper_transform(fiber_before, next, 1));
    moved.emplace_back(DivisorClass::basis(next, next->rank() - 1), 0,
                       CurveTag::exceptional(step));
    tracked_ = std::move(moved);
    current = next;
  }
  if (!same_lattice(current, lattice_)) {
    throw InvariantViolation("tracked curves ended on the wrong lattice");
  }
  for (auto& curve : tracked_) {
    curve = CurveClassRecord(DivisorClass(lattice_, curve.cls().coeffs()), curve.genus(),
                             curve.tag());
  }
}

std::size_t SurfacePresentation::on_z_count() const {
  std::size_t count = 0;
  for (const auto& s : steps_) count += s.locus == Locus::OnZ ? 1 : 0;
  return count;
}

const CurveClassRecord* SurfacePresentation::z_section() const {
  for (const auto& c : tracked_) {
    if (c.tag().kind == CurveKind::ZSection) return &c;
  }
  return nullptr;
}

bool SurfacePresentation::is_minimal_polystable() const {
  return steps_.empty() && (!base_.is_hirzebruch() || base_.n == 0);
}

SurfacePresentation SurfacePresentation::prefix(std::size_t count) const {
  if (count > steps_.size()) throw UsageError("prefix longer than the presentation");
  return SurfacePresentation(base_, {steps_.begin(), steps_.begin() + count});
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class TokenKind { Identifier, Number, LParen, RParen, Semicolon, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_blank();
      if (pos_ >= text_.size()) {
        tokens.push_back({TokenKind::End, "end of input", line_, column_});
        return tokens;
      }
      const char c = text_[pos_];
      const std::size_t line = line_;
      const std::size_t column = column_;
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string word;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          word += advance();
        }
        tokens.push_back({TokenKind::Identifier, std::move(word), line, column});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          digits += advance();
        }
        tokens.push_back({TokenKind::Number, std::move(digits), line, column});
      } else if (c == '(' || c == ')' || c == ';') {
        advance();
        const TokenKind kind = c == '(' ? TokenKind::LParen
                               : c == ')' ? TokenKind::RParen
                                          : TokenKind::Semicolon;
        tokens.push_back({kind, std::string(1, c), line, column});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
      }
    }
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SurfacePresentation run() {
    const Base base = parse_base();
    std::vector<BlowupStep> steps;
    while (peek().kind == TokenKind::Semicolon) {
      next();
      const Token& keyword = expect(TokenKind::Identifier, "'blowup'");
      if (keyword.text != "blowup") fail(keyword, "expected 'blowup'");
      const Token& where = expect(TokenKind::Identifier, "'generic' or 'onZ'");
      if (where.text == "generic") {
        steps.push_back({Locus::OffZ});
      } else if (where.text == "onZ") {
        if (!base.is_hirzebruch() && steps.empty()) {
          fail(where, "onZ blow-up over P2: Z is undefined before the first blow-up");
        }
        steps.push_back({Locus::OnZ});
      } else {
        fail(where, "expected 'generic' or 'onZ'");
      }
    }
    if (peek().kind != TokenKind::End) fail(peek(), "expected ';' or end of input");
    return SurfacePresentation(base, std::move(steps));
  }

 private:
  Base parse_base() {
    const Token& head = expect(TokenKind::Identifier, "'P2' or 'F('");
    if (head.text == "P2") return Base::projective_plane();
    if (head.text != "F") fail(head, "expected 'P2' or 'F('");
    expect(TokenKind::LParen, "'('");
    const Token& number = expect(TokenKind::Number, "a nonnegative integer");
    if (number.text.size() > 7 || std::stoul(number.text) > kMaxHirzebruchIndex) {
      fail(number, "Hirzebruch index too large");
    }
    const auto n = static_cast<unsigned>(std::stoul(number.text));
    expect(TokenKind::RParen, "')'");
    return Base::hirzebruch(n);
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  const Token& expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) fail(peek(), "expected " + what + ", found '" + peek().text + "'");
    return next();
  }

  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw ParseError(message, at.line, at.column);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

SurfacePresentation parse_presentation(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

std::string pretty_print(const SurfacePresentation& p) {
  std::string out =
      p.base().is_hirzebruch() ? "F(" + std::to_string(p.base().n) + ")" : std::string("P2");
  for (const auto& s : p.steps()) {
    out += s.locus == Locus::OnZ ? "; blowup onZ" : "; blowup generic";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewrites

namespace {

BasisChange identity_change(std::size_t rank) {
  BasisChange change;
  change.matrix.assign(rank, std::vector<long>(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) change.matrix[i][i] = 1;
  return change;
}

/// `second` after `first`.
BasisChange compose(const BasisChange& second, const BasisChange& first) {
  const std::size_t rows = second.matrix.size();
  const std::size_t inner = first.matrix.size();
  const std::size_t cols = inner == 0 ? 0 : first.matrix[0].size();
  BasisChange out;
  out.matrix.assign(rows, std::vector<long>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (second.matrix[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        out.matrix[i][j] += second.matrix[i][k] * first.matrix[k][j];
      }
    }
  }
  return out;
}

}  // namespace

DivisorClass BasisChange::apply(const DivisorClass& d, const LatticePtr& target) const {
  if (matrix.size() != target->rank() || (!matrix.empty() && matrix[0].size() != d.size())) {
    throw UsageError("basis change does not match the classes' lattices");
  }
  std::vector<Rational> coeffs(target->rank());
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (matrix[i][j] != 0) coeffs[i] += d[j] * matrix[i][j];
    }
  }
  return DivisorClass(target, std::move(coeffs));
}

Rewrite elementary_transform_with_map(const SurfacePresentation& p, std::size_t step_index) {
  if (!p.base().is_hirzebruch()) {
    throw UsageError("elementary transform needs a Hirzebruch base; rewrite P2 first");
  }
  if (step_index >= p.steps().size()) throw UsageError("step index out of range");
  const bool on_z = p.steps()[step_index].locus == Locus::OnZ;
  const bool quadric_swap = p.base().n == 0 && p.on_z_count() == 0;
  if (!on_z && !quadric_swap) {
    throw UsageError("elementary transform requires an onZ step");
  }

  auto steps = p.steps();
  steps[step_index].locus = Locus::OffZ;
  SurfacePresentation result(Base::hirzebruch(p.base().n + 1), std::move(steps));

  // New basis (Z', F', E'): F' = F, E'_i = F - E_i, Z' = Z - E_i; inverted:
  // Z = Z' + F' - E'_i, E_i = F' - E'_i.
  const std::size_t e = p.lattice()->exceptional_index(step_index + 1);
  BasisChange change = identity_change(p.picard_rank());
  change.matrix[1][0] = 1;
  change.matrix[e][0] = -1;
  change.matrix[1][e] = 1;
  change.matrix[e][e] = -1;
  return {std::move(result), std::move(change)};
}

SurfacePresentation elementary_transform(const SurfacePresentation& p, std::size_t step_index) {
  return elementary_transform_with_map(p, step_index).result;
}

Rewrite rewrite_projective_plane(const SurfacePresentation& p) {
  if (p.base().is_hirzebruch() || p.steps().empty()) {
    throw UsageError("only P2 with at least one blow-up can be re-read over F_1");
  }
  std::vector<BlowupStep> rest(p.steps().begin() + 1, p.steps().end());
  SurfacePresentation result(Base::hirzebruch(1), std::move(rest));

  // H = Z + F, E1 = Z, E_j = E'_{j-1}.
  const std::size_t old_rank = p.picard_rank();
  BasisChange change;
  change.matrix.assign(old_rank, std::vector<long>(old_rank, 0));
  change.matrix[0][0] = 1;
  change.matrix[1][0] = 1;
  change.matrix[0][1] = 1;
  for (std::size_t j = 2; j < old_rank; ++j) change.matrix[j][j] = 1;
  return {std::move(result), std::move(change)};
}

Normalization normalize(const SurfacePresentation& p) {
  if (p.is_minimal_polystable()) {
    return {p, identity_change(p.picard_rank()), true};
  }
  SurfacePresentation current = p;
  BasisChange total = identity_change(p.picard_rank());
  auto absorb = [&](Rewrite rw) {
    total = compose(rw.basis_change, total);
    current = std::move(rw.result);
  };

  if (!current.base().is_hirzebruch()) absorb(rewrite_projective_plane(current));
  if (current.base().n == 0 && !current.steps().empty() && current.on_z_count() == 0) {
    absorb(elementary_transform_with_map(current, 0));
  }
  for (std::size_t i = 0; i < current.steps().size(); ++i) {
    if (current.steps()[i].locus == Locus::OnZ) {
      absorb(elementary_transform_with_map(current, i));
    }
  }
  return {std::move(current), std::move(total), false};
}

}  // namespace slopecert
