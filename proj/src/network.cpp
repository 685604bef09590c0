#include "crnosc/network.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace crnosc {

std::int64_t Complex::molecularity() const {
  return std::accumulate(coefficients.begin(), coefficients.end(), std::int64_t{0});
}

ReactionNetwork::ReactionNetwork(std::vector<std::string> species, IntMatrix source, IntMatrix stoich)
    : species_(std::move(species)), source_(std::move(source)), stoich_(std::move(stoich)) {
  const std::size_t n = species_.size();
  if (source_.rows() != n || stoich_.rows() != n || source_.cols() != stoich_.cols())
    throw std::invalid_argument("network matrices do not match the species list");
  std::set<std::string> seen;
  for (const auto& s : species_)
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate species '" + s + "'");
  for (std::size_t j = 0; j < source_.cols(); ++j) {
    bool changes = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (source_(i, j) < 0) throw std::invalid_argument("negative source coefficient");
      if (source_(i, j) + stoich_(i, j) < 0) throw std::invalid_argument("negative target coefficient");
      changes = changes || stoich_(i, j) != 0;
    }
    if (!changes)
      throw std::invalid_argument("reaction " + std::to_string(j + 1) + " has identical source and target");
  }
}

IntMatrix ReactionNetwork::target() const {
  IntMatrix t(num_species(), num_reactions());
  for (std::size_t i = 0; i < num_species(); ++i)
    for (std::size_t j = 0; j < num_reactions(); ++j) t(i, j) = source_(i, j) + stoich_(i, j);
  return t;
}

Complex ReactionNetwork::source_complex(std::size_t j) const { return {source_.col(j)}; }

Complex ReactionNetwork::target_complex(std::size_t j) const {
  Complex c{source_.col(j)};
  for (std::size_t i = 0; i < num_species(); ++i) c.coefficients[i] += stoich_(i, j);
  return c;
}

bool ReactionNetwork::has_duplicate_reactions() const {
  for (std::size_t j = 0; j < num_reactions(); ++j)
    for (std::size_t k = j + 1; k < num_reactions(); ++k)
      if (source_.col(j) == source_.col(k) && stoich_.col(j) == stoich_.col(k)) return true;
  return false;
}

MassActionSystem::MassActionSystem(ReactionNetwork net, std::vector<double> kappa)
    : net_(std::move(net)), kappa_(std::move(kappa)), exact_(kappa_.size()) {
  if (kappa_.size() != net_.num_reactions()) throw std::invalid_argument("kappa has wrong length");
  for (double k : kappa_)
    if (!(k > 0) || !std::isfinite(k)) throw std::invalid_argument("rate constants must be positive");
}

MassActionSystem::MassActionSystem(ReactionNetwork net, std::vector<Rational> kappa) : net_(std::move(net)) {
  if (kappa.size() != net_.num_reactions()) throw std::invalid_argument("kappa has wrong length");
  for (auto& k : kappa) {
    if (k <= 0) throw std::invalid_argument("rate constants must be positive");
    kappa_.push_back(k.get_d());
    exact_.emplace_back(std::move(k));
  }
}

bool MassActionSystem::exact() const {
  return std::all_of(exact_.begin(), exact_.end(), [](const auto& q) { return q.has_value(); });
}

std::vector<Rational> MassActionSystem::exact_kappa() const {
  if (!exact()) throw std::logic_error("rate constants are not exact");
  std::vector<Rational> out;
  for (const auto& q : exact_) out.push_back(*q);
  return out;
}

std::vector<double> mass_action_rhs(const MassActionSystem& sys, const std::vector<double>& x) {
  return mass_action_rhs(sys.network(), sys.kappa(), x);
}

std::vector<Rational> mass_action_rhs(const MassActionSystem& sys, const std::vector<Rational>& x) {
  return mass_action_rhs(sys.network(), sys.exact_kappa(), x);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParsedSystem run() {
    struct Raw {
      std::vector<std::pair<std::size_t, std::int64_t>> source, target;
      Rational kappa;
    };
    std::vector<Raw> reactions;
    bool first_statement = true;
    while (true) {
      skip_blanks();
      if (at_end()) break;
      if (at_terminator()) {
        advance();
        continue;
      }
      if (first_statement && try_species_directive()) {
        first_statement = false;
        expect_terminator();
        continue;
      }
      first_statement = false;
      Raw r;
      r.source = parse_complex(false);
      skip_blanks();
      if (!consume("->")) fail("expected '->'");
      r.target = parse_complex(true);
      skip_blanks();
      r.kappa = 1;
      if (peek() == '@') {
        advance();
        skip_blanks();
        auto [l, c] = position();
        std::size_t start = pos_;
        while (!at_end() && !at_terminator() && peek() != '#' && !std::isspace(static_cast<unsigned char>(peek())))
          advance();
        try {
          r.kappa = parse_rational(text_.substr(start, pos_ - start));
        } catch (const std::invalid_argument& e) {
          throw ParseError(l, c, e.what());
        }
        if (r.kappa <= 0) throw ParseError(l, c, "rate constant must be positive");
      }
      expect_terminator();
      reactions.push_back(std::move(r));
    }

    const std::size_t n = species_.size(), m = reactions.size();
    IntMatrix src(n, m, 0), tgt(n, m, 0);
    for (std::size_t j = 0; j < m; ++j) {
      for (auto [i, c] : reactions[j].source) src(i, j) += c;
      for (auto [i, c] : reactions[j].target) tgt(i, j) += c;
    }
    IntMatrix stoich(n, m, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) stoich(i, j) = tgt(i, j) - src(i, j);
    for (std::size_t j = 0; j < m; ++j) {
      bool same = true;
      for (std::size_t i = 0; i < n; ++i) same = same && stoich(i, j) == 0;
      if (same)
        throw ParseError(reaction_lines_[j].first, reaction_lines_[j].second,
                         "reaction has identical source and target");
    }

    ParsedSystem out{ReactionNetwork(species_, src, stoich), {}, {}};
    for (auto& r : reactions) out.kappa.push_back(r.kappa);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        if (src.col(j) == src.col(k) && stoich.col(j) == stoich.col(k))
          out.warnings.push_back("duplicate reaction: reactions " + std::to_string(j + 1) + " and " +
                                 std::to_string(k + 1) + " are identical");
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> species_;
  std::vector<std::pair<std::size_t, std::size_t>> reaction_lines_;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void advance() { ++pos_; }
  bool at_terminator() const { return peek() == ';' || peek() == '\n'; }

  std::pair<std::size_t, std::size_t> position() const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < pos_ && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& msg) const {
    auto [l, c] = position();
    throw ParseError(l, c, msg);
  }

  void skip_blanks() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect_terminator() {
    skip_blanks();
    if (at_end()) return;
    if (!at_terminator()) fail(std::string("unexpected character '") + peek() + "'");
    advance();
  }

  bool consume(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  static bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string read_name() {
    if (!name_start(peek())) fail("expected species name");
    std::size_t start = pos_;
    while (name_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t species_index(const std::string& name) {
    auto it = std::find(species_.begin(), species_.end(), name);
    if (it != species_.end()) return static_cast<std::size_t>(it - species_.begin());
    species_.push_back(name);
    return species_.size() - 1;
  }

  bool try_species_directive() {
    if (text_.substr(pos_, 7) != "species") return false;
    std::size_t save = pos_;
    pos_ += 7;
    if (peek() != ' ' && peek() != '\t' && peek() != ':') {
      pos_ = save;
      return false;
    }
    skip_blanks();
    if (peek() == ':') {
      advance();
      skip_blanks();
    }
    if (!name_start(peek())) {
      pos_ = save;
      return false;
    }
    while (true) {
      auto name = read_name();
      if (std::find(species_.begin(), species_.end(), name) != species_.end())
        fail("species '" + name + "' declared twice");
      species_.push_back(name);
      skip_blanks();
      if (peek() != ',') break;
      advance();
      skip_blanks();
    }
    return true;
  }

  std::vector<std::pair<std::size_t, std::int64_t>> parse_complex(bool is_target) {
    skip_blanks();
    if (!is_target) reaction_lines_.push_back(position());
    std::vector<std::pair<std::size_t, std::int64_t>> terms;
    // "0" on its own is the empty complex.
    if (peek() == '0' && !std::isdigit(static_cast<unsigned char>(peek(1))) && !name_char(peek(1))) {
      std::size_t save = pos_;
      advance();
      skip_blanks();
      if (peek() != '+' && peek() != ' ') return terms;
      pos_ = save;
    }
    while (true) {
      skip_blanks();
      if (peek() == '-' && peek(1) != '>')
        fail(is_target ? "negative target coefficient" : "negative source coefficient");
      std::int64_t coeff = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        auto digits = text_.substr(start, pos_ - start);
        if (digits.size() > 9) fail("coefficient too large");
        coeff = std::stoll(std::string(digits));
        skip_blanks();
        if (peek() == '*') {
          advance();
          skip_blanks();
        }
        if (coeff == 0) fail("zero coefficient");
      }
      auto name = read_name();
      terms.emplace_back(species_index(name), coeff);
      skip_blanks();
      if (peek() != '+') break;
      advance();
    }
    return terms;
  }
};

}  // namespace

ParsedSystem parse_system(std::string_view text) { return Parser(text).run(); }

ReactionNetwork parse_network(std::string_view text) { return parse_system(text).network; }

// ---------------------------------------------------------------------------
// Rendering and serialization

namespace {

std::string render_complex(const ReactionNetwork& net, const std::vector<std::int64_t>& coeffs) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (coeffs[i] != 1) out += std::to_string(coeffs[i]);
    out += net.species()[i];
  }
  return out.empty() ? "0" : out;
}

bool needs_species_line(const ReactionNetwork& net) {
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    for (auto side : {0, 1}) {
      auto c = side == 0 ? net.source_complex(j) : net.target_complex(j);
      for (std::size_t i = 0; i < net.num_species(); ++i)
        if (c.coefficients[i] != 0 && std::find(order.begin(), order.end(), i) == order.end())
          order.push_back(i);
    }
  }
  if (order.size() != net.num_species()) return true;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (order[k] != k) return true;
  return false;
}

std::string render_impl(const ReactionNetwork& net, const MassActionSystem* sys) {
  std::string out;
  if (needs_species_line(net)) {
    out += "species ";
    for (std::size_t i = 0; i < net.num_species(); ++i) out += (i ? ", " : "") + net.species()[i];
    out += "\n";
  }
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    out += render_reaction(net, j);
    if (sys) {
      const auto& ex = sys->kappa_exact()[j];
      if (ex) {
        if (*ex != 1) out += " @ " + to_string(*ex);
      } else {
        std::ostringstream s;
        s.precision(17);
        s << sys->kappa()[j];
        out += " @ " + s.str();
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace

std::string render_reaction(const ReactionNetwork& net, std::size_t j) {
  return render_complex(net, net.source_complex(j).coefficients) + " -> " +
         render_complex(net, net.target_complex(j).coefficients);
}

std::string render(const ReactionNetwork& net) { return render_impl(net, nullptr); }
std::string render(const MassActionSystem& sys) { return render_impl(sys.network(), &sys); }

nlohmann::json to_json(const ReactionNetwork& net) {
  nlohmann::json j;
  j["species"] = net.species();
  auto rows = [](const IntMatrix& m) {
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(m.row(i));
    return a;
  };
  j["source"] = rows(net.source());
  j["stoich"] = rows(net.stoich());
  return j;
}

nlohmann::json to_json(const MassActionSystem& sys) {
  auto j = to_json(sys.network());
  nlohmann::json k = nlohmann::json::array();
  for (std::size_t r = 0; r < sys.kappa().size(); ++r) {
    if (sys.kappa_exact()[r])
      k.push_back(to_string(*sys.kappa_exact()[r]));
    else
      k.push_back(sys.kappa()[r]);
  }
  j["kappa"] = k;
  return j;
}

MassActionSystem system_from_json(const nlohmann::json& j) {
  auto species = j.at("species").get<std::vector<std::string>>();
  auto read = [&](const char* key) {
    auto rows = j.at(key).get<std::vector<std::vector<std::int64_t>>>();
    std::size_t m = rows.empty() ? 0 : rows[0].size();
    IntMatrix out(rows.size(), m);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m) throw std::invalid_argument(std::string("ragged ") + key + " matrix");
      for (std::size_t c = 0; c < m; ++c) out(i, c) = rows[i][c];
    }
    return out;
  };
  IntMatrix src = read("source"), st = read("stoich");
  if (species.empty()) {
    auto m = j.contains("kappa") ? j["kappa"].size() : 0;
    src = IntMatrix(0, m);
    st = IntMatrix(0, m);
  }
  ReactionNetwork net(species, src, st);
  if (!j.contains("kappa")) return {net, std::vector<Rational>(net.num_reactions(), Rational(1))};
  std::vector<Rational> exact;
  std::vector<double> floats;
  bool all_exact = true;
  for (const auto& k : j["kappa"]) {
    if (k.is_string()) {
      exact.push_back(parse_rational(k.get<std::string>()));
      floats.push_back(exact.back().get_d());
    } else {
      all_exact = false;
      floats.push_back(k.get<double>());
    }
  }
  if (all_exact) return {net, exact};
  return {net, floats};
}

// ---------------------------------------------------------------------------
// Permutations and canonical form

ReactionNetwork permute_species(const ReactionNetwork& net, const std::vector<std::size_t>& perm) {
  const std::size_t n = net.num_species(), m = net.num_reactions();
  if (perm.size() != n) throw std::invalid_argument("permutation has wrong length");
  std::vector<std::string> names(n);
  IntMatrix src(n, m), st(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = net.species()[perm[i]];
    for (std::size_t j = 0; j < m; ++j) {
      src(i, j) = net.source()(perm[i], j);
      st(i, j) = net.stoich()(perm[i], j);
    }
  }
  return {names, src, st};
}

ReactionNetwork permute_reactions(const ReactionNetwork& net, const std::vector<std::size_t>& order) {
  const std::size_t n = net.num_species(), m = net.num_reactions();
  if (order.size() != m) throw std::invalid_argument("reaction order has wrong length");
  IntMatrix src(n, m), st(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      src(i, j) = net.source()(i, order[j]);
      st(i, j) = net.stoich()(i, order[j]);
    }
  return {net.species(), src, st};
}

std::string generic_species_name(std::size_t i) {
  static const char* names[] = {"X", "Y", "Z", "W", "V", "U", "T", "S", "R", "Q"};
  if (i < std::size(names)) return names[i];
  return "X" + std::to_string(i + 1);
}

std::pair<ReactionNetwork, std::vector<std::size_t>> canonical_form_with_permutation(
    const ReactionNetwork& net) {
  const std::size_t n = net.num_species(), m = net.num_reactions();
  if (n > 9) throw std::invalid_argument("canonical_form supports at most 9 species");
  const IntMatrix tgt = net.target();

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::int64_t>> best;
  std::vector<std::size_t> best_perm = perm;
  std::vector<std::vector<std::int64_t>> cols(m, std::vector<std::int64_t>(2 * n));
  do {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        cols[j][i] = net.source()(perm[i], j);
        cols[j][n + i] = tgt(perm[i], j);
      }
    }
    std::sort(cols.begin(), cols.end());
    if (best.empty() || cols < best) {
      best = cols;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = generic_species_name(i);
  IntMatrix src(n, m), st(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      src(i, j) = best[j][i];
      st(i, j) = best[j][n + i] - best[j][i];
    }
  return {ReactionNetwork(names, src, st), best_perm};
}

ReactionNetwork canonical_form(const ReactionNetwork& net) {
  return canonical_form_with_permutation(net).first;
}

std::string canonical_string(const ReactionNetwork& net) {
  auto c = canonical_form(net);
  std::string out;
  for (std::size_t j = 0; j < c.num_reactions(); ++j) out += (j ? "; " : "") + render_reaction(c, j);
  return out;
}

// ---------------------------------------------------------------------------

MolecularityProfile molecularity_profile(const ReactionNetwork& net) {
  MolecularityProfile p;
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    p.max_source = std::max(p.max_source, net.source_complex(j).molecularity());
    p.max_target = std::max(p.max_target, net.target_complex(j).molecularity());
  }
  return p;
}

std::vector<std::size_t> trivial_species(const ReactionNetwork& net) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < net.num_species(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < net.num_reactions(); ++j) zero = zero && net.stoich()(i, j) == 0;
    if (zero) out.push_back(i);
  }
  return out;
}

ReactionNetwork drop_trivial_species(const ReactionNetwork& net) {
  auto trivial = trivial_species(net);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < net.num_species(); ++i)
    if (std::find(trivial.begin(), trivial.end(), i) == trivial.end()) keep.push_back(i);
  std::vector<std::size_t> reactions;
  for (std::size_t j = 0; j < net.num_reactions(); ++j) {
    bool changes = false;
    for (auto i : keep) changes = changes || net.stoich()(i, j) != 0;
    if (changes) reactions.push_back(j);
  }
  std::vector<std::string> names;
  IntMatrix src(keep.size(), reactions.size()), st(keep.size(), reactions.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    names.push_back(net.species()[keep[a]]);
    for (std::size_t b = 0; b < reactions.size(); ++b) {
      src(a, b) = net.source()(keep[a], reactions[b]);
      st(a, b) = net.stoich()(keep[a], reactions[b]);
    }
  }
  return {names, src, st};
}

}  // namespace crnosc
