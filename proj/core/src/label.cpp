#include "macfaces/label.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "macfaces/counting.hpp"
#include "macfaces/errors.hpp"

namespace macfaces {
namespace {

bool chain_size_order(UserSet a, UserSet b) {
  // Decreasing size; mask order only as a tiebreak for reproducibility (a
  // valid chain never has two sets of equal size).
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

}  // namespace

FaceLabel canonical(FaceLabel label) {
  std::sort(label.chain.begin(), label.chain.end(), chain_size_order);
  return label;
}

LabelCheck validate_label(const FaceLabel& label) {
  if (label.users < 1 || label.users > kMaxUsers)
    return {false, "users must be between 1 and " + std::to_string(kMaxUsers)};
  const UserSet all = UserSet::full(label.users);
  const FaceLabel c = canonical(label);
  if (!c.zeros.subset_of(all))
    return {false, "zero set " + c.zeros.to_string() +
                       " is not a subset of {1.." +
                       std::to_string(label.users) + "}"};
  for (std::size_t k = 0; k < c.chain.size(); ++k) {
    const UserSet s = c.chain[k];
    if (s.empty())
      return {false, "chain sets must be nonempty"};
    if (!s.subset_of(all))
      return {false, "chain set " + s.to_string() +
                         " is not a subset of {1.." +
                         std::to_string(label.users) + "}"};
    if (k > 0 && !s.proper_subset_of(c.chain[k - 1]))
      return {false, "chain is not telescopic: " + s.to_string() +
                         " is not strictly inside " +
                         c.chain[k - 1].to_string()};
  }
  if (!c.chain.empty() && c.zeros.intersects(c.chain.front()))
    return {false, "zero set " + c.zeros.to_string() +
                       " overlaps the outermost chain set " +
                       c.chain.front().to_string()};
  return {true, ""};
}

void require_valid(const FaceLabel& label) {
  const LabelCheck check = validate_label(label);
  if (!check.valid)
    throw PreconditionError("invalid face label: " + check.diagnostic);
}

int face_dim(const FaceLabel& label) {
  require_valid(label);
  return label.users - static_cast<int>(label.chain.size()) -
         label.zeros.size();
}

std::optional<FaceLabel> merge_labels(const FaceLabel& a, const FaceLabel& b) {
  require_valid(a);
  require_valid(b);
  if (a.users != b.users)
    throw PreconditionError("merge_labels: labels have different user counts");

  FaceLabel merged;
  merged.users = a.users;
  merged.zeros = a.zeros | b.zeros;
  merged.chain = a.chain;
  merged.chain.insert(merged.chain.end(), b.chain.begin(), b.chain.end());
  std::sort(merged.chain.begin(), merged.chain.end(), chain_size_order);
  merged.chain.erase(std::unique(merged.chain.begin(), merged.chain.end()),
                     merged.chain.end());

  if (!validate_label(merged).valid) return std::nullopt;
  return merged;
}

std::vector<FaceLabel> enumerate_faces(int users, std::optional<int> dim) {
  if (users < 1)
    throw PreconditionError("enumerate_faces: users must be >= 1");
  if (users > kMaxEnumerateUsers)
    throw CapacityError("enumerate_faces: capped at " +
                        std::to_string(kMaxEnumerateUsers) +
                        " users (face counts grow superexponentially; use "
                        "the counting interface instead)");
  if (dim && (*dim < 0 || *dim > users))
    throw PreconditionError("enumerate_faces: dim must be in [0, " +
                            std::to_string(users) + "]");

  const UserSet all = UserSet::full(users);
  std::vector<FaceLabel> out;

  std::vector<UserSet> chain;
  std::vector<FaceLabel>* sink = nullptr;
  UserSet zeros;
  // Emits every strictly nested chain of `remaining` nonempty sets whose
  // outermost element lies inside (or, at the top level, equals) `parent`.
  auto descend = [&](auto&& self, Mask parent, bool allow_equal,
                     int remaining) -> void {
    if (remaining == 0) {
      sink->push_back({users, chain, zeros});
      return;
    }
    Mask sub = parent;
    while (true) {
      if (sub != 0 && (allow_equal || sub != parent) &&
          std::popcount(sub) >= remaining) {
        chain.push_back(UserSet(sub));
        self(self, sub, false, remaining - 1);
        chain.pop_back();
      }
      if (sub == 0) break;
      sub = (sub - 1) & parent;
    }
  };

  const int d_lo = dim ? *dim : 0;
  const int d_hi = dim ? *dim : users;
  for (int d = d_lo; d <= d_hi; ++d) {
    std::vector<FaceLabel> level;
    sink = &level;
    for (Mask a = 0; a <= all.bits(); ++a) {
      zeros = UserSet(a);
      const int m = users - d - zeros.size();
      if (m < 0) continue;
      descend(descend, (all - zeros).bits(), true, m);
    }
    if (counting::BigInt(level.size()) != counting::count_total(users, d))
      throw InternalError("enumerate_faces: found " +
                          std::to_string(level.size()) + " faces of dim " +
                          std::to_string(d) + " but the closed form says " +
                          counting::count_total(users, d).str());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string DecodingPlan::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) s += ',';
    s += groups[i].to_string();
  }
  s += ']';
  return s;
}

DecodingPlan decoding_order(const FaceLabel& label) {
  require_valid(label);
  const FaceLabel c = canonical(label);
  const UserSet all = UserSet::full(c.users);
  DecodingPlan plan;
  plan.skipped = c.zeros;

  const UserSet outermost = c.chain.empty() ? UserSet() : c.chain.front();
  const UserSet first = all - c.zeros - outermost;
  if (!first.empty()) plan.groups.push_back(first);
  for (std::size_t k = 0; k < c.chain.size(); ++k) {
    const UserSet next = k + 1 < c.chain.size() ? c.chain[k + 1] : UserSet();
    plan.groups.push_back(c.chain[k] - next);
  }
  return plan;
}

std::string to_string(const FaceLabel& label) {
  const FaceLabel c = canonical(label);
  std::string s = "F(";
  for (std::size_t k = 0; k < c.chain.size(); ++k) {
    if (k) s += '>';
    s += c.chain[k].to_string();
  }
  s += '|';
  if (!c.zeros.empty()) s += c.zeros.to_string();
  s += ')';
  return s;
}

namespace {

// Recursive-descent reader for the label syntax.  Kept tolerant of
// whitespace; every failure names the position.
class LabelReader {
public:
  LabelReader(std::string_view text, int users) : text_(text), users_(users) {}

  FaceLabel read() {
    FaceLabel label;
    label.users = users_;
    skip_ws();
    expect('F');
    expect('(');
    skip_ws();
    if (peek() == '{') {
      label.chain.push_back(read_set());
      skip_ws();
      while (peek() == '>') {
        ++pos_;
        skip_ws();
        label.chain.push_back(read_set());
        skip_ws();
      }
    }
    expect('|');
    skip_ws();
    if (peek() == '{') label.zeros = read_set();
    expect(')');
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected trailing characters");
    return label;
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ValidationError("label \"" + std::string(text_) + "\": " + why +
                          " at position " + std::to_string(pos_));
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  int read_int() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a user index");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > kMaxUsers) fail("user index out of range");
      ++pos_;
    }
    return static_cast<int>(v);
  }

  UserSet read_set() {
    expect('{');
    UserSet set;
    skip_ws();
    if (peek() != '}') {
      while (true) {
        const int u = read_int();
        if (u < 1 || u > users_)
          fail("user index " + std::to_string(u) + " outside {1.." +
               std::to_string(users_) + "}");
        if (set.contains(u)) fail("duplicate user " + std::to_string(u));
        set = set | UserSet::single(u);
        skip_ws();
        if (peek() != ',') break;
        ++pos_;
      }
    }
    expect('}');
    return set;
  }

  std::string_view text_;
  int users_;
  std::size_t pos_ = 0;
};

}  // namespace

FaceLabel parse_label(std::string_view text, int users) {
  if (users < 1 || users > kMaxUsers)
    throw PreconditionError("parse_label: users must be between 1 and " +
                            std::to_string(kMaxUsers));
  FaceLabel label = canonical(LabelReader(text, users).read());
  const LabelCheck check = validate_label(label);
  if (!check.valid)
    throw ValidationError("label \"" + std::string(text) +
                          "\": " + check.diagnostic);
  return label;
}

std::string lattice_to_dot(const std::vector<FaceLabel>& faces) {
  std::map<int, std::vector<FaceLabel>> by_dim;
  int users = 0;
  for (const FaceLabel& f : faces) {
    require_valid(f);
    if (users == 0) users = f.users;
    if (f.users != users)
      throw PreconditionError("lattice_to_dot: mixed user counts");
    by_dim[face_dim(f)].push_back(canonical(f));
  }

  std::ostringstream os;
  os << "digraph face_lattice {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& [d, level] : by_dim) {
    os << "  { rank=same;";
    for (const FaceLabel& f : level) os << " \"" << to_string(f) << "\";";
    os << " }  // dim " << d << "\n";
  }
  // a covers b exactly when the dimensions differ by one and b is a subface
  // of a, i.e. intersecting changes nothing: merge(a, b) = b.
  for (const auto& [d, level] : by_dim) {
    const auto up = by_dim.find(d + 1);
    if (up == by_dim.end()) continue;
    for (const FaceLabel& b : level) {
      for (const FaceLabel& a : up->second) {
        const auto merged = merge_labels(a, b);
        if (merged && *merged == b)
          os << "  \"" << to_string(b) << "\" -> \"" << to_string(a)
             << "\";\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace macfaces
