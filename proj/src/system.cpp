#include "cbd/system.hpp"

#include <bit>
#include <set>
#include <stdexcept>

namespace cbd {

std::string assignment_string(Assignment a, std::size_t length) {
  std::string out(length, '-');
  for (std::size_t i = 0; i < length; ++i) {
    if (a & (Assignment{1} << i)) out[i] = '+';
  }
  return out;
}

Assignment parse_assignment(std::string_view text) {
  if (text.size() > max_bunch_size) throw std::invalid_argument("assignment too long");
  Assignment a = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '+') {
      a |= Assignment{1} << i;
    } else if (text[i] != '-') {
      throw std::invalid_argument("outcome must be '+' or '-', got '" + std::string(1, text[i]) + "'");
    }
  }
  return a;
}

Bunch::Bunch(ContextId context, std::vector<ContentId> contents, Table table)
    : context_(std::move(context)), contents_(std::move(contents)) {
  if (contents_.size() > max_bunch_size) {
    throw std::invalid_argument("bunch " + context_.name + " has too many contents");
  }
  if (contents_.empty()) {
    table_.emplace(Assignment{0}, Rational(1));
    return;
  }
  const Assignment limit = Assignment{1} << contents_.size();
  for (auto& [a, p] : table) {
    if (a >= limit) {
      throw std::invalid_argument("bunch " + context_.name + ": assignment out of range");
    }
    if (p != 0) table_.emplace(a, std::move(p));
  }
}

Rational Bunch::probability(Assignment a) const {
  auto it = table_.find(a);
  return it == table_.end() ? Rational(0) : it->second;
}

Rational Bunch::total() const {
  Rational sum = 0;
  for (const auto& [a, p] : table_) sum += p;
  return sum;
}

std::optional<std::size_t> Bunch::index_of(const ContentId& content) const {
  for (std::size_t i = 0; i < contents_.size(); ++i) {
    if (contents_[i] == content) return i;
  }
  return std::nullopt;
}

std::vector<ContextId> System::contexts() const {
  std::vector<ContextId> out;
  out.reserve(bunches_.size());
  for (const auto& b : bunches_) out.push_back(b.context());
  return out;
}

const Bunch* System::find(const ContextId& context) const {
  for (const auto& b : bunches_) {
    if (b.context() == context) return &b;
  }
  return nullptr;
}

const Bunch& System::bunch(const ContextId& context) const {
  if (const Bunch* b = find(context)) return *b;
  throw std::invalid_argument("unknown context " + context.name);
}

std::size_t System::variable_count() const {
  std::size_t k = 0;
  for (const auto& b : bunches_) k += b.size();
  return k;
}

std::vector<Violation> validate_system(const System& s) {
  std::vector<Violation> out;
  std::set<ContentId> contents;
  for (const auto& q : s.contents()) {
    if (q.name.empty()) out.push_back({"contents", "empty content name"});
    if (!contents.insert(q).second) out.push_back({"contents", "duplicate content " + q.name});
  }

  std::set<ContextId> contexts;
  for (const auto& b : s.bunches()) {
    const std::string where = "bunch " + b.context().name;
    if (b.context().name.empty()) out.push_back({where, "empty context name"});
    if (!contexts.insert(b.context()).second) out.push_back({where, "duplicate context"});

    std::set<ContentId> seen;
    for (const auto& q : b.contents()) {
      if (!seen.insert(q).second) out.push_back({where, "content " + q.name + " repeats in bunch"});
      if (!contents.count(q)) out.push_back({where, "content " + q.name + " not in system contents"});
    }

    bool in_range = true;
    for (const auto& [a, p] : b.table()) {
      if (p < 0 || p > 1) {
        in_range = false;
        out.push_back({where + " entry " + assignment_string(a, b.size()), "probability out of range"});
      }
    }
    if (in_range && b.total() != 1) out.push_back({where, "bunch not normalized"});
  }
  return out;
}

namespace {

std::vector<std::size_t> indices_of(const Bunch& b, const std::vector<ContentId>& subset) {
  std::vector<std::size_t> idx;
  idx.reserve(subset.size());
  for (const auto& q : subset) {
    auto i = b.index_of(q);
    if (!i) throw std::invalid_argument("content " + q.name + " not in bunch " + b.context().name);
    idx.push_back(*i);
  }
  return idx;
}

}  // namespace

Bunch marginal(const Bunch& b, const std::vector<ContentId>& subset) {
  const auto idx = indices_of(b, subset);
  Bunch::Table table;
  for (const auto& [a, p] : b.table()) {
    Assignment projected = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (a & (Assignment{1} << idx[j])) projected |= Assignment{1} << j;
    }
    table[projected] += p;
  }
  return Bunch(b.context(), subset, std::move(table));
}

Rational expectation(const Bunch& b, const std::vector<ContentId>& subset) {
  if (subset.empty()) throw std::invalid_argument("expectation needs a nonempty subset");
  const auto idx = indices_of(b, subset);
  Assignment mask = 0;
  for (auto i : idx) mask ^= Assignment{1} << i;
  Rational e = 0;
  for (const auto& [a, p] : b.table()) {
    // The product is -1 exactly when an odd number of selected variables are -1.
    const int minus = std::popcount(static_cast<Assignment>(~a & mask));
    if (minus % 2 == 0) {
      e += p;
    } else {
      e -= p;
    }
  }
  return e;
}

Rational plus_probability(const Bunch& b, const ContentId& content) {
  const auto i = indices_of(b, {content}).front();
  Rational sum = 0;
  for (const auto& [a, p] : b.table()) {
    if (a & (Assignment{1} << i)) sum += p;
  }
  return sum;
}

Rational detection_probability(const Bunch& b) { return Rational(1) - b.probability(0); }

std::optional<Outcome> is_deterministic(const Bunch& b, const ContentId& content) {
  const Rational plus = plus_probability(b, content);
  const Rational total = b.total();
  if (plus == total) return Outcome::plus;
  if (plus == 0) return Outcome::minus;
  return std::nullopt;
}

InfluenceKey::InfluenceKey(ContentId q, ContextId a, ContextId b) : content(std::move(q)) {
  if (b < a) std::swap(a, b);
  first = std::move(a);
  second = std::move(b);
}

Connectedness consistent_connectedness(const System& s) {
  Connectedness out;
  for (const auto& q : s.contents()) {
    std::vector<std::pair<ContextId, Rational>> measured;
    for (const auto& b : s.bunches()) {
      if (b.contains(q)) measured.emplace_back(b.context(), expectation(b, {q}));
    }
    for (std::size_t i = 0; i < measured.size(); ++i) {
      for (std::size_t j = i + 1; j < measured.size(); ++j) {
        Rational d = abs_value(measured[i].second - measured[j].second);
        if (d != 0) out.consistent = false;
        out.influences.emplace(InfluenceKey(q, measured[i].first, measured[j].first), std::move(d));
      }
    }
  }
  return out;
}

}  // namespace cbd
