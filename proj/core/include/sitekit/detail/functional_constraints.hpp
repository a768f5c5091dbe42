#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace sitekit::detail {

/// Enumerates assignments var -> value in [0, domain(var)) subject to
/// functional links `value(to) == map[value(from)]`.
///
/// Both natural transformations and matching families reduce to this shape:
/// choosing the image of one element forces the images of all its
/// restrictions. Branching happens only on variables not already forced, so
/// the search touches little more than the solutions themselves. Solutions
/// are produced in lexicographic order of the branched variables.
class FunctionalConstraints {
public:
  static constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

  explicit FunctionalConstraints(std::vector<std::size_t> domains)
      : domains_(std::move(domains)), links_(domains_.size()) {}

  void link(std::size_t from, std::size_t to, const std::vector<std::size_t>* map) {
    links_[from].push_back({to, map});
  }

  std::size_t size() const { return domains_.size(); }

  /// Calls `visit(const std::vector<std::size_t>&)` per solution; stops early
  /// when it returns false.
  template <class Visit>
  void enumerate(Visit&& visit) const {
    std::vector<std::size_t> value(domains_.size(), kUnset);
    std::vector<std::size_t> trail;
    bool keep_going = true;
    search(0, value, trail, visit, keep_going);
  }

  std::size_t count() const {
    std::size_t n = 0;
    enumerate([&](const std::vector<std::size_t>&) {
      ++n;
      return true;
    });
    return n;
  }

private:
  struct Link {
    std::size_t to;
    const std::vector<std::size_t>* map;
  };

  bool assign(std::size_t var, std::size_t v, std::vector<std::size_t>& value,
              std::vector<std::size_t>& trail) const {
    value[var] = v;
    trail.push_back(var);
    for (std::size_t head = trail.size() - 1; head < trail.size(); ++head) {
      std::size_t from = trail[head];
      for (const Link& l : links_[from]) {
        std::size_t forced = (*l.map)[value[from]];
        if (value[l.to] == kUnset) {
          value[l.to] = forced;
          trail.push_back(l.to);
        } else if (value[l.to] != forced) {
          return false;
        }
      }
    }
    return true;
  }

  template <class Visit>
  void search(std::size_t var, std::vector<std::size_t>& value, std::vector<std::size_t>& trail,
              Visit& visit, bool& keep_going) const {
    while (var < domains_.size() && value[var] != kUnset) ++var;
    if (var == domains_.size()) {
      keep_going = visit(static_cast<const std::vector<std::size_t>&>(value));
      return;
    }
    for (std::size_t v = 0; v < domains_[var] && keep_going; ++v) {
      std::size_t mark = trail.size();
      if (assign(var, v, value, trail)) search(var + 1, value, trail, visit, keep_going);
      while (trail.size() > mark) {
        value[trail.back()] = kUnset;
        trail.pop_back();
      }
    }
  }

  std::vector<std::size_t> domains_;
  std::vector<std::vector<Link>> links_;
};

}  // namespace sitekit::detail
