#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "fekete/rational.hpp"
#include "fekete/seq.hpp"

namespace fekete {

// Running maximum or minimum of a base sequence prefix, memoized so that
// repeated evaluation stays linear overall.  The cache is shared between
// copies and guarded by a mutex; memoization is invisible to callers since
// the base map is required to be pure.
class PrefixExtreme {
 public:
  enum class Kind { max, min };

  PrefixExtreme(std::function<Rational(Index)> base, Kind kind)
      : state_(std::make_shared<State>()), kind_(kind) {
    state_->base = std::move(base);
  }

  // Extreme of base(1..n); n >= 1.
  Rational at(Index n) const {
    if (n < 1) {
      throw PreconditionViolation("prefix extreme needs an index >= 1");
    }
    std::lock_guard<std::mutex> lock(state_->mu);
    while (static_cast<Index>(state_->values.size()) < n) {
      const Index next = static_cast<Index>(state_->values.size()) + 1;
      Rational v = state_->base(next);
      if (!state_->values.empty()) {
        const Rational& prev = state_->values.back();
        if (kind_ == Kind::max ? v < prev : prev < v) {
          v = prev;
        }
      }
      state_->values.push_back(std::move(v));
    }
    return state_->values[static_cast<std::size_t>(n - 1)];
  }

 private:
  struct State {
    std::function<Rational(Index)> base;
    std::mutex mu;
    std::vector<Rational> values;
  };

  std::shared_ptr<State> state_;
  Kind kind_;
};

}  // namespace fekete
