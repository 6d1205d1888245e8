#ifndef OBSRG_ERRORS_HPP
#define OBSRG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace obsrg {

// Every failure mode carries a stable machine-readable kind string plus an
// optional key/value context (numbers kept as numbers so front ends can emit
// them as proper JSON values).
class Error : public std::runtime_error {
 public:
  using CtxValue = std::variant<double, long long, std::string>;

  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

  const std::vector<std::pair<std::string, CtxValue>>& context() const noexcept {
    return ctx_;
  }

 protected:
  template <class V>
  void add_context(std::string key, V&& v) {
    using Decayed = std::decay_t<V>;
    if constexpr (std::is_floating_point_v<Decayed>) {
      ctx_.emplace_back(std::move(key), CtxValue(static_cast<double>(v)));
    } else if constexpr (std::is_integral_v<Decayed>) {
      ctx_.emplace_back(std::move(key), CtxValue(static_cast<long long>(v)));
    } else {
      ctx_.emplace_back(std::move(key), CtxValue(std::string(std::forward<V>(v))));
    }
  }

 private:
  std::string kind_;
  std::vector<std::pair<std::string, CtxValue>> ctx_;
};

// The with() chaining is defined per derived class so that
//   throw SomeError("...").with("key", value)
// still throws the derived type (no slicing through a base-typed expression).
#define OBSRG_DEFINE_ERROR(ClassName, kind_string)                       \
  class ClassName : public Error {                                       \
   public:                                                               \
    explicit ClassName(const std::string& message)                       \
        : Error(kind_string, message) {}                                 \
    template <class V>                                                   \
    ClassName& with(std::string key, V&& v) & {                          \
      add_context(std::move(key), std::forward<V>(v));                   \
      return *this;                                                      \
    }                                                                    \
    template <class V>                                                   \
    ClassName&& with(std::string key, V&& v) && {                        \
      add_context(std::move(key), std::forward<V>(v));                   \
      return std::move(*this);                                           \
    }                                                                    \
  }

OBSRG_DEFINE_ERROR(ConstructionError, "construction");
OBSRG_DEFINE_ERROR(DomainError, "domain");
OBSRG_DEFINE_ERROR(OutOfRangeError, "out-of-range");
OBSRG_DEFINE_ERROR(ContractError, "contract");
OBSRG_DEFINE_ERROR(CapabilityError, "capability");
OBSRG_DEFINE_ERROR(KinematicDomainError, "kinematic-domain");
OBSRG_DEFINE_ERROR(ConsistencyError, "internal-consistency");
OBSRG_DEFINE_ERROR(FactorizationError, "no-real-factorization");
OBSRG_DEFINE_ERROR(DegenerateLoopError, "degenerate-loop");
OBSRG_DEFINE_ERROR(GaugeError, "gauge");
OBSRG_DEFINE_ERROR(DegenerateError, "degenerate");
OBSRG_DEFINE_ERROR(LandauPoleError, "landau-pole");
OBSRG_DEFINE_ERROR(NumericalFailureError, "numerical-failure");
OBSRG_DEFINE_ERROR(EmptyDomainError, "empty-domain");
OBSRG_DEFINE_ERROR(UsageError, "usage");

#undef OBSRG_DEFINE_ERROR

}  // namespace obsrg

#endif  // OBSRG_ERRORS_HPP
