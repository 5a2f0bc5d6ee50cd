#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace alexandrov {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define ALEXANDROV_DEFINE_ERROR(Name) \
  struct Name : Error {               \
    using Error::Error;               \
  }

// poset
ALEXANDROV_DEFINE_ERROR(CycleError);
ALEXANDROV_DEFINE_ERROR(DuplicateElement);
ALEXANDROV_DEFINE_ERROR(UnknownElement);
ALEXANDROV_DEFINE_ERROR(NotDirected);
ALEXANDROV_DEFINE_ERROR(EmptyPoset);
ALEXANDROV_DEFINE_ERROR(NotMonotone);
ALEXANDROV_DEFINE_ERROR(NotAChain);
ALEXANDROV_DEFINE_ERROR(NotCofinal);
// linear algebra
ALEXANDROV_DEFINE_ERROR(BadField);
ALEXANDROV_DEFINE_ERROR(ShapeMismatch);
ALEXANDROV_DEFINE_ERROR(NotContained);
ALEXANDROV_DEFINE_ERROR(DegreeOutOfRange);
// sheaves
ALEXANDROV_DEFINE_ERROR(PathInconsistency);
ALEXANDROV_DEFINE_ERROR(MissingCover);
ALEXANDROV_DEFINE_ERROR(NotOpen);
ALEXANDROV_DEFINE_ERROR(NotNested);
ALEXANDROV_DEFINE_ERROR(NaturalitySquareFails);
ALEXANDROV_DEFINE_ERROR(NotComposable);
ALEXANDROV_DEFINE_ERROR(NotExact);
// functors
ALEXANDROV_DEFINE_ERROR(BaseMismatch);
ALEXANDROV_DEFINE_ERROR(NotGalois);
// cohomology
ALEXANDROV_DEFINE_ERROR(DegreeBoundTooSmall);
ALEXANDROV_DEFINE_ERROR(OracleMismatch);
// harness / io
ALEXANDROV_DEFINE_ERROR(RecipeInfeasible);
ALEXANDROV_DEFINE_ERROR(ParseError);
ALEXANDROV_DEFINE_ERROR(GateExceeded);

#undef ALEXANDROV_DEFINE_ERROR

/// Deterministic splitmix64 stream. All randomness in the library flows
/// through this type so that a seed pins down every generated instance
/// bit-for-bit, independent of platform or standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish draw in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  long long range(long long lo, long long hi) {  // inclusive bounds
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  /// Independent substream derived from a seed and a stream index.
  static Rng fork(std::uint64_t seed, std::uint64_t stream) {
    Rng mixer(seed ^ (0xd1342543de82ef95ULL * (stream + 1)));
    mixer.next();
    return Rng(mixer.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace alexandrov
