#pragma once

// Test instrumentation: switchable corruptions of the cycle calculus,
// used to prove the property suite is not vacuous. All flags default to
// off; production call paths never set them.

namespace chow::testing {

struct FaultSet {
  bool swap_composition_order = false;     // compute u.v instead of v.u
  bool pushforward_ignores_degree = false; // contract with all-ones, not deg
  bool epsilon_wrong_slot = false;         // extract at unit+1 instead of unit
  bool diagonal_skips_intersection = false;// treat every third slot as the unit
};

inline FaultSet& faults() {
  static FaultSet active;
  return active;
}

class FaultGuard {
 public:
  explicit FaultGuard(const FaultSet& f) : saved_(faults()) { faults() = f; }
  ~FaultGuard() { faults() = saved_; }
  FaultGuard(const FaultGuard&) = delete;
  FaultGuard& operator=(const FaultGuard&) = delete;

 private:
  FaultSet saved_;
};

}  // namespace chow::testing
