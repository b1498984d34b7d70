#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toda/intertwiners.hpp"

namespace toda {

// Image of a Whittaker vector under an intertwiner, written as UEA operators applied to Whittaker vectors:
// sum over terms of pref * op |w'> (x) |fin>. For maps out of a tensor product, fin is the source component
// and module selects the target summand.
struct ImageTerm {
  int fin = 0;
  int module = 0;
  RatFunc pref = RatFunc(1);
  UEAElement op;
};

struct WhittakerImage {
  std::string id;
  bool printed = false;
  int k = 0;  // SL2_CG_K only
  std::vector<ImageTerm> terms;
  std::string str() const;
};

std::vector<std::string> whittaker_image_ids();
// Symbols: lambda = l_i, right eigenvalues mR_i (mR1, mR2 for the two factors of SL2_CG_K), left eigenvalues mL_i.
WhittakerImage whittaker_image(const std::string& id, bool printed = false, int k = 0);

struct ImageCheck {
  bool pass = true;
  int samples = 0;
  std::string failure;
};

// Compares the operator form against the direct image of truncated Whittaker vectors at random rational samples,
// on degrees <= D - 2 - deg(P) - k.
ImageCheck verify_whittaker_image(const WhittakerImage& img, int D, int nsamples, std::uint64_t seed);

}  // namespace toda
