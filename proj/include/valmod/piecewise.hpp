// Copyright 2026 The Valmod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VALMOD_PIECEWISE_HPP_
#define VALMOD_PIECEWISE_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "valmod/chain.hpp"

namespace valmod {

// One monomial step of a piecewise map: forward g -> q^deg * g + c, or its
// inverse g -> (g - c) / q^deg.
struct PLOp {
  bool inverse = false;
  int deg = 0;
  Rat c;
};

struct PLPiece {
  std::optional<Rat> lo;  // absent on the leftmost piece
  Rat slope;              // positive
  Rat intercept;
  std::vector<PLOp> ops;  // monomial decomposition valid on this piece

  Rat at(const Rat& g) const { return slope * g + intercept; }
};

// A continuous strictly increasing piecewise-linear bijection of the
// rationals, fixing the top element; exactly the shape of term actions.
struct PLFunction {
  std::vector<PLPiece> pieces;  // ascending domains, continuous

  static PLFunction identity() {
    PLFunction f;
    f.pieces.push_back(PLPiece{std::nullopt, Rat(1), Rat(0), {}});
    return f;
  }

  const PLPiece& piece_at(const Rat& g) const {
    std::size_t k = pieces.size() - 1;
    while (k > 0 && pieces[k].lo && g < *pieces[k].lo) --k;
    return pieces[k];
  }

  Rat eval(const Rat& g) const { return piece_at(g).at(g); }

  ExtRat eval(const ExtRat& g) const {
    return g.is_inf ? ExtRat::infinity() : ExtRat::finite(eval(g.v));
  }

  // Exact inverse; total because each piece has positive slope and the
  // pieces tile the rationals.
  Rat inverse(const Rat& d) const {
    std::size_t k = pieces.size() - 1;
    while (k > 0 && pieces[k].lo && pieces[k].at(*pieces[k].lo) > d) --k;
    return (d - pieces[k].intercept) / pieces[k].slope;
  }

  std::vector<Rat> breakpoints() const {
    std::vector<Rat> out;
    for (std::size_t k = 1; k < pieces.size(); ++k) out.push_back(*pieces[k].lo);
    return out;
  }

  // Post-composes with the chain action of r: the new breakpoints are the
  // old ones plus preimages of the envelope breakpoints.
  PLFunction then_trop(const TropPoly& r, std::int64_t q) const {
    EnvelopeProfile env = envelope(r, q);
    std::vector<Rat> cuts = breakpoints();
    for (const EnvelopePiece& p : env.pieces)
      if (p.lo) cuts.push_back(inverse(*p.lo));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    PLFunction out;
    for (std::size_t k = 0; k <= cuts.size(); ++k) {
      Rat sample;
      if (cuts.empty())
        sample = Rat(0);
      else if (k == 0)
        sample = cuts.front() - 1;
      else if (k == cuts.size())
        sample = cuts.back() + 1;
      else
        sample = (cuts[k - 1] + cuts[k]) / 2;
      const PLPiece& base = piece_at(sample);
      Rat v = base.at(sample);
      int deg = env.pieces.front().degree;
      for (const EnvelopePiece& p : env.pieces) {
        if (p.lo && p.hi && *p.lo == *p.hi) continue;  // shared-breakpoint cell
        if ((!p.lo || v >= *p.lo) && (!p.hi || v <= *p.hi)) {
          deg = p.degree;
          break;
        }
      }
      Rat scale = rat_pow(Rat(q), deg);
      Rat cd = r.lines.at(deg);
      PLPiece np;
      np.lo = k == 0 ? std::optional<Rat>{} : std::optional<Rat>{cuts[k - 1]};
      np.slope = scale * base.slope;
      np.intercept = scale * base.intercept + cd;
      np.ops = base.ops;
      np.ops.push_back(PLOp{false, deg, cd});
      out.pieces.push_back(std::move(np));
    }
    return out;
  }

  // Post-composes with the inverse of a single monomial action.
  PLFunction then_mono_inverse(int deg, const Rat& c, std::int64_t q) const {
    Rat scale = rat_pow(Rat(q), deg);
    PLFunction out = *this;
    for (PLPiece& p : out.pieces) {
      p.slope = p.slope / scale;
      p.intercept = (p.intercept - c) / scale;
      p.ops.push_back(PLOp{true, deg, c});
    }
    return out;
  }
};

}  // namespace valmod

#endif  // VALMOD_PIECEWISE_HPP_
