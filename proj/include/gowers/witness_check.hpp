#pragma once

// Independent re-verification of extractor output. Everything here is
// written against core/blocks/types only and shares no state with the
// search code.

#include <optional>
#include <vector>

#include "gowers/blocks.hpp"
#include "gowers/coloring.hpp"
#include "gowers/core.hpp"

namespace gowers {

/// The common color of `elems`, or nullopt if they are not monochromatic.
std::optional<int> monochromatic_color(const FunctionColoring& c, const std::vector<FiniteFunction>& elems);
std::optional<int> monochromatic_color(const SequenceColoring& c, const std::vector<FuncBlockSeq>& elems);

/// X_k(s) (or X_{+-k}(s)): map(g, s) over g in the sphere of length |s|.
std::vector<FiniteFunction> sphere_over(const SetBlockSeq& s, int k, bool is_signed);
/// Block^d_k(s) / Block^d_{+-k}(s).
std::vector<FuncBlockSeq> block_sequences_over(const SetBlockSeq& s, int k, std::size_t d, bool is_signed);

bool is_type_canonical(const FunctionColoring& c, const SetBlockSeq& s, int k, bool is_signed);
bool is_block_type_canonical(const SequenceColoring& c, const SetBlockSeq& s, int k, std::size_t d, bool is_signed);

bool check_mt_witness(const SetSeqColoring& c, const SetBlockSeq& s, std::size_t d, std::size_t m,
                      const SetBlockSeq& t, int color);
bool check_positive_witness(const FunctionColoring& c, int k, std::size_t m, const FuncBlockSeq& F, int color);
bool check_signed_witness(const FunctionColoring& c, int k, std::size_t m, const SetBlockSeq& s,
                          const FuncBlockSeq& F, int color);
bool check_multidim_positive_witness(const SequenceColoring& c, int k, std::size_t d, std::size_t m,
                                     const FuncBlockSeq& F, int color);
bool check_multidim_signed_witness(const SequenceColoring& c, int k, std::size_t d, std::size_t m,
                                   const SetBlockSeq& s, const FuncBlockSeq& F, int color);

}  // namespace gowers
